use std::cmp::Ordering;

use rayon::prelude::*;

use super::{IndexedCollection, Unit};
use crate::classifier::Model;

/// A candidate chosen for review: the document that enters the system output
/// and the sentence that represents it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectedPair {
    /// Document index.
    pub doc: usize,
    /// Union index of the best sentence.
    pub sentence: usize,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    doc: usize,
    doc_score: f64,
    sentence: usize,
    sentence_score: f64,
}

/// Higher score first, then lower id rank.
fn better(score_a: f64, rank_a: u32, score_b: f64, rank_b: u32) -> Ordering {
    score_b.total_cmp(&score_a).then(rank_a.cmp(&rank_b))
}

/// Picks up to `count` (best sentence, document) pairs among documents for
/// which `eligible(doc)` holds.
///
/// With `select = Document`, documents are ranked by their own score and
/// each is paired with its highest-scoring sentence. With
/// `select = Sentence`, sentences are ranked by score and each contributes
/// its parent, skipping parents already chosen; ranking each document by its
/// best sentence is the same thing. Ties go to the smaller item id.
pub fn select_pairs<F>(
    index: &IndexedCollection,
    model: &Model,
    select: Unit,
    count: usize,
    eligible: F,
) -> Vec<SelectedPair>
where
    F: Fn(usize) -> bool + Sync,
{
    let ranks = index.id_ranks();
    let mut candidates: Vec<Candidate> = (0..index.collection.num_documents())
        .into_par_iter()
        .filter(|&d| eligible(d))
        .map(|doc| {
            let mut best = None::<(usize, f64)>;
            for s in index.collection.sentence_items(doc) {
                let score = model.score(&index.vectors[s]);
                let wins = match best {
                    None => true,
                    Some((b, bs)) => better(score, ranks[s], bs, ranks[b]) == Ordering::Less,
                };
                if wins {
                    best = Some((s, score));
                }
            }
            let (sentence, sentence_score) = best.expect("documents have at least one sentence");
            Candidate {
                doc,
                doc_score: model.score(&index.vectors[doc]),
                sentence,
                sentence_score,
            }
        })
        .collect();

    let key = |c: &Candidate| match select {
        Unit::Document => (c.doc_score, ranks[c.doc]),
        Unit::Sentence => (c.sentence_score, ranks[c.sentence]),
    };
    let cmp = |a: &Candidate, b: &Candidate| {
        let (sa, ra) = key(a);
        let (sb, rb) = key(b);
        better(sa, ra, sb, rb)
    };
    let count = count.min(candidates.len());
    if count == 0 {
        return Vec::new();
    }
    if count < candidates.len() {
        candidates.select_nth_unstable_by(count - 1, cmp);
        candidates.truncate(count);
    }
    candidates.sort_unstable_by(cmp);
    candidates
        .into_iter()
        .map(|c| SelectedPair {
            doc: c.doc,
            sentence: c.sentence,
        })
        .collect()
}
