//! Tokenization and tf-idf features over the union of documents and
//! sentences.
//!
//! Each retained term gets weight `(1 + ln tf) * ln(N / df)`, where `N` is the
//! number of union items and `df` counts documents and sentences alike.
//! The logarithm base only rescales every weight by the same constant, so
//! after L2 normalization the vectors are base-independent; natural log is
//! used throughout.

mod porter;
mod tokenize;
mod vector;
mod vocab;

use rayon::prelude::*;

use crate::corpus::Collection;

pub use porter::stem;
pub use tokenize::tokenize;
pub use vector::SparseVector;
pub use vocab::{build_vocabulary, Vocabulary, MIN_OCCURRENCES};

/// `(1 + ln tf) * ln(n / df)`.
pub fn tfidf_weight(tf: u32, df: u32, n: usize) -> f64 {
    debug_assert!(tf >= 1 && df >= 1);
    (1.0 + f64::from(tf).ln()) * (n as f64 / f64::from(df)).ln()
}

/// Vectorizes text against a fixed vocabulary. Out-of-vocabulary terms are
/// dropped; normalization (if requested) is applied last.
pub fn vectorize(text: &str, vocab: &Vocabulary, normalize: bool) -> SparseVector {
    vectorize_tokens(&tokenize(text), vocab, normalize)
}

pub fn vectorize_tokens(tokens: &[String], vocab: &Vocabulary, normalize: bool) -> SparseVector {
    let mut ids: Vec<(u32, u32)> = tokens.iter().filter_map(|t| vocab.lookup(t)).collect();
    ids.sort_unstable();
    let mut entries = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let (id, df) = ids[i];
        let mut tf = 0;
        while i < ids.len() && ids[i].0 == id {
            tf += 1;
            i += 1;
        }
        let w = tfidf_weight(tf, df, vocab.num_items());
        if w != 0.0 {
            entries.push((id, w));
        }
    }
    let v = SparseVector::from_sorted(entries);
    if normalize {
        v.normalized()
    } else {
        v
    }
}

/// Feature vectors for every union item, indexed like the collection.
pub fn vectorize_collection(collection: &Collection, vocab: &Vocabulary, normalize: bool) -> Vec<SparseVector> {
    (0..collection.union_len())
        .into_par_iter()
        .map(|i| vectorize(collection.item_text(i), vocab, normalize))
        .collect()
}
