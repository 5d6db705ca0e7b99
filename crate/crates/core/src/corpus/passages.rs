use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::{Collection, Granularity, QrelsMap};
use crate::{Error, Result};

/// A relevant passage as a half-open character range of a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassageJudgment {
    pub topic_id: String,
    pub doc_id: String,
    pub char_start: usize,
    pub char_end: usize,
}

/// Parses passage judgments, one `topic doc_id start end` per line.
pub fn parse_passages<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<PassageJudgment>> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                origin,
                n + 1,
                format!("expected 4 columns, found {}", cols.len()),
            ));
        }
        let offset = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(origin, n + 1, format!("bad offset `{s}`")))
        };
        out.push(PassageJudgment {
            topic_id: cols[0].to_string(),
            doc_id: cols[1].to_string(),
            char_start: offset(cols[2])?,
            char_end: offset(cols[3])?,
        });
    }
    Ok(out)
}

pub fn load_passages(path: &Path) -> Result<Vec<PassageJudgment>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_passages(BufReader::new(file), path)
}

#[derive(Debug, Clone)]
pub struct DerivedLabels {
    pub qrels: QrelsMap,
    /// Passages whose offsets had to be clamped to the document bounds.
    pub clamped: usize,
}

/// Labels every sentence of every passage-judged document: relevant iff its
/// span intersects a relevant passage of the same topic.
pub fn derive_sentence_qrels_from_passages(
    passages: &[PassageJudgment],
    collection: &Collection,
) -> Result<DerivedLabels> {
    // (topic, doc) -> clamped ranges
    let mut by_doc: BTreeMap<(&str, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut clamped = 0;
    for p in passages {
        let d = collection
            .doc_index(&p.doc_id)
            .ok_or_else(|| Error::UnknownDocument(p.doc_id.clone()))?;
        let len = collection.doc(d).char_len();
        let (start, end) = (p.char_start.min(len), p.char_end.min(len));
        if (start, end) != (p.char_start, p.char_end) || start >= end {
            clamped += 1;
            log::warn!(
                "topic {} doc {}: passage [{}, {}) clamped to document length {len}",
                p.topic_id,
                p.doc_id,
                p.char_start,
                p.char_end
            );
        }
        let ranges = by_doc.entry((p.topic_id.as_str(), d)).or_default();
        if start < end {
            ranges.push((start, end));
        }
    }

    let mut qrels = QrelsMap::new(Granularity::Sentence);
    for ((topic, d), ranges) in by_doc {
        let doc = collection.doc(d);
        for (i, span) in doc.sentences.iter().enumerate() {
            let relevant = ranges.iter().any(|&(s, e)| span.overlaps(s, e));
            qrels.insert(topic, &doc.sentence_id(i), relevant);
        }
    }
    Ok(DerivedLabels { qrels, clamped })
}

/// Labels every sentence of a non-relevant or unjudged document as
/// non-relevant, for every topic present in either qrels map. Returns the
/// number of labels added.
///
/// A sentence already labeled relevant inside a non-relevant document is an
/// inconsistency and fails.
pub fn propagate_nonrelevant(
    doc_qrels: &QrelsMap,
    sent_qrels: &mut QrelsMap,
    collection: &Collection,
) -> Result<usize> {
    let mut topics: Vec<String> = doc_qrels.topics().map(str::to_string).collect();
    topics.extend(sent_qrels.topics().map(str::to_string));
    topics.sort();
    topics.dedup();

    let mut added = 0;
    for topic in &topics {
        for doc in collection.documents() {
            if doc_qrels.is_relevant(topic, &doc.doc_id) {
                continue;
            }
            for i in 0..doc.sentences.len() {
                let sid = doc.sentence_id(i);
                match sent_qrels.get(topic, &sid) {
                    Some(true) => {
                        return Err(Error::QrelsConflict {
                            topic: topic.clone(),
                            sent_id: sid,
                        })
                    }
                    Some(false) => {}
                    None => {
                        sent_qrels.insert(topic, &sid, false);
                        added += 1;
                    }
                }
            }
        }
    }
    Ok(added)
}
