//! Document collections, sentence segmentation and relevance judgments.
//!
//! A [`Collection`] holds the documents and exposes the *union* view used
//! everywhere downstream: every document and every sentence is a scorable
//! item. Union indices place documents first (`0..num_documents`) followed by
//! all sentences in document order.

mod ingest;
mod passages;
mod qrels;
mod segment;
mod stats;
mod topics;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use ingest::{
    ingest_documents, read_documents, read_jsonl_documents, read_presegmented, read_store, read_text_dir, write_store,
};
pub use passages::{
    derive_sentence_qrels_from_passages, load_passages, parse_passages, propagate_nonrelevant, DerivedLabels,
    PassageJudgment,
};
pub use qrels::{load_qrels, parse_qrels, Granularity, QrelsMap};
pub use segment::{segment_sentences, RuleConfig, SegmenterConfig, DEFAULT_ABBREVIATIONS};
pub use stats::{corpus_stats, LabelStats, StatsReport};
pub use topics::{read_topics, write_topics, Topic};

/// Half-open `[char_start, char_end)` character range of one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    #[serde(rename = "start")]
    pub char_start: usize,
    #[serde(rename = "end")]
    pub char_end: usize,
}

impl SentenceSpan {
    pub fn new(char_start: usize, char_end: usize) -> Self {
        Self { char_start, char_end }
    }

    pub fn len(&self) -> usize {
        self.char_end - self.char_start
    }

    pub fn is_empty(&self) -> bool {
        self.char_end == self.char_start
    }

    /// Nonempty intersection of two half-open intervals.
    pub fn overlaps(&self, start: usize, end: usize) -> bool {
        self.char_start.max(start) < self.char_end.min(end)
    }
}

/// Sentence ids are the parent id, `#`, and the zero-based sentence index.
pub fn sentence_id(doc_id: &str, index: usize) -> String {
    format!("{doc_id}#{index}")
}

/// Splits a sentence id back into `(doc_id, index)`.
pub fn split_sentence_id(sent_id: &str) -> Option<(&str, usize)> {
    let (doc, idx) = sent_id.rsplit_once('#')?;
    Some((doc, idx.parse().ok()?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
    pub sentences: Vec<SentenceSpan>,
}

impl Document {
    pub fn sentence_id(&self, index: usize) -> String {
        sentence_id(&self.doc_id, index)
    }

    /// Text of sentence `index`. Offsets are in characters, not bytes.
    pub fn sentence_text(&self, index: usize) -> &str {
        let span = self.sentences[index];
        char_slice(&self.text, span.char_start, span.char_end)
    }

    pub fn char_len(&self) -> usize {
        if self.text.is_ascii() {
            self.text.len()
        } else {
            self.text.chars().count()
        }
    }
}

pub(crate) fn char_slice(text: &str, start: usize, end: usize) -> &str {
    if text.is_ascii() {
        return &text[start..end];
    }
    let mut indices = text.char_indices().map(|(b, _)| b).chain(Some(text.len()));
    let bstart = indices.nth(start).unwrap_or(text.len());
    let bend = if end == start {
        bstart
    } else {
        indices.nth(end - start - 1).unwrap_or(text.len())
    };
    &text[bstart..bend]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemKind {
    Document,
    Sentence,
}

/// A scorable unit of the union collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionItem {
    pub item_id: String,
    pub kind: ItemKind,
    pub parent_doc: String,
}

#[derive(Debug, Clone, Default)]
pub struct Collection {
    docs: Vec<Document>,
    by_id: HashMap<String, usize>,
    // sent_offsets[d] = number of sentences in docs[..d]
    sent_offsets: Vec<usize>,
}

impl Collection {
    /// Builds a collection from already segmented documents.
    pub fn from_documents(docs: Vec<Document>) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(docs.len());
        let mut sent_offsets = Vec::with_capacity(docs.len() + 1);
        let mut total = 0;
        for (i, doc) in docs.iter().enumerate() {
            if by_id.insert(doc.doc_id.clone(), i).is_some() {
                return Err(Error::DuplicateDocId(doc.doc_id.clone()));
            }
            if doc.sentences.is_empty() {
                return Err(Error::InvalidSpans {
                    doc_id: doc.doc_id.clone(),
                    reason: "document has no sentences".into(),
                });
            }
            sent_offsets.push(total);
            total += doc.sentences.len();
        }
        sent_offsets.push(total);
        Ok(Self {
            docs,
            by_id,
            sent_offsets,
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.docs
    }

    pub fn num_documents(&self) -> usize {
        self.docs.len()
    }

    pub fn num_sentences(&self) -> usize {
        self.sent_offsets.last().copied().unwrap_or(0)
    }

    pub fn union_len(&self) -> usize {
        self.num_documents() + self.num_sentences()
    }

    pub fn doc(&self, index: usize) -> &Document {
        &self.docs[index]
    }

    pub fn doc_index(&self, doc_id: &str) -> Option<usize> {
        self.by_id.get(doc_id).copied()
    }

    pub fn get(&self, doc_id: &str) -> Option<&Document> {
        self.doc_index(doc_id).map(|i| &self.docs[i])
    }

    /// Union index of sentence `sentence` of document `doc`.
    pub fn sentence_item(&self, doc: usize, sentence: usize) -> usize {
        debug_assert!(sentence < self.docs[doc].sentences.len());
        self.docs.len() + self.sent_offsets[doc] + sentence
    }

    /// Union indices of all sentences of document `doc`.
    pub fn sentence_items(&self, doc: usize) -> std::ops::Range<usize> {
        let base = self.docs.len();
        base + self.sent_offsets[doc]..base + self.sent_offsets[doc + 1]
    }

    pub fn kind_of(&self, item: usize) -> ItemKind {
        if item < self.docs.len() {
            ItemKind::Document
        } else {
            ItemKind::Sentence
        }
    }

    /// Document index owning a union item (itself for documents).
    pub fn parent_of(&self, item: usize) -> usize {
        if item < self.docs.len() {
            return item;
        }
        let s = item - self.docs.len();
        // Last document whose first sentence is <= s.
        self.sent_offsets.partition_point(|&off| off <= s) - 1
    }

    /// `(doc, sentence)` coordinates of a sentence item.
    pub fn sentence_coords(&self, item: usize) -> Option<(usize, usize)> {
        if item < self.docs.len() || item >= self.union_len() {
            return None;
        }
        let doc = self.parent_of(item);
        Some((doc, item - self.docs.len() - self.sent_offsets[doc]))
    }

    pub fn item_id(&self, item: usize) -> String {
        match self.sentence_coords(item) {
            None => self.docs[item].doc_id.clone(),
            Some((d, s)) => self.docs[d].sentence_id(s),
        }
    }

    pub fn item_text(&self, item: usize) -> &str {
        match self.sentence_coords(item) {
            None => &self.docs[item].text,
            Some((d, s)) => self.docs[d].sentence_text(s),
        }
    }

    /// Resolves a document or sentence id to its union index.
    pub fn item_index(&self, item_id: &str) -> Option<usize> {
        if let Some(d) = self.doc_index(item_id) {
            return Some(d);
        }
        let (doc, s) = split_sentence_id(item_id)?;
        let d = self.doc_index(doc)?;
        (s < self.docs[d].sentences.len()).then(|| self.sentence_item(d, s))
    }

    pub fn union_item(&self, item: usize) -> UnionItem {
        let parent = self.parent_of(item);
        UnionItem {
            item_id: self.item_id(item),
            kind: self.kind_of(item),
            parent_doc: self.docs[parent].doc_id.clone(),
        }
    }

    pub fn union_items(&self) -> impl Iterator<Item = UnionItem> + '_ {
        (0..self.union_len()).map(|i| self.union_item(i))
    }

    /// Rank of every union item under ascending `item_id` string order,
    /// used for deterministic tie breaking.
    pub fn item_id_ranks(&self) -> Vec<u32> {
        let ids: Vec<String> = (0..self.union_len()).map(|i| self.item_id(i)).collect();
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_unstable_by(|&a, &b| ids[a].cmp(&ids[b]));
        let mut ranks = vec![0u32; ids.len()];
        for (rank, item) in order.into_iter().enumerate() {
            ranks[item] = rank as u32;
        }
        ranks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, n: usize) -> Document {
        let text = (0..n).map(|i| format!("S{i}.")).collect::<Vec<_>>().join(" ");
        let sentences = segment_sentences(&text, &RuleConfig::default());
        assert_eq!(sentences.len(), n);
        Document {
            doc_id: id.into(),
            text,
            sentences,
        }
    }

    #[test]
    fn union_size_counts_documents_and_sentences() {
        let c = Collection::from_documents(vec![doc("a", 2), doc("b", 3), doc("c", 4)]).unwrap();
        assert_eq!(c.union_len(), 3 + 9);
        assert_eq!(c.union_items().count(), 12);
        let kinds = c.union_items().filter(|u| u.kind == ItemKind::Sentence).count();
        assert_eq!(kinds, 9);
    }

    #[test]
    fn union_index_roundtrip() {
        let c = Collection::from_documents(vec![doc("a", 2), doc("b", 3), doc("c", 4)]).unwrap();
        for item in 0..c.union_len() {
            let id = c.item_id(item);
            assert_eq!(c.item_index(&id), Some(item));
            let u = c.union_item(item);
            if u.kind == ItemKind::Document {
                assert_eq!(u.parent_doc, u.item_id);
            } else {
                assert!(u.item_id.starts_with(&format!("{}#", u.parent_doc)));
            }
        }
        assert_eq!(c.item_id(c.sentence_item(1, 2)), "b#2");
        assert_eq!(c.parent_of(c.sentence_item(2, 0)), 2);
        assert_eq!(c.sentence_items(1).len(), 3);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = Collection::from_documents(vec![doc("a", 1), doc("a", 1)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateDocId(id) if id == "a"));
    }

    #[test]
    fn id_ranks_follow_string_order() {
        let c = Collection::from_documents(vec![doc("b", 1), doc("a", 11)]).unwrap();
        let ranks = c.item_id_ranks();
        // "a" < "a#0" < "a#1" < "a#10" < "a#2" ... < "b" < "b#0"
        assert_eq!(ranks[c.doc_index("a").unwrap()], 0);
        assert!(ranks[c.item_index("a#10").unwrap()] < ranks[c.item_index("a#2").unwrap()]);
        assert!(ranks[c.item_index("b").unwrap()] < ranks[c.item_index("b#0").unwrap()]);
    }

    #[test]
    fn char_offsets_on_non_ascii_text() {
        let text = "Ünïcödé here. Then more.".to_string();
        let sentences = segment_sentences(&text, &RuleConfig::default());
        let d = Document {
            doc_id: "u".into(),
            text,
            sentences,
        };
        assert_eq!(d.sentence_text(0), "Ünïcödé here.");
        assert_eq!(d.sentence_text(1), "Then more.");
        assert_eq!(d.char_len(), 24);
    }
}
