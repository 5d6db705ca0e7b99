use std::collections::BTreeMap;
use std::io::Write;

use super::{Collection, QrelsMap};

/// Sentence-label statistics over the relevant documents of one topic, or
/// micro-averaged over all topics when `topic` is `None`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabelStats {
    pub topic: Option<String>,
    pub documents: usize,
    pub sentences: usize,
    pub relevant_docs: usize,
    pub sentences_in_relevant_docs: usize,
    pub relevant_sentences: usize,
    pub relevant_docs_with_relevant_sentence: usize,
    /// Sum of 1-based first-relevant positions over relevant documents that
    /// have a relevant sentence.
    pub first_position_sum: usize,
    /// 1-based position of the first relevant sentence -> document count.
    pub first_position_histogram: BTreeMap<usize, usize>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl LabelStats {
    pub fn sentences_per_doc(&self) -> f64 {
        ratio(self.sentences, self.documents)
    }

    pub fn sentences_per_relevant_doc(&self) -> f64 {
        ratio(self.sentences_in_relevant_docs, self.relevant_docs)
    }

    pub fn relevant_sentences_per_relevant_doc(&self) -> f64 {
        ratio(self.relevant_sentences, self.relevant_docs)
    }

    pub fn mean_first_relevant_position(&self) -> f64 {
        ratio(self.first_position_sum, self.relevant_docs_with_relevant_sentence)
    }

    pub fn fraction_with_relevant_sentence(&self) -> f64 {
        ratio(self.relevant_docs_with_relevant_sentence, self.relevant_docs)
    }

    fn absorb(&mut self, other: &LabelStats) {
        self.relevant_docs += other.relevant_docs;
        self.sentences_in_relevant_docs += other.sentences_in_relevant_docs;
        self.relevant_sentences += other.relevant_sentences;
        self.relevant_docs_with_relevant_sentence += other.relevant_docs_with_relevant_sentence;
        self.first_position_sum += other.first_position_sum;
        for (pos, n) in &other.first_position_histogram {
            *self.first_position_histogram.entry(*pos).or_default() += n;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub per_topic: Vec<LabelStats>,
    pub overall: LabelStats,
}

impl StatsReport {
    /// One row per topic plus an `all` row.
    pub fn write_csv<W: Write>(&self, collection_name: &str, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "collection,topic,sentences_per_doc,sentences_per_relevant_doc,relevant_sentences_per_relevant_doc,first_relevant_position,fraction_with_relevant_sentence"
        )?;
        for s in self.per_topic.iter().chain(Some(&self.overall)) {
            writeln!(
                w,
                "{collection_name},{},{:.4},{:.4},{:.4},{:.4},{:.4}",
                s.topic.as_deref().unwrap_or("all"),
                s.sentences_per_doc(),
                s.sentences_per_relevant_doc(),
                s.relevant_sentences_per_relevant_doc(),
                s.mean_first_relevant_position(),
                s.fraction_with_relevant_sentence()
            )?;
        }
        Ok(())
    }

    pub fn write_histogram_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "topic,position,count")?;
        for s in self.per_topic.iter().chain(Some(&self.overall)) {
            for (pos, n) in &s.first_position_histogram {
                writeln!(w, "{},{pos},{n}", s.topic.as_deref().unwrap_or("all"))?;
            }
        }
        Ok(())
    }
}

/// Computes per-topic and micro-averaged sentence label statistics. Topics
/// come from the document qrels.
pub fn corpus_stats(collection: &Collection, doc_qrels: &QrelsMap, sent_qrels: &QrelsMap) -> StatsReport {
    let base = LabelStats {
        documents: collection.num_documents(),
        sentences: collection.num_sentences(),
        ..Default::default()
    };
    let mut overall = base.clone();
    let mut per_topic = Vec::new();
    for topic in doc_qrels.topics() {
        let mut s = LabelStats {
            topic: Some(topic.to_string()),
            ..base.clone()
        };
        let mut relevant: Vec<usize> = doc_qrels
            .judgments(topic)
            .filter(|(_, r)| *r)
            .filter_map(|(id, _)| collection.doc_index(id))
            .collect();
        relevant.sort_unstable();
        for d in relevant {
            let doc = collection.doc(d);
            s.relevant_docs += 1;
            s.sentences_in_relevant_docs += doc.sentences.len();
            let mut first = None;
            for i in 0..doc.sentences.len() {
                if sent_qrels.is_relevant(topic, &doc.sentence_id(i)) {
                    s.relevant_sentences += 1;
                    first.get_or_insert(i + 1);
                }
            }
            if let Some(pos) = first {
                s.relevant_docs_with_relevant_sentence += 1;
                s.first_position_sum += pos;
                *s.first_position_histogram.entry(pos).or_default() += 1;
            }
        }
        overall.absorb(&s);
        per_topic.push(s);
    }
    StatsReport { per_topic, overall }
}
