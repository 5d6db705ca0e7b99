//! Synthetic collections with planted topical vocabulary.
//!
//! Each topic owns a small set of pseudo-words. A document relevant to a
//! topic has a run of relevant sentences that mix topic words into
//! background text, starting at a random position (geometric, so the first
//! relevant sentence is usually not the first sentence). Every other
//! sentence is background text, occasionally with a stray topic word from a
//! random topic.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{
    ingest_documents, sentence_id, write_topics, Collection, Granularity, QrelsMap, RuleConfig, SegmenterConfig, Topic,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub documents: usize,
    pub topics: usize,
    /// Fraction of the collection relevant to each topic.
    pub relevant_fraction: f64,
    /// Inclusive range of sentences per document.
    pub sentences_per_doc: (usize, usize),
    /// Inclusive range of words per sentence.
    pub words_per_sentence: (usize, usize),
    pub background_vocabulary: usize,
    pub topic_vocabulary: usize,
    /// Inclusive range of topic words planted in a relevant sentence.
    pub topic_words_per_sentence: (usize, usize),
    /// Inclusive range of relevant sentences in a relevant document.
    pub relevant_sentences: (usize, usize),
    /// Mean 1-based position of the first relevant sentence before clamping
    /// to the document length.
    pub mean_first_position: f64,
    /// Probability that a background sentence carries one stray topic word.
    pub noise: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            documents: 2000,
            topics: 10,
            relevant_fraction: 0.1,
            sentences_per_doc: (6, 14),
            words_per_sentence: (6, 14),
            background_vocabulary: 3000,
            topic_vocabulary: 40,
            topic_words_per_sentence: (2, 4),
            relevant_sentences: (1, 3),
            mean_first_position: 3.5,
            noise: 0.1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub collection: Collection,
    pub topics: Vec<Topic>,
    /// Every document judged for every topic.
    pub doc_qrels: QrelsMap,
    /// Every sentence of every relevant document; other sentences are
    /// unjudged, which reads as non-relevant.
    pub sent_qrels: QrelsMap,
}

const CONSONANTS: &[u8] = b"bdfghklmnprstvz";
const VOWELS: &[u8] = b"aou";

/// Distinct pseudo-word number `i`: three consonant-vowel syllables and a
/// final `k`, a shape the Porter stemmer leaves alone.
fn pseudo_word(i: usize) -> String {
    let base = CONSONANTS.len() * VOWELS.len();
    let mut rest = i;
    let mut w = String::with_capacity(7);
    for _ in 0..3 {
        let syl = rest % base;
        rest /= base;
        w.push(CONSONANTS[syl / VOWELS.len()] as char);
        w.push(VOWELS[syl % VOWELS.len()] as char);
    }
    w.push('k');
    w
}

fn check(config: &SyntheticConfig) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
    let (s_lo, s_hi) = config.sentences_per_doc;
    let (w_lo, w_hi) = config.words_per_sentence;
    let (t_lo, t_hi) = config.topic_words_per_sentence;
    let (r_lo, r_hi) = config.relevant_sentences;
    if config.documents == 0 || config.topics == 0 {
        return bad("need at least one document and one topic");
    }
    if !(0.0..=1.0).contains(&config.relevant_fraction) || config.relevant_fraction * config.topics as f64 > 1.0 {
        return bad("relevant_fraction * topics must not exceed 1");
    }
    if s_lo == 0 || s_lo > s_hi || w_lo == 0 || w_lo > w_hi || t_lo > t_hi || r_lo == 0 || r_lo > r_hi {
        return bad("invalid range");
    }
    if config.background_vocabulary == 0 || config.topic_vocabulary == 0 || config.mean_first_position < 1.0 {
        return bad("vocabulary sizes must be positive and mean_first_position at least 1");
    }
    if !(0.0..=1.0).contains(&config.noise) {
        return bad("noise must be a probability");
    }
    if config.background_vocabulary + config.topics * config.topic_vocabulary > 45usize.pow(3) {
        return bad("vocabulary too large");
    }
    Ok(())
}

struct Generator<'a> {
    config: &'a SyntheticConfig,
    rng: ChaCha8Rng,
}

impl Generator<'_> {
    fn background(&mut self) -> String {
        // squared uniform: a skewed, roughly Zipf-like word frequency
        let u: f64 = self.rng.random();
        pseudo_word((u * u * self.config.background_vocabulary as f64) as usize)
    }

    fn topic_word(&mut self, topic: usize) -> String {
        let k = self.rng.random_range(0..self.config.topic_vocabulary);
        pseudo_word(self.config.background_vocabulary + topic * self.config.topic_vocabulary + k)
    }

    fn sentence(&mut self, topic: Option<usize>) -> String {
        let (lo, hi) = self.config.words_per_sentence;
        let mut words: Vec<String> = (0..self.rng.random_range(lo..=hi)).map(|_| self.background()).collect();
        let planted = match topic {
            Some(t) => {
                let (lo, hi) = self.config.topic_words_per_sentence;
                (0..self.rng.random_range(lo..=hi))
                    .map(|_| self.topic_word(t))
                    .collect()
            }
            None if self.rng.random_bool(self.config.noise) => {
                let t = self.rng.random_range(0..self.config.topics);
                vec![self.topic_word(t)]
            }
            None => Vec::new(),
        };
        for w in planted {
            let at = self.rng.random_range(0..=words.len());
            words.insert(at, w);
        }
        let mut s = words.join(" ");
        s[..1].make_ascii_uppercase();
        s.push('.');
        s
    }

    /// 1-based position, geometric with the configured mean.
    fn first_position(&mut self) -> usize {
        let p = 1.0 / self.config.mean_first_position;
        let mut pos = 1;
        while !self.rng.random_bool(p) {
            pos += 1;
        }
        pos
    }
}

pub fn generate(config: &SyntheticConfig) -> Result<SyntheticCorpus> {
    check(config)?;
    let mut g = Generator {
        config,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
    };
    let width = config.documents.to_string().len();
    let doc_ids: Vec<String> = (0..config.documents).map(|i| format!("d{i:0width$}")).collect();

    let per_topic = (config.relevant_fraction * config.documents as f64).round() as usize;
    let mut order: Vec<usize> = (0..config.documents).collect();
    order.shuffle(&mut g.rng);
    let mut topic_of = vec![None; config.documents];
    for (slot, &d) in order.iter().take(per_topic * config.topics).enumerate() {
        topic_of[d] = Some(slot / per_topic);
    }

    let mut records = Vec::with_capacity(config.documents);
    let mut relevant_sentences: Vec<Vec<bool>> = Vec::with_capacity(config.documents);
    for (d, id) in doc_ids.iter().enumerate() {
        let (lo, hi) = config.sentences_per_doc;
        let n = g.rng.random_range(lo..=hi);
        let mut flags = vec![false; n];
        if topic_of[d].is_some() {
            let first = g.first_position().min(n) - 1;
            let (rlo, rhi) = config.relevant_sentences;
            let count = g.rng.random_range(rlo..=rhi);
            for f in flags.iter_mut().skip(first).take(count) {
                *f = true;
            }
        }
        let text = flags
            .iter()
            .map(|&rel| g.sentence(if rel { topic_of[d] } else { None }))
            .collect::<Vec<_>>()
            .join(" ");
        records.push((id.clone(), text));
        relevant_sentences.push(flags);
    }

    let collection = ingest_documents(records, &SegmenterConfig::Rules(RuleConfig::default()))?;
    for (d, flags) in relevant_sentences.iter().enumerate() {
        debug_assert_eq!(collection.doc(d).sentences.len(), flags.len());
    }

    let topic_ids: Vec<String> = (0..config.topics).map(|t| format!("T{:02}", t + 1)).collect();
    let mut doc_qrels = QrelsMap::new(Granularity::Document);
    let mut sent_qrels = QrelsMap::new(Granularity::Sentence);
    for (t, topic) in topic_ids.iter().enumerate() {
        for (d, id) in doc_ids.iter().enumerate() {
            let relevant = topic_of[d] == Some(t);
            doc_qrels.insert(topic, id, relevant);
            if relevant {
                for (i, &flag) in relevant_sentences[d].iter().enumerate() {
                    sent_qrels.insert(topic, &sentence_id(id, i), flag);
                }
            }
        }
    }

    let topics = topic_ids
        .into_iter()
        .enumerate()
        .map(|(t, topic)| {
            let mut words: Vec<String> = (0..4)
                .map(|k| {
                    pseudo_word(
                        config.background_vocabulary + t * config.topic_vocabulary + k % config.topic_vocabulary,
                    )
                })
                .collect();
            words.push(g.background());
            words.push(g.background());
            Topic {
                topic,
                statement: words.join(" "),
            }
        })
        .collect();

    Ok(SyntheticCorpus {
        collection,
        topics,
        doc_qrels,
        sent_qrels,
    })
}

impl SyntheticCorpus {
    /// Writes `docs.jsonl`, `topics.jsonl`, `qrels.doc.txt` and
    /// `qrels.sent.txt` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join("docs.jsonl");
        let mut w = BufWriter::new(File::create(&path).map_err(|e| Error::io(&path, e))?);
        for doc in self.collection.documents() {
            let rec = serde_json::json!({ "id": doc.doc_id, "text": doc.text });
            writeln!(w, "{rec}").map_err(|e| Error::io(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;

        write_topics(&self.topics, &dir.join("topics.jsonl"))?;
        for (name, qrels) in [("qrels.doc.txt", &self.doc_qrels), ("qrels.sent.txt", &self.sent_qrels)] {
            let path = dir.join(name);
            let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
            let mut w = BufWriter::new(file);
            qrels
                .write_trec(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
