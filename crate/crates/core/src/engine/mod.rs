//! The batched feedback loop with a qrels-driven simulated reviewer.
//!
//! Each batch: add random non-relevant items to a temporary copy of the
//! training set, train from scratch, pick the top `B` (sentence, document)
//! pairs among documents not yet output, append the documents to the output,
//! show the reviewer either the sentence or the document, file the label
//! under either the sentence or the document, then grow `B` by `ceil(B/10)`.
//! The topic statement is the permanent first positive example.

mod budget;
mod runlog;
mod select;
mod strategy;

use std::collections::HashSet;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::{self, Label, LabeledExample, Model, TrainParams};
use crate::corpus::{Collection, QrelsMap};
use crate::features::{self, SparseVector, Vocabulary};
use crate::{Error, Result};

pub use budget::BudgetSpec;
pub use runlog::{AssessmentRecord, RunLog, RUNLOG_HEADER};
pub use select::{select_pairs, SelectedPair};
pub use strategy::{parse_strategy_list, StrategyCode, Unit};

/// Random items temporarily labeled non-relevant before each training round.
pub const RANDOM_NEGATIVES: usize = 100;

/// Batch size after one growth step: `b + ceil(b / 10)`.
pub fn next_batch_size(b: usize) -> usize {
    b + b.div_ceil(10)
}

/// A collection with its vocabulary and normalized feature vectors for every
/// union item. Shared read-only by all runs.
#[derive(Debug)]
pub struct IndexedCollection {
    pub collection: Collection,
    pub vocab: Vocabulary,
    pub vectors: Vec<SparseVector>,
    ranks: Vec<u32>,
}

impl IndexedCollection {
    pub fn build(collection: Collection) -> Self {
        let vocab = Vocabulary::from_collection(&collection);
        Self::with_vocabulary(collection, vocab)
    }

    pub fn with_vocabulary(collection: Collection, vocab: Vocabulary) -> Self {
        let vectors = features::vectorize_collection(&collection, &vocab, true);
        let ranks = collection.item_id_ranks();
        Self {
            collection,
            vocab,
            vectors,
            ranks,
        }
    }

    /// Rank of each union item in ascending item-id order.
    pub fn id_ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn vectorize(&self, text: &str) -> SparseVector {
        features::vectorize(text, &self.vocab, true)
    }
}

/// One topic's labels resolved to collection indices. Unjudged items are
/// non-relevant.
#[derive(Debug, Clone)]
pub struct TopicJudgments {
    pub topic_id: String,
    doc_relevant: Vec<bool>,
    // indexed by union item; documents' entries unused
    sent_relevant: Vec<bool>,
    relevant_docs: usize,
}

impl TopicJudgments {
    pub fn new(topic_id: &str, collection: &Collection, doc_qrels: &QrelsMap, sent_qrels: &QrelsMap) -> Self {
        let mut doc_relevant = vec![false; collection.num_documents()];
        let mut sent_relevant = vec![false; collection.union_len()];
        let mut unknown = 0usize;
        for (id, rel) in doc_qrels.judgments(topic_id) {
            match collection.doc_index(id) {
                Some(d) => doc_relevant[d] = rel,
                None => unknown += 1,
            }
        }
        for (id, rel) in sent_qrels.judgments(topic_id) {
            match collection.item_index(id) {
                Some(i) if i >= collection.num_documents() => sent_relevant[i] = rel,
                _ => unknown += 1,
            }
        }
        if unknown > 0 {
            log::warn!("topic {topic_id}: {unknown} qrels entries name items outside the collection");
        }
        let relevant_docs = doc_relevant.iter().filter(|r| **r).count();
        Self {
            topic_id: topic_id.to_string(),
            doc_relevant,
            sent_relevant,
            relevant_docs,
        }
    }

    pub fn doc_is_relevant(&self, doc: usize) -> bool {
        self.doc_relevant[doc]
    }

    pub fn sentence_is_relevant(&self, item: usize) -> bool {
        self.sent_relevant[item]
    }

    /// R.
    pub fn relevant_docs(&self) -> usize {
        self.relevant_docs
    }
}

/// What the simulated reviewer saw and answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assessment {
    pub label: Label,
    /// Union index of the presented document or sentence.
    pub presented_item: usize,
    pub sentences_read: usize,
}

/// Simulates one judgment.
///
/// A sentence costs one read and is labeled by the sentence qrels. A
/// document is labeled by the document qrels and read from the top until the
/// first relevant sentence; without one, every sentence is read.
pub fn simulate_assessment(
    pair: SelectedPair,
    present: Unit,
    collection: &Collection,
    judgments: &TopicJudgments,
) -> Assessment {
    match present {
        Unit::Sentence => Assessment {
            label: Label::from_relevant(judgments.sentence_is_relevant(pair.sentence)),
            presented_item: pair.sentence,
            sentences_read: 1,
        },
        Unit::Document => {
            let sentences = collection.sentence_items(pair.doc);
            let total = sentences.len();
            let read = sentences
                .clone()
                .position(|s| judgments.sentence_is_relevant(s))
                .map_or(total, |p| p + 1);
            Assessment {
                label: Label::from_relevant(judgments.doc_is_relevant(pair.doc)),
                presented_item: pair.doc,
                sentences_read: read,
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub strategy: StrategyCode,
    pub seed: u64,
    /// Maximum number of judgments.
    pub budget: usize,
    /// Regularization and iteration count; the seed field is ignored, each
    /// batch draws a fresh training seed from the run's generator.
    pub train: TrainParams,
    pub random_negatives: usize,
}

impl RunConfig {
    pub fn new(strategy: StrategyCode, seed: u64, budget: usize) -> Self {
        Self {
            strategy,
            seed,
            budget,
            train: TrainParams::default(),
            random_negatives: RANDOM_NEGATIVES,
        }
    }
}

/// Mutable state of one (topic, strategy) run.
#[derive(Debug, Clone)]
pub struct RunState {
    pub topic_id: String,
    pub config: RunConfig,
    topic_vector: SparseVector,
    training: Vec<(usize, Label)>,
    in_training: HashSet<usize>,
    batch_size: usize,
    output: Vec<usize>,
    in_output: Vec<bool>,
    rng: ChaCha8Rng,
    batch_index: usize,
    log: RunLog,
}

/// Result of one batch, exposed for inspection.
#[derive(Debug, Clone)]
pub struct BatchOutcome {
    pub model: Model,
    pub negatives: Vec<usize>,
    pub pairs: Vec<SelectedPair>,
    /// Number of records appended to the log by this batch.
    pub assessed: usize,
}

impl RunState {
    /// Seeds the training set with the topic statement as a relevant
    /// pseudo-document and sets the batch size to 1.
    pub fn init(index: &IndexedCollection, topic_id: &str, statement: &str, config: RunConfig) -> Result<Self> {
        if statement.trim().is_empty() {
            return Err(Error::EmptyTopicStatement(topic_id.to_string()));
        }
        config.train.validate()?;
        Ok(Self {
            topic_id: topic_id.to_string(),
            topic_vector: index.vectorize(statement),
            training: Vec::new(),
            in_training: HashSet::new(),
            batch_size: 1,
            output: Vec::new(),
            in_output: vec![false; index.collection.num_documents()],
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            batch_index: 0,
            log: RunLog::new(topic_id, config.strategy),
            config,
        })
    }

    pub fn batch_size(&self) -> usize {
        self.batch_size
    }

    /// Persistent training set size, counting the topic pseudo-document.
    pub fn training_set_len(&self) -> usize {
        self.training.len() + 1
    }

    /// Persistent `(union item, label)` pairs after the topic statement.
    pub fn training_items(&self) -> &[(usize, Label)] {
        &self.training
    }

    pub fn topic_vector(&self) -> &SparseVector {
        &self.topic_vector
    }

    /// System output: document indices in review order.
    pub fn output(&self) -> &[usize] {
        &self.output
    }

    pub fn in_output(&self, doc: usize) -> bool {
        self.in_output[doc]
    }

    pub fn log(&self) -> &RunLog {
        &self.log
    }

    pub fn into_log(self) -> RunLog {
        self.log
    }

    pub fn assessed(&self) -> usize {
        self.log.records.len()
    }

    pub fn is_finished(&self) -> bool {
        self.assessed() >= self.config.budget || self.output.len() >= self.in_output.len()
    }

    /// Draws the temporary non-relevant items for the next training round:
    /// documents or sentences per the strategy's training unit, excluding
    /// items already in the persistent training set. Takes everything
    /// eligible when fewer are available.
    pub fn sample_random_negatives(&mut self, index: &IndexedCollection) -> Vec<usize> {
        let c = &index.collection;
        let pool = match self.config.strategy.train {
            Unit::Document => 0..c.num_documents(),
            Unit::Sentence => c.num_documents()..c.union_len(),
        };
        let wanted = self.config.random_negatives;
        let taken = self.in_training.iter().filter(|i| pool.contains(i)).count();
        let eligible = pool.len() - taken;
        if eligible <= wanted {
            if eligible < wanted {
                log::warn!(
                    "topic {}: only {eligible} items available as random negatives ({wanted} wanted)",
                    self.topic_id
                );
            }
            return pool.filter(|i| !self.in_training.contains(i)).collect();
        }
        let mut chosen = Vec::with_capacity(wanted);
        let mut seen = HashSet::with_capacity(wanted);
        while chosen.len() < wanted {
            let i = self.rng.random_range(pool.clone());
            if !self.in_training.contains(&i) && seen.insert(i) {
                chosen.push(i);
            }
        }
        chosen
    }

    /// Trains on the topic statement, the persistent training set and the
    /// given temporary negatives.
    pub fn train_model(&mut self, index: &IndexedCollection, negatives: &[usize]) -> Result<Model> {
        let mut examples = Vec::with_capacity(1 + self.training.len() + negatives.len());
        examples.push(LabeledExample::new(&self.topic_vector, Label::Relevant));
        examples.extend(
            self.training
                .iter()
                .map(|&(item, label)| LabeledExample::new(&index.vectors[item], label)),
        );
        examples.extend(
            negatives
                .iter()
                .map(|&item| LabeledExample::new(&index.vectors[item], Label::NonRelevant)),
        );
        let params = TrainParams {
            seed: self.rng.next_u64(),
            ..self.config.train
        };
        classifier::train(&examples, &params)
    }

    /// Runs one batch. Returns `None` once the budget is spent or every
    /// document has been output.
    pub fn step_batch(
        &mut self,
        index: &IndexedCollection,
        judgments: &TopicJudgments,
    ) -> Result<Option<BatchOutcome>> {
        if self.is_finished() {
            return Ok(None);
        }
        let strategy = self.config.strategy;
        let negatives = self.sample_random_negatives(index);
        let model = self.train_model(index, &negatives)?;

        let count = self.batch_size.min(self.config.budget - self.assessed());
        let in_output = &self.in_output;
        let pairs = select_pairs(index, &model, strategy.select, count, |d| !in_output[d]);
        if pairs.is_empty() {
            return Ok(None);
        }
        self.batch_index += 1;

        for p in &pairs {
            debug_assert!(!self.in_output[p.doc], "document selected twice");
            self.in_output[p.doc] = true;
            self.output.push(p.doc);
        }

        let c = &index.collection;
        for &pair in &pairs {
            let a = simulate_assessment(pair, strategy.present, c, judgments);
            let (cum_judge, cum_sent) = self.log.records.last().map_or((0, 0), |r| (r.cum_judge, r.cum_sent));
            self.log.records.push(AssessmentRecord {
                ordinal: self.log.records.len() + 1,
                batch_index: self.batch_index,
                doc_id: c.doc(pair.doc).doc_id.clone(),
                presented_item: c.item_id(a.presented_item),
                label: a.label,
                sentences_read: a.sentences_read,
                cum_judge: cum_judge + 1,
                cum_sent: cum_sent + a.sentences_read,
            });
            let item = match strategy.train {
                Unit::Document => pair.doc,
                Unit::Sentence => pair.sentence,
            };
            if self.in_training.insert(item) {
                self.training.push((item, a.label));
            }
        }
        log::debug!(
            "topic {} {}: batch {} size {} -> {} judged",
            self.topic_id,
            strategy,
            self.batch_index,
            pairs.len(),
            self.assessed()
        );
        self.batch_size = next_batch_size(self.batch_size);
        Ok(Some(BatchOutcome {
            model,
            negatives,
            assessed: pairs.len(),
            pairs,
        }))
    }

    /// Runs batches until the budget is spent or no document is left.
    pub fn run(mut self, index: &IndexedCollection, judgments: &TopicJudgments) -> Result<RunLog> {
        while self.step_batch(index, judgments)?.is_some() {}
        Ok(self.into_log())
    }
}

/// Convenience wrapper: init + run.
pub fn run_topic(
    index: &IndexedCollection,
    judgments: &TopicJudgments,
    statement: &str,
    config: RunConfig,
) -> Result<RunLog> {
    RunState::init(index, &judgments.topic_id, statement, config)?.run(index, judgments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{ingest_documents, Granularity, SegmenterConfig};

    #[test]
    fn batch_size_sequence() {
        let mut b = 1;
        let mut seq = vec![b];
        for _ in 0..16 {
            b = next_batch_size(b);
            seq.push(b);
        }
        assert_eq!(seq, [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 21, 24]);
    }

    fn tiny() -> (IndexedCollection, TopicJudgments) {
        let docs = vec![
            ("A".to_string(), "Alpha beta gamma. Delta epsilon alpha.".to_string()),
            ("B".to_string(), "Gamma delta. Beta alpha zeta. Theta.".to_string()),
            ("C".to_string(), "Zeta theta. Alpha gamma.".to_string()),
        ];
        let c = ingest_documents(docs, &SegmenterConfig::default()).unwrap();
        let idx = IndexedCollection::build(c);
        let mut dq = QrelsMap::new(Granularity::Document);
        dq.insert("t", "A", true);
        dq.insert("t", "B", false);
        let mut sq = QrelsMap::new(Granularity::Sentence);
        sq.insert("t", "A#0", false);
        sq.insert("t", "A#1", true);
        let j = TopicJudgments::new("t", &idx.collection, &dq, &sq);
        (idx, j)
    }

    #[test]
    fn reading_model() {
        let (idx, j) = tiny();
        let c = &idx.collection;
        let a = SelectedPair {
            doc: 0,
            sentence: c.sentence_item(0, 0),
        };
        let doc = simulate_assessment(a, Unit::Document, c, &j);
        assert_eq!(
            (doc.label, doc.sentences_read, doc.presented_item),
            (Label::Relevant, 2, 0)
        );
        let sent = simulate_assessment(a, Unit::Sentence, c, &j);
        assert_eq!((sent.label, sent.sentences_read), (Label::NonRelevant, 1));
        // non-relevant B has three sentences
        let b = SelectedPair {
            doc: 1,
            sentence: c.sentence_item(1, 1),
        };
        assert_eq!(simulate_assessment(b, Unit::Document, c, &j).sentences_read, 3);
    }

    #[test]
    fn init_contract() {
        let (idx, _) = tiny();
        let cfg = RunConfig::new(StrategyCode::DDD, 5, 10);
        let s = RunState::init(&idx, "t", "alpha gamma", cfg.clone()).unwrap();
        assert_eq!((s.training_set_len(), s.batch_size(), s.output().len()), (1, 1, 0));
        assert!(matches!(
            RunState::init(&idx, "t", "  ", cfg),
            Err(Error::EmptyTopicStatement(_))
        ));
    }

    #[test]
    fn zero_budget_runs_nothing() {
        let (idx, j) = tiny();
        let mut cfg = RunConfig::new(StrategyCode::DDD, 5, 0);
        cfg.train.iterations = 100;
        let log = run_topic(&idx, &j, "alpha", cfg).unwrap();
        assert!(log.is_empty());
    }

    #[test]
    fn exhausts_small_collection() {
        let (idx, j) = tiny();
        for strategy in StrategyCode::all() {
            let mut cfg = RunConfig::new(strategy, 1, 100);
            cfg.train.iterations = 200;
            let log = run_topic(&idx, &j, "alpha gamma", cfg).unwrap();
            let mut ids: Vec<_> = log.doc_ids().collect();
            assert_eq!(ids.len(), 3, "{strategy}");
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), 3);
        }
    }

    #[test]
    fn negatives_exhaustion_takes_all() {
        let (idx, _) = tiny();
        let mut cfg = RunConfig::new(StrategyCode::new(Unit::Document, Unit::Sentence, Unit::Document), 3, 10);
        cfg.train.iterations = 10;
        let mut s = RunState::init(&idx, "t", "alpha", cfg).unwrap();
        let negs = s.sample_random_negatives(&idx);
        assert_eq!(negs.len(), idx.collection.num_sentences());
        assert!(negs.iter().all(|&i| i >= idx.collection.num_documents()));
    }
}
