//! Simulation toolkit for high-recall retrieval with continuous active
//! learning (CAL).
//!
//! The reviewer can be shown whole documents or single sentences, the
//! classifier can be trained on either granularity, and candidates can be
//! ranked by document score or by best sentence score. All eight
//! combinations ([`engine::StrategyCode`]) run against qrels-driven
//! simulated reviewers and are scored by recall at a given effort, where
//! effort blends judgments and sentences read ([`eval::effort_lambda`]).
//!
//! Pipeline:
//!
//! 1. [`corpus`]: ingest documents, split them into sentences, load or
//!    derive qrels at document and sentence granularity.
//! 2. [`features`]: Porter-stemmed tf-idf vectors over the union of
//!    documents and sentences.
//! 3. [`classifier`]: logistic regression trained with Pegasos updates on
//!    sampled positive/negative pairs.
//! 4. [`engine`]: the batched feedback loop.
//! 5. [`eval`]: recall at effort, gain curves, recall tables, paired
//!    t-tests and lambda sweeps.

pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod engine;
mod error;
pub mod eval;
pub mod features;
pub mod synthetic;

pub use error::{Error, Result};
