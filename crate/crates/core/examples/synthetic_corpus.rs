//! Writes a synthetic collection (documents, topics, document and sentence
//! qrels) that the `calsim` binary can consume, and prints its label
//! statistics.
//!
//!     cargo run --example synthetic_corpus -- OUT_DIR [documents] [topics]

use std::path::PathBuf;

use calsim::corpus::corpus_stats;
use calsim::synthetic::{generate, SyntheticConfig};

fn main() -> calsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "synthetic".into()));
    let mut numbers = args.map(|a| a.parse::<usize>().expect("numeric argument"));
    let config = SyntheticConfig {
        documents: numbers.next().unwrap_or(2000),
        topics: numbers.next().unwrap_or(10),
        ..SyntheticConfig::default()
    };
    let corpus = generate(&config)?;
    corpus.write_to(&out)?;

    let stats = corpus_stats(&corpus.collection, &corpus.doc_qrels, &corpus.sent_qrels).overall;
    println!("wrote {}", out.display());
    println!("sentences per document          {:.2}", stats.sentences_per_doc());
    println!(
        "relevant sentences per rel. doc {:.2}",
        stats.relevant_sentences_per_relevant_doc()
    );
    println!(
        "first relevant sentence at      {:.2}",
        stats.mean_first_relevant_position()
    );
    Ok(())
}
