//! Splits a few documents into sentences and prints the label statistics
//! table for them.
//!
//!     cargo run --example segment_and_stats

use calsim::corpus::{corpus_stats, ingest_documents, Granularity, QrelsMap, SegmenterConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = vec![
        (
            "a".to_string(),
            "Dr. Smith arrived at 3 p.m. on Monday. The salmon run was late! Was it the heat?".to_string(),
        ),
        (
            "b".to_string(),
            "Quarterly prices fell. Analysts (e.g. Jones) expected it.".to_string(),
        ),
        ("c".to_string(), "Nothing relevant here. Or here.".to_string()),
    ];
    let collection = ingest_documents(records, &SegmenterConfig::default())?;
    for doc in collection.documents() {
        for (i, span) in doc.sentences.iter().enumerate() {
            println!(
                "{:<4} [{:>3}, {:>3}) {}",
                doc.sentence_id(i),
                span.char_start,
                span.char_end,
                doc.sentence_text(i)
            );
        }
    }

    let mut doc_qrels = QrelsMap::new(Granularity::Document);
    let mut sent_qrels = QrelsMap::new(Granularity::Sentence);
    for (doc, rel) in [("a", true), ("b", false), ("c", false)] {
        doc_qrels.insert("salmon", doc, rel);
    }
    for (sent, rel) in [("a#0", false), ("a#1", true), ("a#2", false)] {
        sent_qrels.insert("salmon", sent, rel);
    }
    println!();
    corpus_stats(&collection, &doc_qrels, &sent_qrels).write_csv("demo", std::io::stdout().lock())?;
    Ok(())
}
