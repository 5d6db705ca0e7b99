//! Turns relevant passages (character ranges) into sentence labels and
//! fills in non-relevant labels from document judgments.
//!
//!     cargo run --example passage_labels

use std::path::Path;

use calsim::corpus::{
    derive_sentence_qrels_from_passages, ingest_documents, parse_passages, propagate_nonrelevant, Granularity,
    QrelsMap, SegmenterConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = vec![
        (
            "a".to_string(),
            "First sentence one. Second sentence two. Third sentence three.".to_string(),
        ),
        ("b".to_string(), "Off topic. Still off topic.".to_string()),
    ];
    let collection = ingest_documents(records, &SegmenterConfig::default())?;
    // one passage straddling the end of a#1 and the start of a#2
    let passages = parse_passages("7 a 30 45\n".as_bytes(), Path::new("inline"))?;
    let mut derived = derive_sentence_qrels_from_passages(&passages, &collection)?;

    let mut doc_qrels = QrelsMap::new(Granularity::Document);
    doc_qrels.insert("7", "a", true);
    doc_qrels.insert("7", "b", false);
    let added = propagate_nonrelevant(&doc_qrels, &mut derived.qrels, &collection)?;
    println!("{added} labels added from non-relevant documents");
    derived.qrels.write_trec(std::io::stdout().lock())?;
    Ok(())
}
