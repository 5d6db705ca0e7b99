//! Builds the vocabulary over documents and sentences together and prints
//! the tf-idf vector of one sentence.
//!
//!     cargo run --example tfidf_features

use calsim::corpus::{ingest_documents, SegmenterConfig};
use calsim::features::{tokenize, vectorize, Vocabulary};

fn main() -> calsim::Result<()> {
    let records = vec![
        (
            "a".to_string(),
            "Salmon swim upstream to spawn. Bears eat salmon in the river.".to_string(),
        ),
        (
            "b".to_string(),
            "The river flooded. Salmon were stranded on the banks.".to_string(),
        ),
        (
            "c".to_string(),
            "Stock prices fell sharply. Traders blamed the river port strike.".to_string(),
        ),
    ];
    let collection = ingest_documents(records, &SegmenterConfig::default())?;
    let vocab = Vocabulary::from_collection(&collection);
    println!("{} union items, {} terms kept", vocab.num_items(), vocab.len());

    let text = collection.doc(0).sentence_text(1);
    println!("{text:?} -> {:?}", tokenize(text));
    for (id, w) in vectorize(text, &vocab, false).iter() {
        let term = vocab.term(id).unwrap_or("?");
        println!("  {term:<10} df {:>2}  weight {w:.4}", vocab.df(id).unwrap_or(0));
    }
    let unit = vectorize(text, &vocab, true);
    println!("normalized norm {:.6}", unit.norm());
    Ok(())
}
