use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{segment_sentences, Collection, Document, SegmenterConfig, SentenceSpan};
use crate::{Error, Result};

/// Segments `(doc_id, text)` records into a [`Collection`].
///
/// Empty documents are kept with a single empty sentence.
pub fn ingest_documents<I>(records: I, config: &SegmenterConfig) -> Result<Collection>
where
    I: IntoIterator<Item = (String, String)>,
{
    let mut docs = Vec::new();
    for (doc_id, text) in records {
        if text.is_empty() {
            log::warn!("document `{doc_id}` has empty text");
        }
        let sentences = match config {
            SegmenterConfig::Rules(rules) => segment_sentences(&text, rules),
            SegmenterConfig::PreSegmented(map) => {
                let spans = map.get(&doc_id).ok_or_else(|| Error::InvalidSpans {
                    doc_id: doc_id.clone(),
                    reason: "missing from pre-segmented input".into(),
                })?;
                validate_spans(&doc_id, &text, spans)?;
                spans.clone()
            }
        };
        docs.push(Document {
            doc_id,
            text,
            sentences,
        });
    }
    let collection = Collection::from_documents(docs)?;
    log::info!(
        "ingested {} documents, {} sentences",
        collection.num_documents(),
        collection.num_sentences()
    );
    Ok(collection)
}

fn validate_spans(doc_id: &str, text: &str, spans: &[SentenceSpan]) -> Result<()> {
    let invalid = |reason: String| Error::InvalidSpans {
        doc_id: doc_id.to_string(),
        reason,
    };
    let len = text.chars().count();
    if spans.is_empty() {
        return Err(invalid("no sentences".into()));
    }
    if len == 0 && spans == [SentenceSpan::new(0, 0)] {
        return Ok(());
    }
    let mut prev_end = 0;
    for s in spans {
        if s.char_start >= s.char_end || s.char_end > len {
            return Err(invalid(format!(
                "span [{}, {}) out of bounds for length {len}",
                s.char_start, s.char_end
            )));
        }
        if s.char_start < prev_end {
            return Err(invalid(format!(
                "span [{}, {}) overlaps its predecessor",
                s.char_start, s.char_end
            )));
        }
        prev_end = s.char_end;
    }
    Ok(())
}

/// Reads `<doc_id>.txt` files from a directory, sorted by id.
pub fn read_text_dir(dir: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("txt") {
            continue;
        }
        let Some(id) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        out.push((id.to_string(), text));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[derive(Deserialize)]
struct TextRecord {
    id: String,
    text: String,
}

#[derive(Deserialize)]
struct SpanRecord {
    id: String,
    sentences: Vec<SentenceSpan>,
}

#[derive(Serialize, Deserialize)]
struct StoreRecord {
    id: String,
    text: String,
    sentences: Vec<SentenceSpan>,
}

fn for_each_json_line<T, F>(path: &Path, mut f: F) -> Result<()>
where
    T: for<'de> Deserialize<'de>,
    F: FnMut(T) -> Result<()>,
{
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::parse(path, n + 1, e.to_string()))?;
        f(record)?;
    }
    Ok(())
}

/// Reads JSON-lines records `{"id": .., "text": ..}` in file order.
pub fn read_jsonl_documents(path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for_each_json_line(path, |r: TextRecord| {
        out.push((r.id, r.text));
        Ok(())
    })?;
    Ok(out)
}

/// Reads either a directory of `.txt` files or a JSON-lines file.
pub fn read_documents(path: &Path) -> Result<Vec<(String, String)>> {
    if path.is_dir() {
        read_text_dir(path)
    } else {
        read_jsonl_documents(path)
    }
}

/// Reads pre-segmented spans `{"id": .., "sentences": [{"start", "end"}]}`.
pub fn read_presegmented(path: &Path) -> Result<HashMap<String, Vec<SentenceSpan>>> {
    let mut out = HashMap::new();
    for_each_json_line(path, |r: SpanRecord| {
        if out.insert(r.id.clone(), r.sentences).is_some() {
            return Err(Error::DuplicateDocId(r.id));
        }
        Ok(())
    })?;
    Ok(out)
}

/// Persists a segmented collection as JSON lines.
pub fn write_store(collection: &Collection, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for doc in collection.documents() {
        let rec = StoreRecord {
            id: doc.doc_id.clone(),
            text: doc.text.clone(),
            sentences: doc.sentences.clone(),
        };
        serde_json::to_writer(&mut w, &rec).map_err(|e| Error::io(path, e.into()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_store(path: &Path) -> Result<Collection> {
    let mut docs = Vec::new();
    for_each_json_line(path, |r: StoreRecord| {
        validate_spans(&r.id, &r.text, &r.sentences)?;
        docs.push(Document {
            doc_id: r.id,
            text: r.text,
            sentences: r.sentences,
        });
        Ok(())
    })?;
    Collection::from_documents(docs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::RuleConfig;

    fn rules() -> SegmenterConfig {
        SegmenterConfig::Rules(RuleConfig::default())
    }

    #[test]
    fn minimal_document_splits_in_two() {
        let c = ingest_documents(vec![("d".into(), "A. B.".into())], &rules()).unwrap();
        assert_eq!(c.num_documents(), 1);
        assert_eq!(c.num_sentences(), 2);
    }

    #[test]
    fn duplicate_id_named_in_error() {
        let err = ingest_documents(vec![("x1".into(), "a".into()), ("x1".into(), "b".into())], &rules()).unwrap_err();
        assert!(err.to_string().contains("x1"));
    }

    #[test]
    fn empty_text_retained_with_one_empty_sentence() {
        let c = ingest_documents(vec![("e".into(), String::new())], &rules()).unwrap();
        assert_eq!(c.doc(0).sentences, vec![SentenceSpan::new(0, 0)]);
        assert_eq!(c.union_len(), 2);
    }

    #[test]
    fn presegmented_spans_copied_verbatim() {
        let spans = vec![SentenceSpan::new(0, 3), SentenceSpan::new(3, 9)];
        let map = HashMap::from([("p".to_string(), spans.clone())]);
        let c = ingest_documents(
            vec![("p".into(), "abcdef. gh".into())],
            &SegmenterConfig::PreSegmented(map),
        )
        .unwrap();
        assert_eq!(c.doc(0).sentences, spans);
        assert_eq!(c.doc(0).sentence_text(0), "abc");
    }

    #[test]
    fn presegmented_overlap_rejected() {
        let map = HashMap::from([("p".to_string(), vec![SentenceSpan::new(0, 4), SentenceSpan::new(3, 6)])]);
        let err = ingest_documents(vec![("p".into(), "abcdef".into())], &SegmenterConfig::PreSegmented(map));
        assert!(matches!(err, Err(Error::InvalidSpans { .. })));
    }

    #[test]
    fn store_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let c = ingest_documents(
            vec![("a".into(), "One. Two.".into()), ("b".into(), "Three".into())],
            &rules(),
        )
        .unwrap();
        let path = dir.path().join("store.jsonl");
        write_store(&c, &path).unwrap();
        let back = read_store(&path).unwrap();
        assert_eq!(back.documents(), c.documents());
    }

    #[test]
    fn reads_text_dir_and_jsonl() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("b.txt"), "Bee.").unwrap();
        fs::write(dir.path().join("a.txt"), "Ay.").unwrap();
        fs::write(dir.path().join("notes.md"), "skip").unwrap();
        let docs = read_documents(dir.path()).unwrap();
        assert_eq!(docs, vec![("a".into(), "Ay.".into()), ("b".into(), "Bee.".into())]);

        let jl = dir.path().join("docs.jsonl");
        fs::write(
            &jl,
            "{\"id\":\"z\",\"text\":\"Zed.\"}\n\n{\"id\":\"y\",\"text\":\"Why\"}\n",
        )
        .unwrap();
        let docs = read_documents(&jl).unwrap();
        assert_eq!(docs[0].0, "z");
        assert_eq!(docs[1].1, "Why");

        fs::write(&jl, "{\"id\":\"z\"}\n").unwrap();
        let err = read_documents(&jl).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
