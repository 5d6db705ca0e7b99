use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Collection;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Document,
    Sentence,
}

/// Binary relevance labels keyed by topic and item id. Items without an
/// entry are unjudged and treated as non-relevant.
#[derive(Debug, Clone, PartialEq)]
pub struct QrelsMap {
    granularity: Granularity,
    topics: BTreeMap<String, HashMap<String, bool>>,
}

impl QrelsMap {
    pub fn new(granularity: Granularity) -> Self {
        Self {
            granularity,
            topics: BTreeMap::new(),
        }
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    /// Sets a label, returning the previous one.
    pub fn insert(&mut self, topic: &str, item_id: &str, relevant: bool) -> Option<bool> {
        self.topics
            .entry(topic.to_string())
            .or_default()
            .insert(item_id.to_string(), relevant)
    }

    pub fn get(&self, topic: &str, item_id: &str) -> Option<bool> {
        self.topics.get(topic)?.get(item_id).copied()
    }

    pub fn is_relevant(&self, topic: &str, item_id: &str) -> bool {
        self.get(topic, item_id).unwrap_or(false)
    }

    pub fn topics(&self) -> impl Iterator<Item = &str> {
        self.topics.keys().map(String::as_str)
    }

    pub fn has_topic(&self, topic: &str) -> bool {
        self.topics.contains_key(topic)
    }

    pub fn judgments(&self, topic: &str) -> impl Iterator<Item = (&str, bool)> {
        self.topics
            .get(topic)
            .into_iter()
            .flat_map(|m| m.iter().map(|(k, v)| (k.as_str(), *v)))
    }

    /// Number of relevant items for a topic (R at document granularity).
    pub fn relevant_count(&self, topic: &str) -> usize {
        self.judgments(topic).filter(|(_, r)| *r).count()
    }

    pub fn len(&self) -> usize {
        self.topics.values().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks that every entry names an item of the right kind.
    pub fn validate(&self, collection: &Collection) -> Result<()> {
        for map in self.topics.values() {
            for id in map.keys() {
                let ok = match self.granularity {
                    Granularity::Document => collection.doc_index(id).is_some(),
                    Granularity::Sentence => collection
                        .item_index(id)
                        .is_some_and(|i| i >= collection.num_documents()),
                };
                if !ok {
                    return Err(Error::UnknownDocument(id.clone()));
                }
            }
        }
        Ok(())
    }

    /// Writes TREC 4-column qrels, sorted by topic then item id.
    pub fn write_trec<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (topic, map) in &self.topics {
            let mut entries: Vec<_> = map.iter().collect();
            entries.sort();
            for (id, rel) in entries {
                writeln!(w, "{topic} 0 {id} {}", u8::from(*rel))?;
            }
        }
        Ok(())
    }
}

/// Parses TREC qrels (`topic ignored item_id grade`); grades above zero are
/// relevant.
pub fn parse_qrels<R: BufRead>(reader: R, granularity: Granularity, origin: &Path) -> Result<QrelsMap> {
    let mut qrels = QrelsMap::new(granularity);
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                origin,
                n + 1,
                format!("expected 4 columns, found {}", cols.len()),
            ));
        }
        let grade: i64 = cols[3]
            .parse()
            .map_err(|_| Error::parse(origin, n + 1, format!("bad relevance grade `{}`", cols[3])))?;
        qrels.insert(cols[0], cols[2], grade > 0);
    }
    Ok(qrels)
}

pub fn load_qrels(path: &Path, granularity: Granularity) -> Result<QrelsMap> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_qrels(BufReader::new(file), granularity, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<QrelsMap> {
        parse_qrels(s.as_bytes(), Granularity::Document, Path::new("q.txt"))
    }

    #[test]
    fn trec_format_rules() {
        let q = parse("athome100 0 doc001 1\nathome100 0 doc002 0\nathome100 0 doc003 2\n").unwrap();
        assert_eq!(q.get("athome100", "doc001"), Some(true));
        assert_eq!(q.get("athome100", "doc002"), Some(false));
        assert_eq!(q.get("athome100", "doc003"), Some(true));
        assert_eq!(q.relevant_count("athome100"), 2);
        assert!(!q.is_relevant("athome100", "unjudged"));
        assert!(!q.is_relevant("other", "doc001"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse("t 0 d 1\nt 0 d\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("t 0 d x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let q = parse("b 0 d2 0\na 0 d1 1\na 0 d0 0\n").unwrap();
        let mut buf = Vec::new();
        q.write_trec(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "a 0 d0 0\na 0 d1 1\nb 0 d2 0\n"
        );
        assert_eq!(parse(std::str::from_utf8(&buf).unwrap()).unwrap(), q);
    }
}
