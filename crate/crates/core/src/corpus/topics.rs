use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A topic id and the statement that seeds its first training round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topic {
    pub topic: String,
    pub statement: String,
}

/// Reads JSON lines `{"topic": .., "statement": ..}`.
pub fn read_topics(path: &Path) -> Result<Vec<Topic>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out: Vec<Topic> = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let t: Topic = serde_json::from_str(&line).map_err(|e| Error::parse(path, n + 1, e.to_string()))?;
        if t.topic.is_empty() || t.topic.contains(['/', '\\']) {
            return Err(Error::parse(
                path,
                n + 1,
                format!("topic id `{}` cannot name a file", t.topic),
            ));
        }
        if out.iter().any(|o| o.topic == t.topic) {
            return Err(Error::parse(path, n + 1, format!("duplicate topic `{}`", t.topic)));
        }
        out.push(t);
    }
    Ok(out)
}

pub fn write_topics(topics: &[Topic], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for t in topics {
        serde_json::to_writer(&mut w, t).map_err(|e| Error::io(path, e.into()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("topics.jsonl");
        let topics = vec![
            Topic {
                topic: "401".into(),
                statement: "pacific salmon".into(),
            },
            Topic {
                topic: "402".into(),
                statement: "\"quoted\" text".into(),
            },
        ];
        write_topics(&topics, &path).unwrap();
        assert_eq!(read_topics(&path).unwrap(), topics);
        std::fs::write(
            &path,
            "{\"topic\":\"1\",\"statement\":\"a\"}\n{\"topic\":\"1\",\"statement\":\"b\"}\n",
        )
        .unwrap();
        assert!(matches!(read_topics(&path), Err(Error::Parse { line: 2, .. })));
        std::fs::write(&path, "{\"topic\":\"a/b\",\"statement\":\"a\"}\n").unwrap();
        assert!(read_topics(&path).is_err());
    }
}
