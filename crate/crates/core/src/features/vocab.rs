use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::{Error, Result};

/// Terms must occur at least this many times (summed over all union items)
/// to enter the vocabulary.
pub const MIN_OCCURRENCES: u64 = 2;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocabulary {
    // term -> (term_id, df)
    terms: HashMap<String, (u32, u32)>,
    by_id: Vec<String>,
    num_items: usize,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    /// N: number of union items the vocabulary was built from.
    pub fn num_items(&self) -> usize {
        self.num_items
    }

    /// `(term_id, df)` of a stemmed term.
    pub fn lookup(&self, term: &str) -> Option<(u32, u32)> {
        self.terms.get(term).copied()
    }

    pub fn term(&self, id: u32) -> Option<&str> {
        self.by_id.get(id as usize).map(String::as_str)
    }

    pub fn df(&self, id: u32) -> Option<u32> {
        self.term(id).and_then(|t| self.terms.get(t)).map(|e| e.1)
    }

    /// Writes `N\t<count>` followed by `term\tterm_id\tdf` rows in id order.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "N\t{}", self.num_items)?;
        for (id, term) in self.by_id.iter().enumerate() {
            writeln!(w, "{term}\t{id}\t{}", self.terms[term].1)?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R, origin: &Path) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let bad = |line: usize, msg: &str| Error::parse(origin, line, msg);
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing `N <count>` header"))?;
        let header = header.map_err(|e| Error::io(origin, e))?;
        let num_items = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["N", n] => n.parse().map_err(|_| bad(1, "bad item count"))?,
            _ => return Err(bad(1, "expected `N <count>` header")),
        };
        let mut vocab = Vocabulary {
            num_items,
            ..Default::default()
        };
        for (i, line) in lines {
            let line = line.map_err(|e| Error::io(origin, e))?;
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [term, id, df] = cols[..] else {
                return Err(bad(i + 1, "expected `term\\tterm_id\\tdf`"));
            };
            let id: u32 = id.parse().map_err(|_| bad(i + 1, "bad term id"))?;
            let df: u32 = df.parse().map_err(|_| bad(i + 1, "bad df"))?;
            if id as usize != vocab.by_id.len() {
                return Err(bad(i + 1, "term ids must be dense and ascending"));
            }
            vocab.terms.insert(term.to_string(), (id, df));
            vocab.by_id.push(term.to_string());
        }
        Ok(vocab)
    }
}

/// Builds the vocabulary from the token lists of every union item
/// (documents and sentences both count toward df and N). Term ids follow
/// lexicographic term order.
pub fn build_vocabulary<I, T>(items: I) -> Vocabulary
where
    I: IntoIterator<Item = T>,
    T: AsRef<[String]>,
{
    // term -> (total occurrences, df)
    let mut counts: HashMap<String, (u64, u32)> = HashMap::new();
    let mut num_items = 0;
    for tokens in items {
        num_items += 1;
        let mut seen: Vec<&str> = tokens.as_ref().iter().map(String::as_str).collect();
        seen.sort_unstable();
        let mut i = 0;
        while i < seen.len() {
            let term = seen[i];
            let mut tf = 0;
            while i < seen.len() && seen[i] == term {
                tf += 1;
                i += 1;
            }
            let e = counts.entry(term.to_string()).or_default();
            e.0 += tf;
            e.1 += 1;
        }
    }
    let mut kept: Vec<(String, u32)> = counts
        .into_iter()
        .filter(|(_, (total, _))| *total >= MIN_OCCURRENCES)
        .map(|(t, (_, df))| (t, df))
        .collect();
    kept.sort_unstable();
    let mut vocab = Vocabulary {
        num_items,
        ..Default::default()
    };
    for (id, (term, df)) in kept.into_iter().enumerate() {
        vocab.terms.insert(term.clone(), (id as u32, df));
        vocab.by_id.push(term);
    }
    vocab
}

impl Vocabulary {
    /// Vocabulary over every document and sentence of a collection.
    pub fn from_collection(collection: &crate::corpus::Collection) -> Self {
        use rayon::prelude::*;
        let tokens: Vec<Vec<String>> = (0..collection.union_len())
            .into_par_iter()
            .map(|i| super::tokenize(collection.item_text(i)))
            .collect();
        build_vocabulary(tokens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn singletons_pruned() {
        let v = build_vocabulary([toks("a b"), toks("a c")]);
        assert_eq!(v.lookup("a"), Some((0, 2)));
        assert!(v.lookup("b").is_none());
        assert!(v.lookup("c").is_none());
        assert_eq!(v.num_items(), 2);
    }

    #[test]
    fn document_plus_its_sentence_counts_twice() {
        // One document containing "rare" once, and its single sentence.
        let v = build_vocabulary([toks("rare word"), toks("rare word")]);
        assert_eq!(v.lookup("rare").map(|e| e.1), Some(2));
    }

    #[test]
    fn repeated_within_one_item_counts() {
        let v = build_vocabulary([toks("x x"), toks("y")]);
        assert_eq!(v.lookup("x"), Some((0, 1)));
    }

    #[test]
    fn empty_collection() {
        let v = build_vocabulary(Vec::<Vec<String>>::new());
        assert!(v.is_empty());
        assert_eq!(v.num_items(), 0);
    }

    #[test]
    fn ids_dense_and_sorted() {
        let v = build_vocabulary([toks("z y x z y x w")]);
        let terms: Vec<_> = (0..v.len() as u32).map(|i| v.term(i).unwrap()).collect();
        assert_eq!(terms, vec!["x", "y", "z"]);
    }

    #[test]
    fn tsv_roundtrip_is_byte_identical() {
        let v = build_vocabulary([toks("a b a"), toks("b c c"), toks("a")]);
        let mut buf = Vec::new();
        v.write_tsv(&mut buf).unwrap();
        let back = Vocabulary::read_tsv(buf.as_slice(), Path::new("v.tsv")).unwrap();
        assert_eq!(back, v);
        let mut again = Vec::new();
        back.write_tsv(&mut again).unwrap();
        assert_eq!(buf, again);
        assert!(std::str::from_utf8(&buf).unwrap().starts_with("N\t3\n"));
    }

    #[test]
    fn tsv_rejects_missing_header() {
        let err = Vocabulary::read_tsv("a\t0\t1\n".as_bytes(), Path::new("v.tsv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
