use std::collections::{HashMap, HashSet};

use super::SentenceSpan;

/// Lowercase tokens (without the trailing period) that do not end a
/// sentence when followed by `.` and whitespace.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "inc", "ltd", "co", "corp", "no",
    "fig", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec", "u.s", "a.m", "p.m",
    "gen", "gov", "sen", "rep", "rev", "dept", "approx", "est",
];

/// Rule-based splitter: a sentence ends after a run of `.`, `!` or `?`
/// (optionally followed by closing quotes or brackets) when whitespace
/// follows, unless the word before a `.` is a known abbreviation.
#[derive(Debug, Clone)]
pub struct RuleConfig {
    abbreviations: HashSet<String>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self::with_abbreviations(DEFAULT_ABBREVIATIONS.iter().copied())
    }
}

impl RuleConfig {
    pub fn with_abbreviations<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            abbreviations: abbreviations
                .into_iter()
                .map(|a| a.as_ref().trim_end_matches('.').to_lowercase())
                .collect(),
        }
    }

    pub fn is_abbreviation(&self, word: &str) -> bool {
        self.abbreviations.contains(&word.to_lowercase())
    }
}

/// How documents are split at ingestion time.
#[derive(Debug, Clone)]
pub enum SegmenterConfig {
    Rules(RuleConfig),
    /// Spans supplied by an external tokenizer, keyed by doc id, copied
    /// verbatim after validation.
    PreSegmented(HashMap<String, Vec<SentenceSpan>>),
}

impl Default for SegmenterConfig {
    fn default() -> Self {
        SegmenterConfig::Rules(RuleConfig::default())
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{201d}' | '\u{2019}')
}

/// Splits `text` into sentence spans (character offsets).
///
/// Spans are ascending and disjoint, and only whitespace lies outside them.
/// Empty text yields the single span `[0, 0)`; whitespace-only text yields one
/// span covering everything.
pub fn segment_sentences(text: &str, config: &RuleConfig) -> Vec<SentenceSpan> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut spans = Vec::new();

    let skip_ws = |mut i: usize| {
        while i < n && chars[i].is_whitespace() {
            i += 1;
        }
        i
    };

    let mut start = skip_ws(0);
    let mut i = start;
    while i < n {
        if !is_terminal(chars[i]) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < n && (is_terminal(chars[j]) || is_closing(chars[j])) {
            j += 1;
        }
        if j < n && chars[j].is_whitespace() && !(chars[i] == '.' && preceded_by_abbreviation(&chars, start, i, config))
        {
            spans.push(SentenceSpan::new(start, j));
            start = skip_ws(j);
            i = start;
        } else {
            i = j;
        }
    }

    let mut end = n;
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start < end {
        spans.push(SentenceSpan::new(start, end));
    }
    if spans.is_empty() {
        spans.push(SentenceSpan::new(0, n));
    }
    spans
}

fn preceded_by_abbreviation(chars: &[char], floor: usize, dot: usize, config: &RuleConfig) -> bool {
    let mut k = dot;
    while k > floor && (chars[k - 1].is_alphanumeric() || chars[k - 1] == '.') {
        k -= 1;
    }
    if k == dot {
        return false;
    }
    let word: String = chars[k..dot].iter().collect();
    config.is_abbreviation(&word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spans(text: &str) -> Vec<(usize, usize)> {
        segment_sentences(text, &RuleConfig::default())
            .into_iter()
            .map(|s| (s.char_start, s.char_end))
            .collect()
    }

    #[test]
    fn two_sentences() {
        assert_eq!(spans("Hello world. Bye."), vec![(0, 12), (13, 17)]);
    }

    #[test]
    fn minimal_split() {
        assert_eq!(spans("A. B."), vec![(0, 2), (3, 5)]);
    }

    #[test]
    fn empty_text_is_one_empty_span() {
        assert_eq!(spans(""), vec![(0, 0)]);
    }

    #[test]
    fn whitespace_only_is_one_span() {
        assert_eq!(spans("  \n "), vec![(0, 4)]);
    }

    #[test]
    fn abbreviations_do_not_split() {
        assert_eq!(spans("Mr. Smith went home. He slept."), vec![(0, 20), (21, 30)]);
        assert_eq!(spans("See e.g. this one. Ok."), vec![(0, 18), (19, 22)]);
        let custom = RuleConfig::with_abbreviations(["approx."]);
        let s = segment_sentences("About approx. ten. Yes.", &custom);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn punctuation_runs_and_closers() {
        assert_eq!(
            spans("Really?! Yes. (Quite.) Done"),
            vec![(0, 8), (9, 13), (14, 22), (23, 27)]
        );
        assert_eq!(spans("He said \"stop.\" Then left."), vec![(0, 15), (16, 26)]);
    }

    #[test]
    fn no_split_without_following_whitespace() {
        assert_eq!(spans("Version 1.5 is out. v2.0!"), vec![(0, 19), (20, 25)]);
        assert_eq!(spans("a.b.c"), vec![(0, 5)]);
    }

    #[test]
    fn leading_and_trailing_whitespace_excluded() {
        assert_eq!(spans("  One.  Two.  "), vec![(2, 6), (8, 12)]);
    }

    proptest! {
        #[test]
        fn spans_tile_non_whitespace(text in "[a-zA-Z .!?\n\"]{0,80}") {
            let chars: Vec<char> = text.chars().collect();
            let s = segment_sentences(&text, &RuleConfig::default());
            prop_assert!(!s.is_empty());
            let mut covered = vec![false; chars.len()];
            let mut prev_end = 0;
            for (k, span) in s.iter().enumerate() {
                prop_assert!(span.char_end <= chars.len());
                if k > 0 {
                    prop_assert!(span.char_start >= prev_end);
                    prop_assert!(span.char_start < span.char_end);
                }
                for c in &mut covered[span.char_start..span.char_end] {
                    *c = true;
                }
                prev_end = span.char_end;
            }
            for (c, cov) in chars.iter().zip(&covered) {
                prop_assert!(*cov || c.is_whitespace());
            }
            prop_assert_eq!(s.clone(), segment_sentences(&text, &RuleConfig::default()));
        }
    }
}
