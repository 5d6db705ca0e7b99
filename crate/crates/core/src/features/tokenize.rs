use super::porter::stem;

/// Splits on anything that is not a Unicode alphanumeric, lowercases and
/// Porter-stems each token.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| stem(&t.to_lowercase()))
        .filter(|t| !t.is_empty())
        .collect()
}
