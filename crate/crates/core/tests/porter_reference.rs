//! The stemmer against a reference implementation of the original Porter
//! algorithm (fixture: `word<TAB>stem` per line).

use calsim::features::stem;

#[test]
fn matches_reference_stems() {
    let fixture = include_str!("fixtures/porter_original.tsv");
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for line in fixture.lines().filter(|l| !l.is_empty()) {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        let got = stem(word);
        if got != expected {
            mismatches.push(format!("{word}: got {got}, want {expected}"));
        }
        checked += 1;
    }
    assert!(checked > 2000);
    assert!(
        mismatches.is_empty(),
        "{} mismatches:\n{}",
        mismatches.len(),
        mismatches.join("\n")
    );
}
