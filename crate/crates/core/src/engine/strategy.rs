use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Document (`d`) or sentence (`s`) granularity for one of the three choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "d")]
    Document,
    #[serde(rename = "s")]
    Sentence,
}

impl Unit {
    fn from_char(c: char) -> Option<Self> {
        match c {
            'd' => Some(Unit::Document),
            's' => Some(Unit::Sentence),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Unit::Document => 'd',
            Unit::Sentence => 's',
        }
    }
}

/// Which unit is shown to the reviewer, which unit carries the label into
/// the training set (and the random negatives), and which unit's score
/// ranks the candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyCode {
    pub present: Unit,
    pub train: Unit,
    pub select: Unit,
}

impl StrategyCode {
    pub const fn new(present: Unit, train: Unit, select: Unit) -> Self {
        Self { present, train, select }
    }

    /// The document-only baseline.
    pub const DDD: StrategyCode = StrategyCode::new(Unit::Document, Unit::Document, Unit::Document);
    /// Sentence shown, document trained and selected.
    pub const SDD: StrategyCode = StrategyCode::new(Unit::Sentence, Unit::Document, Unit::Document);

    /// All eight codes: ddd, sdd, dsd, ssd, dds, sds, dss, sss.
    pub fn all() -> [StrategyCode; 8] {
        use Unit::{Document as D, Sentence as S};
        [
            Self::new(D, D, D),
            Self::new(S, D, D),
            Self::new(D, S, D),
            Self::new(S, S, D),
            Self::new(D, D, S),
            Self::new(S, D, S),
            Self::new(D, S, S),
            Self::new(S, S, S),
        ]
    }

    /// Reviewer judges single sentences, so judgments and sentences read
    /// coincide.
    pub fn is_sentence_feedback(self) -> bool {
        self.present == Unit::Sentence
    }
}

impl fmt::Display for StrategyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.present.as_char(),
            self.train.as_char(),
            self.select.as_char()
        )
    }
}

impl FromStr for StrategyCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let units: Vec<Unit> = s.chars().filter_map(Unit::from_char).collect();
        match units[..] {
            [p, t, sel] if s.chars().count() == 3 => Ok(Self::new(p, t, sel)),
            _ => Err(Error::UnknownStrategy(s.to_string())),
        }
    }
}

impl Serialize for StrategyCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrategyCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list, or `all`.
pub fn parse_strategy_list(s: &str) -> Result<Vec<StrategyCode>, Error> {
    if s.trim() == "all" {
        return Ok(StrategyCode::all().to_vec());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}
