use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Judgment budget: an absolute count or `a*R + b` in terms of the topic's
/// number of relevant documents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetSpec {
    Absolute(usize),
    Linear { a: f64, b: f64 },
}

impl Default for BudgetSpec {
    /// `4R+1000`.
    fn default() -> Self {
        BudgetSpec::Linear { a: 4.0, b: 1000.0 }
    }
}

impl BudgetSpec {
    /// Number of judgments for a topic with `relevant` relevant documents
    /// (rounded down).
    pub fn resolve(&self, relevant: usize) -> usize {
        match *self {
            BudgetSpec::Absolute(n) => n,
            BudgetSpec::Linear { a, b } => (a * relevant as f64 + b).max(0.0).floor() as usize,
        }
    }
}

impl FromStr for BudgetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidBudget(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(rpos) = compact.find(['R', 'r']) else {
            return compact.parse().map(BudgetSpec::Absolute).map_err(|_| bad());
        };
        let (a, rest) = compact.split_at(rpos);
        let rest = &rest[1..];
        let a = match a.trim_end_matches('*') {
            "" => 1.0,
            a => a.parse::<f64>().map_err(|_| bad())?,
        };
        let b = match rest {
            "" => 0.0,
            r if r.starts_with('+') => r[1..].parse::<f64>().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
            return Err(bad());
        }
        Ok(BudgetSpec::Linear { a, b })
    }
}

impl fmt::Display for BudgetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetSpec::Absolute(n) => write!(f, "{n}"),
            BudgetSpec::Linear { a, b } => write!(f, "{a}R+{b}"),
        }
    }
}
