use std::fmt;

use crate::{Error, Result};

/// Effort as a blend of judgments and sentences read:
/// `E = (1 - lambda) * E_judge + lambda * E_sent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortModel {
    lambda: f64,
}

impl EffortModel {
    /// Judgments only.
    pub const JUDGE: EffortModel = EffortModel { lambda: 0.0 };
    /// Equal weight on judgments and sentences.
    pub const HALF: EffortModel = EffortModel { lambda: 0.5 };
    /// Sentences read only.
    pub const SENT: EffortModel = EffortModel { lambda: 1.0 };

    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be in [0, 1], got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Effort of a prefix with the given cumulative counts.
    pub fn effort(&self, judge: usize, sent: usize) -> f64 {
        blend(judge as f64, sent as f64, self.lambda)
    }
}

impl fmt::Display for EffortModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lambda == 0.0 {
            f.write_str("Judge")
        } else if self.lambda == 1.0 {
            f.write_str("Sent")
        } else {
            write!(f, "{}", self.lambda)
        }
    }
}

// `judge + lambda * (sent - judge)` with a fused multiply-add: `sent - judge`
// is exact for counts, so the result is the convex combination rounded once.
// Rounding is monotone, hence lambda = 0 and 1 are exact, the result stays in
// [judge, sent] and never decreases as lambda grows.
fn blend(judge: f64, sent: f64, lambda: f64) -> f64 {
    lambda.mul_add(sent - judge, judge)
}

/// `(1 - lambda) * judge + lambda * sent`, with `lambda` in `[0, 1]`.
pub fn effort_lambda(judge: f64, sent: f64, lambda: f64) -> Result<f64> {
    EffortModel::new(lambda)?;
    if judge < 0.0 || sent < 0.0 {
        return Err(Error::InvalidParameter("effort counts must be non-negative".into()));
    }
    Ok(blend(judge, sent, lambda))
}

/// Parses `start:end:step` (inclusive) or a comma-separated list.
pub fn parse_lambda_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("bad lambda grid `{s}`"));
    let grid: Vec<f64> = if let [start, end, step] = s.split(':').collect::<Vec<_>>()[..] {
        let (start, end, step): (f64, f64, f64) = (
            start.trim().parse().map_err(|_| bad())?,
            end.trim().parse().map_err(|_| bad())?,
            step.trim().parse().map_err(|_| bad())?,
        );
        if !(step > 0.0 && end >= start) {
            return Err(bad());
        }
        let intervals = ((end - start) / step).round() as usize;
        if intervals == 0 {
            vec![start]
        } else {
            (0..=intervals)
                .map(|k| start + (end - start) * k as f64 / intervals as f64)
                .collect()
        }
    } else {
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    for &l in &grid {
        EffortModel::new(l)?;
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(effort_lambda(10.0, 50.0, 0.5).unwrap(), 30.0);
        assert_eq!(effort_lambda(10.0, 50.0, 0.0).unwrap(), 10.0);
        assert_eq!(effort_lambda(10.0, 50.0, 1.0).unwrap(), 50.0);
        assert!(effort_lambda(10.0, 50.0, 1.5).is_err());
        assert!(effort_lambda(10.0, 50.0, -0.1).is_err());
    }

    #[test]
    fn single_document_form() {
        // one judgment that read `s` sentences: 1 + lambda (s - 1)
        for s in 1..30usize {
            for k in 0..=20 {
                let l = k as f64 / 20.0;
                let e = EffortModel::new(l).unwrap().effort(1, s);
                assert!((e - (1.0 + l * (s as f64 - 1.0))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn grid_parsing() {
        let g = parse_lambda_grid("0:1:0.05").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!((g[0], g[20]), (0.0, 1.0));
        assert_eq!(g[10], 0.5);
        assert_eq!(parse_lambda_grid("0,0.5,1").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_lambda_grid("0:2:0.5").is_err());
        assert!(parse_lambda_grid("a").is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(EffortModel::JUDGE.to_string(), "Judge");
        assert_eq!(EffortModel::HALF.to_string(), "0.5");
        assert_eq!(EffortModel::SENT.to_string(), "Sent");
    }
}
