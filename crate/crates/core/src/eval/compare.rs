use std::collections::BTreeMap;
use std::io::Write;

use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{recall_at_effort, EffortLevel, EffortModel};
use crate::corpus::QrelsMap;
use crate::engine::RunLog;
use crate::{Error, Result};

/// Paired two-sided t-test of `b - a` over topics.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonResult {
    /// (recall A, recall B) per topic.
    pub pairs: Vec<(f64, f64)>,
    pub mean_diff: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub p_value: f64,
    /// All differences equal: the CI collapses to the mean and `p` is 1 when
    /// the mean is 0 and 0 otherwise.
    pub degenerate: bool,
}

impl ComparisonResult {
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn significant(&self) -> bool {
        self.p_value < 0.05
    }
}

pub fn compare_strategies(a: &[f64], b: &[f64]) -> Result<ComparisonResult> {
    if a.len() != b.len() {
        return Err(Error::UnpairedSamples(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let nf = n as f64;
    let mean = diffs.iter().sum::<f64>() / nf;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let pairs = a.iter().copied().zip(b.iter().copied()).collect();

    // Differences that agree to rounding are still a zero-variance sample.
    let degenerate = diffs.iter().all(|&d| d == diffs[0]) || var.sqrt() <= 1e-14 * mean.abs().max(1e-300);
    if degenerate {
        return Ok(ComparisonResult {
            pairs,
            mean_diff: mean,
            ci_low: mean,
            ci_high: mean,
            p_value: if mean == 0.0 { 1.0 } else { 0.0 },
            degenerate: true,
        });
    }
    let se = (var / nf).sqrt();
    let dist = StudentsT::new(0.0, 1.0, nf - 1.0).expect("n >= 2 gives a valid distribution");
    let half = dist.inverse_cdf(0.975) * se;
    let t = mean / se;
    Ok(ComparisonResult {
        pairs,
        mean_diff: mean,
        ci_low: mean - half,
        ci_high: mean + half,
        p_value: (2.0 * dist.sf(t.abs())).min(1.0),
        degenerate: false,
    })
}

fn by_topic(runs: &[RunLog]) -> BTreeMap<&str, &RunLog> {
    runs.iter().map(|r| (r.topic_id.as_str(), r)).collect()
}

/// Per-topic recall of two run sets at one effort level, paired by topic.
///
/// Topics present in only one set are an error listing them.
pub fn paired_recalls(
    runs_a: &[RunLog],
    runs_b: &[RunLog],
    doc_qrels: &QrelsMap,
    level: EffortLevel,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = (by_topic(runs_a), by_topic(runs_b));
    let orphans: Vec<String> = a
        .keys()
        .filter(|t| !b.contains_key(*t))
        .chain(b.keys().filter(|t| !a.contains_key(*t)))
        .map(|t| t.to_string())
        .collect();
    if !orphans.is_empty() {
        return Err(Error::OrphanTopics(orphans));
    }
    let mut ra = Vec::with_capacity(a.len());
    let mut rb = Vec::with_capacity(a.len());
    for (topic, log_a) in &a {
        let e = level.effort(doc_qrels.relevant_count(topic));
        ra.push(recall_at_effort(log_a, doc_qrels, level.model, e)?);
        rb.push(recall_at_effort(b[topic], doc_qrels, level.model, e)?);
    }
    Ok((ra, rb))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub lambda: f64,
    pub a: f64,
    pub result: ComparisonResult,
}

/// Compares B against A at `E_lambda = a * R` for every lambda in the grid.
pub fn lambda_sweep(
    runs_a: &[RunLog],
    runs_b: &[RunLog],
    doc_qrels: &QrelsMap,
    a: f64,
    grid: &[f64],
) -> Result<Vec<SweepPoint>> {
    grid.iter()
        .map(|&lambda| {
            let level = EffortLevel::new(a, 0.0, EffortModel::new(lambda)?);
            let (ra, rb) = paired_recalls(runs_a, runs_b, doc_qrels, level)?;
            Ok(SweepPoint {
                lambda,
                a,
                result: compare_strategies(&ra, &rb)?,
            })
        })
        .collect()
}

/// `lambda,a,mean_diff,ci_low,ci_high,p`
pub fn write_comparisons_csv<W: Write>(points: &[SweepPoint], mut w: W) -> std::io::Result<()> {
    writeln!(w, "lambda,a,mean_diff,ci_low,ci_high,p")?;
    for p in points {
        let r = &p.result;
        writeln!(
            w,
            "{},{},{:.6},{:.6},{:.6},{:.6}",
            p.lambda, p.a, r.mean_diff, r.ci_low, r.ci_high, r.p_value
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Label;
    use crate::corpus::Granularity;
    use crate::engine::{AssessmentRecord, StrategyCode};

    #[test]
    fn identical_vectors() {
        let r = compare_strategies(&[0.1, 0.5, 0.9], &[0.1, 0.5, 0.9]).unwrap();
        assert_eq!((r.mean_diff, r.p_value), (0.0, 1.0));
        assert!(r.degenerate);
    }

    #[test]
    fn constant_shift_collapses() {
        let r = compare_strategies(&[0.0; 4], &[0.1; 4]).unwrap();
        assert!(r.degenerate);
        assert_eq!((r.ci_low, r.ci_high), (r.mean_diff, r.mean_diff));
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn known_values() {
        // d = [1, 2, 3]: mean 2, sd 1, se 1/sqrt 3, t = 2 sqrt 3, df 2
        let r = compare_strategies(&[0.0, 0.0, 0.0], &[1.0, 2.0, 3.0]).unwrap();
        let half = 4.302652729696142 / 3f64.sqrt();
        assert!((r.ci_low - (2.0 - half)).abs() < 1e-9);
        assert!((r.ci_high - (2.0 + half)).abs() < 1e-9);
        assert!((r.p_value - 0.07417990022744853).abs() < 1e-9);
        assert!(!r.significant());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            compare_strategies(&[1.0], &[2.0]),
            Err(Error::TooFewSamples(1))
        ));
        assert!(matches!(
            compare_strategies(&[1.0, 2.0], &[2.0]),
            Err(Error::UnpairedSamples(2, 1))
        ));
    }

    fn log(topic: &str, strategy: StrategyCode, docs: &[(&str, usize)]) -> RunLog {
        let mut log = RunLog::new(topic, strategy);
        let (mut j, mut s) = (0, 0);
        for (i, &(doc, read)) in docs.iter().enumerate() {
            j += 1;
            s += read;
            log.records.push(AssessmentRecord {
                ordinal: i + 1,
                batch_index: 1,
                doc_id: doc.into(),
                presented_item: doc.into(),
                label: Label::NonRelevant,
                sentences_read: read,
                cum_judge: j,
                cum_sent: s,
            });
        }
        log
    }

    #[test]
    fn sweep_endpoints_and_orphans() {
        let mut q = QrelsMap::new(Granularity::Document);
        for (t, d) in [("1", "a"), ("1", "b"), ("2", "x"), ("3", "y")] {
            q.insert(t, d, true);
        }
        let ddd = vec![
            log("1", StrategyCode::DDD, &[("a", 5), ("n", 5), ("b", 5), ("m", 5)]),
            log("2", StrategyCode::DDD, &[("n", 3), ("x", 3)]),
            log("3", StrategyCode::DDD, &[("y", 2), ("n", 9)]),
        ];
        let sdd = vec![
            log("1", StrategyCode::SDD, &[("a", 1), ("b", 1), ("n", 1)]),
            log("2", StrategyCode::SDD, &[("x", 1), ("n", 1)]),
            log("3", StrategyCode::SDD, &[("n", 1), ("y", 1)]),
        ];
        let grid = super::super::parse_lambda_grid("0:1:0.05").unwrap();
        let sweep = lambda_sweep(&ddd, &sdd, &q, 2.0, &grid).unwrap();
        assert_eq!(sweep.len(), 21);
        for (model, point) in [(EffortModel::JUDGE, &sweep[0]), (EffortModel::SENT, &sweep[20])] {
            let (ra, rb) = paired_recalls(&ddd, &sdd, &q, EffortLevel::new(2.0, 0.0, model)).unwrap();
            assert_eq!(point.result, compare_strategies(&ra, &rb).unwrap());
        }
        // sentence feedback reads one sentence per judgment
        for p in &sweep {
            assert_eq!(
                p.result.pairs.iter().map(|x| x.1).collect::<Vec<_>>(),
                sweep[0].result.pairs.iter().map(|x| x.1).collect::<Vec<_>>()
            );
        }
        let err = lambda_sweep(&ddd[..2], &sdd, &q, 2.0, &grid).unwrap_err();
        assert!(matches!(err, Error::OrphanTopics(t) if t == vec!["3".to_string()]));

        let mut buf = Vec::new();
        write_comparisons_csv(&sweep, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 22);
        assert!(text.starts_with("lambda,a,mean_diff,ci_low,ci_high,p\n0,2,"));
    }
}
