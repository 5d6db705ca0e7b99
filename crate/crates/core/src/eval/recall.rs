use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Write;

use super::EffortModel;
use crate::corpus::QrelsMap;
use crate::engine::{RunLog, StrategyCode};
use crate::{Error, Result};

fn relevant_set<'q>(qrels: &'q QrelsMap, topic: &str) -> Result<HashSet<&'q str>> {
    let set: HashSet<&str> = qrels.judgments(topic).filter(|(_, r)| *r).map(|(id, _)| id).collect();
    if set.is_empty() {
        return Err(Error::NoRelevant(topic.to_string()));
    }
    Ok(set)
}

/// Fraction of the topic's relevant documents output within `effort`.
///
/// The log is cut at the longest prefix whose cumulative effort is at most
/// `effort`; a judgment whose cost does not fully fit is excluded.
pub fn recall_at_effort(log: &RunLog, doc_qrels: &QrelsMap, model: EffortModel, effort: f64) -> Result<f64> {
    let relevant = relevant_set(doc_qrels, &log.topic_id)?;
    let mut found = HashSet::new();
    for r in &log.records {
        if model.effort(r.cum_judge, r.cum_sent) > effort {
            break;
        }
        if relevant.contains(r.doc_id.as_str()) {
            found.insert(r.doc_id.as_str());
        }
    }
    Ok(found.len() as f64 / relevant.len() as f64)
}

/// Recall after each judgment, against cumulative effort.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GainCurve {
    pub points: Vec<(f64, f64)>,
}

impl GainCurve {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "effort,recall")?;
        for (e, r) in &self.points {
            writeln!(w, "{e},{r}")?;
        }
        Ok(())
    }
}

pub fn gain_curve(log: &RunLog, doc_qrels: &QrelsMap, model: EffortModel) -> Result<GainCurve> {
    let relevant = relevant_set(doc_qrels, &log.topic_id)?;
    let r = relevant.len() as f64;
    let mut found = HashSet::new();
    let points = log
        .records
        .iter()
        .map(|rec| {
            if relevant.contains(rec.doc_id.as_str()) {
                found.insert(rec.doc_id.as_str());
            }
            (model.effort(rec.cum_judge, rec.cum_sent), found.len() as f64 / r)
        })
        .collect();
    Ok(GainCurve { points })
}

/// Effort level `a*R + b` measured under an effort model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortLevel {
    pub a: f64,
    pub b: f64,
    pub model: EffortModel,
}

impl EffortLevel {
    pub fn new(a: f64, b: f64, model: EffortModel) -> Self {
        Self { a, b, model }
    }

    pub fn effort(&self, relevant: usize) -> f64 {
        self.a * relevant as f64 + self.b
    }

    /// The standard grid: a in {1, 2, 4}, b in {0, 100, 1000}, under
    /// judgments, the half blend and sentences.
    pub fn standard() -> Vec<EffortLevel> {
        let mut out = Vec::new();
        for b in [0.0, 100.0, 1000.0] {
            for a in [1.0, 2.0, 4.0] {
                for model in [EffortModel::JUDGE, EffortModel::HALF, EffortModel::SENT] {
                    out.push(EffortLevel::new(a, b, model));
                }
            }
        }
        out
    }
}

impl fmt::Display for EffortLevel {
    /// `1R_Judge`, `2R+100_0.5`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}R", self.a)?;
        if self.b != 0.0 {
            write!(f, "+{}", self.b)?;
        }
        write!(f, "_{}", self.model)
    }
}

/// Run logs of one dataset, evaluated against its document qrels.
#[derive(Debug, Clone, Copy)]
pub struct DatasetRuns<'a> {
    pub name: &'a str,
    pub doc_qrels: &'a QrelsMap,
    pub logs: &'a [RunLog],
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecallRow {
    /// Dataset name, or `Overall`.
    pub dataset: String,
    pub level: EffortLevel,
    /// Mean recall over topics, one entry per table strategy (`None` when the
    /// strategy has no runs).
    pub mean: Vec<Option<f64>>,
    /// Topic -> recall per strategy.
    pub per_topic: BTreeMap<String, Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecallTable {
    pub strategies: Vec<StrategyCode>,
    pub rows: Vec<RecallRow>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Recall of every run at every effort level, averaged over topics per
/// dataset, plus an `Overall` row per level averaging over all topics of all
/// datasets.
pub fn recall_table(datasets: &[DatasetRuns<'_>], levels: &[EffortLevel]) -> Result<RecallTable> {
    let strategies = StrategyCode::all().to_vec();
    let col = |s: StrategyCode| strategies.iter().position(|&x| x == s).expect("all codes listed");
    let mut rows = Vec::new();
    let mut overall: Vec<RecallRow> = levels
        .iter()
        .map(|&level| RecallRow {
            dataset: "Overall".into(),
            level,
            mean: vec![None; strategies.len()],
            per_topic: BTreeMap::new(),
        })
        .collect();

    for ds in datasets {
        for (li, &level) in levels.iter().enumerate() {
            let mut per_topic: BTreeMap<String, Vec<Option<f64>>> = BTreeMap::new();
            for log in ds.logs {
                let relevant = ds.doc_qrels.relevant_count(&log.topic_id);
                let recall = recall_at_effort(log, ds.doc_qrels, level.model, level.effort(relevant))?;
                per_topic
                    .entry(log.topic_id.clone())
                    .or_insert_with(|| vec![None; strategies.len()])[col(log.strategy)] = Some(recall);
            }
            let means = (0..strategies.len())
                .map(|c| mean(per_topic.values().filter_map(|v| v[c])))
                .collect();
            for (topic, v) in &per_topic {
                overall[li].per_topic.insert(format!("{}/{topic}", ds.name), v.clone());
            }
            rows.push(RecallRow {
                dataset: ds.name.to_string(),
                level,
                mean: means,
                per_topic,
            });
        }
    }
    for row in &mut overall {
        row.mean = (0..strategies.len())
            .map(|c| mean(row.per_topic.values().filter_map(|v| v[c])))
            .collect();
    }
    if !datasets.is_empty() {
        rows.extend(overall);
    }
    Ok(RecallTable { strategies, rows })
}

impl RecallTable {
    fn header<W: Write>(&self, w: &mut W, lead: &str) -> std::io::Result<()> {
        write!(w, "{lead}")?;
        for s in &self.strategies {
            write!(w, ",{s}")?;
        }
        writeln!(w)
    }

    fn cells<W: Write>(w: &mut W, values: &[Option<f64>]) -> std::io::Result<()> {
        for v in values {
            match v {
                Some(x) => write!(w, ",{x:.4}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)
    }

    /// `dataset,effort,<strategy columns>` with mean recall.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        self.header(&mut w, "dataset,effort")?;
        for row in &self.rows {
            write!(w, "{},{}", row.dataset, row.level)?;
            Self::cells(&mut w, &row.mean)?;
        }
        Ok(())
    }

    /// Same layout with one line per topic.
    pub fn write_topics_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        self.header(&mut w, "dataset,topic,effort")?;
        for row in self.rows.iter().filter(|r| r.dataset != "Overall") {
            for (topic, values) in &row.per_topic {
                write!(w, "{},{topic},{}", row.dataset, row.level)?;
                Self::cells(&mut w, values)?;
            }
        }
        Ok(())
    }
}
