use std::io::{BufRead, Write};
use std::path::Path;

use super::StrategyCode;
use crate::classifier::Label;
use crate::{Error, Result};

/// One simulated judgment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssessmentRecord {
    /// 1-based position in the run.
    pub ordinal: usize,
    /// 1-based batch number.
    pub batch_index: usize,
    pub doc_id: String,
    /// The document itself or the sentence shown in its place.
    pub presented_item: String,
    pub label: Label,
    pub sentences_read: usize,
    pub cum_judge: usize,
    pub cum_sent: usize,
}

/// Ordered system output of one (topic, strategy) run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLog {
    pub topic_id: String,
    pub strategy: StrategyCode,
    pub records: Vec<AssessmentRecord>,
}

pub const RUNLOG_HEADER: &str =
    "ordinal\tbatch_index\tdoc_id\tpresented_item\tlabel\tsentences_read\tcum_E_judge\tcum_E_sent";

impl RunLog {
    pub fn new(topic_id: impl Into<String>, strategy: StrategyCode) -> Self {
        Self {
            topic_id: topic_id.into(),
            strategy,
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.doc_id.as_str())
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{RUNLOG_HEADER}")?;
        for r in &self.records {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.ordinal,
                r.batch_index,
                r.doc_id,
                r.presented_item,
                u8::from(r.label.is_relevant()),
                r.sentences_read,
                r.cum_judge,
                r.cum_sent
            )?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R, topic_id: &str, strategy: StrategyCode, origin: &Path) -> Result<Self> {
        let mut log = RunLog::new(topic_id, strategy);
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let n = i + 1;
            if n == 1 {
                if line != RUNLOG_HEADER {
                    return Err(Error::parse(origin, 1, "missing run log header"));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 8 {
                return Err(Error::parse(
                    origin,
                    n,
                    format!("expected 8 columns, found {}", cols.len()),
                ));
            }
            let num = |k: usize| {
                cols[k]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(origin, n, format!("bad number `{}`", cols[k])))
            };
            let label = match cols[4] {
                "1" => Label::Relevant,
                "0" => Label::NonRelevant,
                other => return Err(Error::parse(origin, n, format!("bad label `{other}`"))),
            };
            log.records.push(AssessmentRecord {
                ordinal: num(0)?,
                batch_index: num(1)?,
                doc_id: cols[2].to_string(),
                presented_item: cols[3].to_string(),
                label,
                sentences_read: num(5)?,
                cum_judge: num(6)?,
                cum_sent: num(7)?,
            });
        }
        Ok(log)
    }
}
