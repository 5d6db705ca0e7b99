//! Scores two hand-written run logs: recall at fixed effort under several
//! effort models, and a paired t-test over topics.
//!
//!     cargo run --example effort_eval

use calsim::classifier::Label;
use calsim::corpus::{Granularity, QrelsMap};
use calsim::engine::{AssessmentRecord, RunLog, StrategyCode};
use calsim::eval::{compare_strategies, paired_recalls, recall_at_effort, EffortLevel, EffortModel};

/// A log judging `docs` in order, reading `read[k]` sentences for the k-th.
fn log(topic: &str, strategy: StrategyCode, docs: &[&str], read: &[usize]) -> RunLog {
    let mut log = RunLog::new(topic, strategy);
    let mut sent = 0;
    for (k, (doc, &r)) in docs.iter().zip(read).enumerate() {
        sent += r;
        log.records.push(AssessmentRecord {
            ordinal: k + 1,
            batch_index: 1,
            doc_id: doc.to_string(),
            presented_item: doc.to_string(),
            label: Label::NonRelevant,
            sentences_read: r,
            cum_judge: k + 1,
            cum_sent: sent,
        });
    }
    log
}

fn main() -> calsim::Result<()> {
    let mut qrels = QrelsMap::new(Granularity::Document);
    for topic in ["t1", "t2", "t3"] {
        for (doc, rel) in [("d1", true), ("d2", true), ("d3", false), ("d4", true), ("d5", false)] {
            qrels.insert(topic, doc, rel);
        }
    }
    let order = ["d1", "d3", "d2", "d5", "d4"];
    let ddd: Vec<RunLog> = ["t1", "t2", "t3"]
        .iter()
        .map(|t| log(t, StrategyCode::DDD, &order, &[2, 6, 1, 7, 3]))
        .collect();
    let sdd: Vec<RunLog> = ["t1", "t2", "t3"]
        .iter()
        .map(|t| log(t, StrategyCode::SDD, &order, &[1; 5]))
        .collect();

    for model in [EffortModel::JUDGE, EffortModel::HALF, EffortModel::SENT] {
        let r = recall_at_effort(&ddd[0], &qrels, model, 3.0)?;
        println!("ddd t1 recall at E = 3 ({model}): {r:.3}");
    }
    let level = EffortLevel::new(1.0, 0.0, EffortModel::SENT);
    let (a, b) = paired_recalls(&ddd, &sdd, &qrels, level)?;
    let cmp = compare_strategies(&a, &b)?;
    println!(
        "{level}: sdd - ddd = {:.3}, CI ({:.3}, {:.3}), p {:.3}{}",
        cmp.mean_diff,
        cmp.ci_low,
        cmp.ci_high,
        cmp.p_value,
        if cmp.degenerate { " (identical differences)" } else { "" }
    );
    Ok(())
}
