//! Runs ddd and sdd on a synthetic collection and compares them at an
//! effort of 2R under judgment and sentence effort.
//!
//!     cargo run --release --example synthetic_cal [documents] [topics]

use std::time::Instant;

use calsim::engine::{run_topic, IndexedCollection, RunConfig, RunLog, StrategyCode, TopicJudgments};
use calsim::eval::{compare_strategies, lambda_sweep, paired_recalls, parse_lambda_grid, EffortLevel, EffortModel};
use calsim::synthetic::{generate, SyntheticConfig};

fn main() -> calsim::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("numeric argument"));
    let config = SyntheticConfig {
        documents: args.next().unwrap_or(2000),
        topics: args.next().unwrap_or(10),
        ..SyntheticConfig::default()
    };
    let corpus = generate(&config)?;
    let start = Instant::now();
    let index = IndexedCollection::build(corpus.collection.clone());
    println!(
        "{} documents, {} sentences, {} terms",
        index.collection.num_documents(),
        index.collection.num_sentences(),
        index.vocab.len()
    );

    let mut logs: Vec<Vec<RunLog>> = vec![Vec::new(), Vec::new()];
    for (k, strategy) in [StrategyCode::DDD, StrategyCode::SDD].into_iter().enumerate() {
        for (t, topic) in corpus.topics.iter().enumerate() {
            let judgments = TopicJudgments::new(&topic.topic, &index.collection, &corpus.doc_qrels, &corpus.sent_qrels);
            let budget = 2 * judgments.relevant_docs();
            let log = run_topic(
                &index,
                &judgments,
                &topic.statement,
                RunConfig::new(strategy, t as u64, budget),
            )?;
            logs[k].push(log);
        }
        println!("{strategy}: done after {:.1}s", start.elapsed().as_secs_f64());
    }

    for model in [EffortModel::JUDGE, EffortModel::SENT] {
        let level = EffortLevel::new(2.0, 0.0, model);
        let (ddd, sdd) = paired_recalls(&logs[0], &logs[1], &corpus.doc_qrels, level)?;
        let r = compare_strategies(&ddd, &sdd)?;
        println!(
            "{level}: ddd {:.3} sdd {:.3} diff {:.3} CI ({:.3}, {:.3}) p {:.4}",
            ddd.iter().sum::<f64>() / ddd.len() as f64,
            sdd.iter().sum::<f64>() / sdd.len() as f64,
            r.mean_diff,
            r.ci_low,
            r.ci_high,
            r.p_value
        );
    }
    for p in lambda_sweep(
        &logs[0],
        &logs[1],
        &corpus.doc_qrels,
        2.0,
        &parse_lambda_grid("0:1:0.25")?,
    )? {
        println!("lambda {:.2}: sdd - ddd = {:.3}", p.lambda, p.result.mean_diff);
    }
    Ok(())
}
