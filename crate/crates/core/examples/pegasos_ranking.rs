//! Trains the logistic ranker on a toy relevant/non-relevant split and ranks
//! unseen items with it.
//!
//!     cargo run --release --example pegasos_ranking

use calsim::classifier::{train, Label, LabeledExample, TrainParams};
use calsim::features::SparseVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn item(rng: &mut ChaCha8Rng, topical: bool) -> SparseVector {
    let mut pairs: Vec<(u32, f64)> = (0..8)
        .map(|_| (rng.random_range(10..200), rng.random_range(0.1..1.0)))
        .collect();
    if topical {
        pairs.push((rng.random_range(0..10), 1.5));
    }
    SparseVector::from_pairs(pairs).normalized()
}

fn main() -> calsim::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pos: Vec<SparseVector> = (0..20).map(|_| item(&mut rng, true)).collect();
    let neg: Vec<SparseVector> = (0..100).map(|_| item(&mut rng, false)).collect();
    let examples: Vec<LabeledExample<'_>> = pos
        .iter()
        .map(|v| LabeledExample::new(v, Label::Relevant))
        .chain(neg.iter().map(|v| LabeledExample::new(v, Label::NonRelevant)))
        .collect();
    let params = TrainParams::default();
    let model = train(&examples, &params)?;
    println!("|w| = {:.3} (bound {:.3})", model.norm(), params.radius());

    let mut unseen: Vec<(bool, f64)> = (0..30)
        .map(|k| {
            let topical = k % 5 == 0;
            (topical, model.score(&item(&mut rng, topical)))
        })
        .collect();
    unseen.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (rank, (topical, score)) in unseen.iter().enumerate().take(10) {
        println!("{:>2}. {score:+.3} {}", rank + 1, if *topical { "topical" } else { "" });
    }
    Ok(())
}
