use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sigmoid, Model, TrainParams};
use crate::features::SparseVector;

// Fold the lazy scale into the weights before it underflows.
const MIN_SCALE: f64 = 1e-9;
// Recompute the tracked squared norm from scratch this often.
const RESYNC_EVERY: usize = 4096;

/// Pegasos state with weights stored as `scale * v`, so shrinking is O(1)
/// and each update touches only the nonzeros of the sampled pair.
#[derive(Debug, Clone)]
pub struct PegasosTrainer {
    params: TrainParams,
    v: Vec<f64>,
    scale: f64,
    squared_norm: f64,
    step: usize,
    rng: ChaCha8Rng,
}

impl PegasosTrainer {
    pub fn new(dim: usize, params: TrainParams) -> Self {
        Self {
            params,
            v: vec![0.0; dim],
            scale: 1.0,
            squared_norm: 0.0,
            step: 0,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
        }
    }

    /// Number of updates applied so far.
    pub fn steps(&self) -> usize {
        self.step
    }

    pub fn weight(&self, id: u32) -> f64 {
        self.v.get(id as usize).map_or(0.0, |v| v * self.scale)
    }

    /// Exact L2 norm of the current weights (O(dim)).
    pub fn norm(&self) -> f64 {
        self.scale.abs() * self.v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn score(&self, x: &SparseVector) -> f64 {
        self.scale * x.dot_dense(&self.v)
    }

    pub(super) fn run<F>(&mut self, pos: &[&SparseVector], neg: &[&SparseVector], mut observe: F)
    where
        F: FnMut(usize, &PegasosTrainer),
    {
        let pos_sq: Vec<f64> = pos.iter().map(|x| x.squared_norm()).collect();
        let neg_sq: Vec<f64> = neg.iter().map(|x| x.squared_norm()).collect();
        for _ in 0..self.params.iterations {
            let i = self.rng.random_range(0..pos.len());
            let j = self.rng.random_range(0..neg.len());
            let cross = pos[i].dot(neg[j]);
            self.update(pos[i], neg[j], pos_sq[i] + neg_sq[j] - 2.0 * cross);
            observe(self.step, self);
        }
    }

    /// One step on the pair `(a, b)`, where `d_sq = |a - b|^2`.
    fn update(&mut self, a: &SparseVector, b: &SparseVector, d_sq: f64) {
        self.step += 1;
        let t = self.step as f64;
        let lambda = self.params.lambda;
        let eta = 1.0 / (lambda * t);

        let margin = self.score(a) - self.score(b);
        let coef = eta * sigmoid(-margin);

        // w <- (1 - 1/t) w
        let shrink = 1.0 - 1.0 / t;
        if shrink <= 0.0 {
            self.v.iter_mut().for_each(|x| *x = 0.0);
            self.scale = 1.0;
            self.squared_norm = 0.0;
        } else {
            self.scale *= shrink;
            self.squared_norm *= shrink * shrink;
        }

        // w <- w + coef d
        if coef != 0.0 {
            let wd = shrink.max(0.0) * margin;
            self.squared_norm += 2.0 * coef * wd + coef * coef * d_sq.max(0.0);
            let c = coef / self.scale;
            for (id, x) in a.iter() {
                self.v[id as usize] += c * x;
            }
            for (id, x) in b.iter() {
                self.v[id as usize] -= c * x;
            }
        }

        if self.step.is_multiple_of(RESYNC_EVERY) {
            self.squared_norm = self.norm().powi(2);
        }
        self.squared_norm = self.squared_norm.max(0.0);

        let radius_sq = 1.0 / lambda;
        if self.squared_norm > radius_sq {
            self.scale *= (radius_sq / self.squared_norm).sqrt();
            self.squared_norm = radius_sq;
        }

        if self.scale.abs() < MIN_SCALE {
            let s = self.scale;
            self.v.iter_mut().for_each(|x| *x *= s);
            self.scale = 1.0;
        }
    }

    pub fn into_model(self) -> Model {
        let scale = self.scale;
        Model::from_weights(self.params, self.v.into_iter().map(|x| x * scale).collect())
    }
}
