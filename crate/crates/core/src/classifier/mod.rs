//! Linear relevance scorer: logistic loss on positive-minus-negative
//! difference vectors, optimized with Pegasos steps.
//!
//! Each step draws one positive and one negative example uniformly (with
//! replacement), takes `d = x_pos - x_neg` and applies
//!
//! ```text
//! g = -sigmoid(-w.d) * d
//! w <- (1 - 1/t) * w - (1 / (lambda * t)) * g
//! w <- w * min(1, (1/sqrt(lambda)) / |w|)
//! ```
//!
//! Optimizing pairwise order this way targets ROC area directly; only the
//! ranking induced by `w.x` is used downstream, so scores are not
//! calibrated probabilities.

mod model_io;
mod pegasos;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::features::SparseVector;
use crate::{Error, Result};

pub use pegasos::PegasosTrainer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    Relevant,
    NonRelevant,
}

impl Label {
    pub fn from_relevant(relevant: bool) -> Self {
        if relevant {
            Label::Relevant
        } else {
            Label::NonRelevant
        }
    }

    pub fn is_relevant(self) -> bool {
        self == Label::Relevant
    }

    /// +1 / -1.
    pub fn sign(self) -> f64 {
        if self.is_relevant() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn flipped(self) -> Self {
        Self::from_relevant(!self.is_relevant())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LabeledExample<'a> {
    pub vector: &'a SparseVector,
    pub label: Label,
}

impl<'a> LabeledExample<'a> {
    pub fn new(vector: &'a SparseVector, label: Label) -> Self {
        Self { vector, label }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainParams {
    pub lambda: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for TrainParams {
    fn default() -> Self {
        Self {
            lambda: 1e-4,
            iterations: 200_000,
            seed: 0,
        }
    }
}

impl TrainParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iterations must be >= 1".into()));
        }
        Ok(())
    }

    /// Radius of the ball the weights are projected onto.
    pub fn radius(&self) -> f64 {
        1.0 / self.lambda.sqrt()
    }
}

/// Trained weights, dense over term ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub params: TrainParams,
    weights: Vec<f64>,
}

impl Model {
    pub fn zero(params: TrainParams, dim: usize) -> Self {
        Self {
            params,
            weights: vec![0.0; dim],
        }
    }

    pub fn from_weights(params: TrainParams, weights: Vec<f64>) -> Self {
        Self { params, weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// `w.x`.
    pub fn score(&self, x: &SparseVector) -> f64 {
        x.dot_dense(&self.weights)
    }

    /// Scores in input order.
    pub fn score_all<'v, K, I>(&self, items: I) -> Vec<(K, f64)>
    where
        I: IntoIterator<Item = (K, &'v SparseVector)>,
    {
        items.into_iter().map(|(k, x)| (k, self.score(x))).collect()
    }

    /// Parallel form of [`Model::score_all`] over a slice of vectors.
    pub fn par_score_all(&self, vectors: &[SparseVector]) -> Vec<f64> {
        vectors.par_iter().map(|x| self.score(x)).collect()
    }
}

/// Trains a model on the given examples. Needs at least one example of each
/// label; the result is deterministic for a fixed example order and seed.
pub fn train(examples: &[LabeledExample<'_>], params: &TrainParams) -> Result<Model> {
    train_observed(examples, params, |_, _| {})
}

/// Like [`train`], calling `observe(step, trainer)` after every update.
pub fn train_observed<F>(examples: &[LabeledExample<'_>], params: &TrainParams, mut observe: F) -> Result<Model>
where
    F: FnMut(usize, &PegasosTrainer),
{
    params.validate()?;
    let (pos, neg): (Vec<&LabeledExample<'_>>, Vec<_>) = examples.iter().partition(|e| e.label.is_relevant());
    if pos.is_empty() {
        return Err(Error::MissingClass("relevant"));
    }
    if neg.is_empty() {
        return Err(Error::MissingClass("non-relevant"));
    }
    let pos: Vec<&SparseVector> = pos.into_iter().map(|e| e.vector).collect();
    let neg: Vec<&SparseVector> = neg.into_iter().map(|e| e.vector).collect();
    let dim = examples
        .iter()
        .filter_map(|e| e.vector.max_id())
        .max()
        .map_or(0, |m| m as usize + 1);

    let mut trainer = PegasosTrainer::new(dim, *params);
    trainer.run(&pos, &neg, |step, t| observe(step, t));
    Ok(trainer.into_model())
}

/// `ln(1 + exp(-margin))`, computed without overflow.
pub fn logistic_loss(margin: f64) -> f64 {
    if margin > 0.0 {
        (-margin).exp().ln_1p()
    } else {
        -margin + margin.exp().ln_1p()
    }
}

/// `1 / (1 + exp(-z))`.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Gradient of `logistic_loss(w.d)` with respect to `w`: `-sigmoid(-w.d) d`.
pub fn logistic_loss_gradient(weights: &[f64], d: &SparseVector) -> SparseVector {
    let coef = -sigmoid(-d.dot_dense(weights));
    SparseVector::from_sorted(d.iter().map(|(id, v)| (id, coef * v)).collect())
}

pub use model_io::{read_model_tsv, write_model_tsv};
