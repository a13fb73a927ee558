//! Gradient-boosted trees for binary log loss.  Each round fits a small
//! regression tree to the logistic residuals `y - sigmoid(F)` and applies a
//! clamped Newton leaf step scaled by the learning rate.  The per-round
//! training log loss is recorded alongside the model.

use serde::{Deserialize, Serialize};

use super::tree::{grow_regression, RegressionParams, Tree};

/// Probability clamp used inside the log-loss computation.
const P_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GboostParams {
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_min_samples_split")]
    pub min_samples_split: usize,
}

fn default_rounds() -> usize {
    100
}
fn default_learning_rate() -> f64 {
    0.1
}
fn default_max_depth() -> usize {
    3
}
fn default_min_samples_split() -> usize {
    2
}

impl Default for GboostParams {
    fn default() -> Self {
        Self {
            rounds: default_rounds(),
            learning_rate: default_learning_rate(),
            max_depth: default_max_depth(),
            min_samples_split: default_min_samples_split(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GboostModel {
    /// Log-odds of the base rate, the round-zero prediction.
    pub initial_logit: f64,
    pub learning_rate: f64,
    pub trees: Vec<Tree>,
    /// Training log loss after the initial logit and after each round.
    pub loss_curve: Vec<f64>,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn log_loss(logits: &[f64], labels: &[u8]) -> f64 {
    let n = logits.len() as f64;
    logits
        .iter()
        .zip(labels)
        .map(|(&z, &y)| {
            let p = sigmoid(z).clamp(P_EPS, 1.0 - P_EPS);
            if y == 1 {
                -p.ln()
            } else {
                -(1.0 - p).ln()
            }
        })
        .sum::<f64>()
        / n
}

/// Trains on 0/1 labels; the caller guarantees both classes are present.
pub(crate) fn train_gboost(
    features: &[Vec<f64>],
    labels: &[u8],
    params: &GboostParams,
) -> GboostModel {
    let n = features.len();
    let positives = labels.iter().filter(|&&y| y == 1).count() as f64;
    let p0 = positives / n as f64;
    let initial_logit = (p0 / (1.0 - p0)).ln();

    let mut logits = vec![initial_logit; n];
    let mut loss_curve = vec![log_loss(&logits, labels)];
    let mut trees = Vec::with_capacity(params.rounds);
    let indices: Vec<usize> = (0..n).collect();
    let grow_params = RegressionParams {
        max_depth: params.max_depth,
        min_samples_split: params.min_samples_split,
    };

    let mut gradients = vec![0.0; n];
    let mut hessians = vec![0.0; n];
    for _ in 0..params.rounds {
        for i in 0..n {
            let p = sigmoid(logits[i]);
            gradients[i] = labels[i] as f64 - p;
            hessians[i] = p * (1.0 - p);
        }
        let tree = grow_regression(features, &gradients, &hessians, &indices, &grow_params);
        for i in 0..n {
            logits[i] += params.learning_rate * tree.eval(&features[i]);
        }
        loss_curve.push(log_loss(&logits, labels));
        trees.push(tree);
    }

    GboostModel {
        initial_logit,
        learning_rate: params.learning_rate,
        trees,
        loss_curve,
    }
}

impl GboostModel {
    /// Accumulated logit; positive means class 1.
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut z = self.initial_logit;
        for tree in &self.trees {
            z += self.learning_rate * tree.eval(x);
        }
        z
    }
}
