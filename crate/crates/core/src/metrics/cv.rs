//! Repeated-holdout (Monte Carlo) and k-fold cross-validation.
//!
//! Per-split seeds are drawn up front from the master seed, so split `i`
//! is reproducible independently of the others, and rerunning with the same
//! seed replays the identical sequence of partitions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{train, Dataset, ModelError, ModelSpec};
use crate::split::{stratified_holdout, stratified_k_folds};

#[derive(Debug, Error)]
pub enum CvError {
    #[error("invalid cross-validation config: {0}")]
    Config(String),
    #[error("split {split} is degenerate: {reason}")]
    DegenerateSplit { split: usize, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Accuracy distribution over resampled train/test partitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    /// Either `"monte_carlo"` or `"k_fold"`.
    pub mode: String,
    pub seed: u64,
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
    /// Degenerate conditions encountered, e.g. an undefined spread when
    /// only one split was requested.
    pub flags: Vec<String>,
}

fn summarize(mode: &str, seed: u64, accuracies: Vec<f64>) -> CvReport {
    let n = accuracies.len();
    let mean = accuracies.iter().sum::<f64>() / n as f64;
    let mut flags = Vec::new();
    let std_dev = if n < 2 {
        flags.push("std_dev_undefined_for_single_split".to_string());
        0.0
    } else {
        let ss: f64 = accuracies.iter().map(|a| (a - mean) * (a - mean)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    CvReport {
        mode: mode.to_string(),
        seed,
        accuracies,
        mean,
        std_dev,
        flags,
    }
}

fn subset(data: &Dataset, indices: &[usize]) -> Result<Dataset, ModelError> {
    let features = indices.iter().map(|&i| data.features()[i].clone()).collect();
    let labels = indices.iter().map(|&i| data.labels()[i]).collect();
    Dataset::new(features, labels)
}

fn split_accuracy(
    spec: &ModelSpec,
    data: &Dataset,
    train_idx: &[usize],
    test_idx: &[usize],
    split: usize,
) -> Result<f64, CvError> {
    if test_idx.is_empty() {
        return Err(CvError::DegenerateSplit {
            split,
            reason: "empty test part".into(),
        });
    }
    let train_labels: Vec<u8> = train_idx.iter().map(|&i| data.labels()[i]).collect();
    let positives = train_labels.iter().filter(|&&y| y == 1).count();
    if train_idx.is_empty() || positives == 0 || positives == train_idx.len() {
        return Err(CvError::DegenerateSplit {
            split,
            reason: "training part lacks one of the classes".into(),
        });
    }
    let train_data = subset(data, train_idx)?;
    let model = train(spec, &train_data)?;
    let mut hits = 0usize;
    for &i in test_idx {
        if model.predict(&data.features()[i])? == data.labels()[i] {
            hits += 1;
        }
    }
    Ok(hits as f64 / test_idx.len() as f64)
}

/// Repeated stratified holdout: `n_splits` independent draws each reserving
/// `test_fraction` of every class for evaluation.
pub fn monte_carlo_cv(
    spec: &ModelSpec,
    data: &Dataset,
    n_splits: usize,
    test_fraction: f64,
    seed: u64,
) -> Result<CvReport, CvError> {
    if n_splits == 0 {
        return Err(CvError::Config("n_splits must be at least 1".into()));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(CvError::Config(format!(
            "test_fraction must lie strictly between 0 and 1, got {test_fraction}"
        )));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let split_seeds: Vec<u64> = (0..n_splits).map(|_| master.gen()).collect();

    let mut accuracies = Vec::with_capacity(n_splits);
    for (i, &split_seed) in split_seeds.iter().enumerate() {
        let (train_idx, test_idx) = stratified_holdout(data.labels(), test_fraction, split_seed);
        accuracies.push(split_accuracy(spec, data, &train_idx, &test_idx, i)?);
    }
    Ok(summarize("monte_carlo", seed, accuracies))
}

/// Stratified k-fold: each fold serves as the test part exactly once.
pub fn k_fold_cv(
    spec: &ModelSpec,
    data: &Dataset,
    k: usize,
    seed: u64,
) -> Result<CvReport, CvError> {
    if k < 2 {
        return Err(CvError::Config("k must be at least 2".into()));
    }
    let folds = stratified_k_folds(data.labels(), k, seed);
    let mut accuracies = Vec::with_capacity(k);
    for (i, test_idx) in folds.iter().enumerate() {
        let train_idx: Vec<usize> = folds
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, f)| f.iter().copied())
            .collect();
        accuracies.push(split_accuracy(spec, data, &train_idx, test_idx, i)?);
    }
    Ok(summarize("k_fold", seed, accuracies))
}
