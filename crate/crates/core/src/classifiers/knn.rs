//! k-nearest-neighbour voting on Euclidean distance.  Ties in distance are
//! broken by training index, so scoring is deterministic.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnnParams {
    #[serde(default = "default_k")]
    pub k: usize,
}

fn default_k() -> usize {
    5
}

impl Default for KnnParams {
    fn default() -> Self {
        Self { k: default_k() }
    }
}

/// The "model" is the training set itself plus the effective k (capped at
/// the number of stored samples).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

pub(crate) fn train_knn(features: &[Vec<f64>], labels: &[u8], params: &KnnParams) -> KnnModel {
    KnnModel {
        k: params.k.max(1).min(features.len()),
        features: features.to_vec(),
        labels: labels.to_vec(),
    }
}

impl KnnModel {
    /// Fraction of the k nearest neighbours labelled 1.
    pub fn score(&self, x: &[f64]) -> f64 {
        let mut dists: Vec<(f64, usize)> = self
            .features
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let d2: f64 = f.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
                (d2, i)
            })
            .collect();
        dists.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        let hits = dists[..self.k]
            .iter()
            .filter(|&&(_, i)| self.labels[i] == 1)
            .count();
        hits as f64 / self.k as f64
    }
}
