//! Random forest: bagged Gini trees with optional per-split feature
//! subsampling.  Per-tree seeds are drawn up front from the forest seed, so
//! tree i is reproducible regardless of how many trees follow it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tree::{grow_classification, ClassificationParams, Tree};

/// How many candidate features each split considers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSubsample {
    /// `max(1, floor(sqrt(d)))` features drawn without replacement per split.
    Sqrt,
    /// Every feature, every split.
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    #[serde(default = "default_n_trees")]
    pub n_trees: usize,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_min_samples_split")]
    pub min_samples_split: usize,
    /// Bootstrap-resample the training set per tree.
    #[serde(default = "default_bootstrap")]
    pub bootstrap: bool,
    #[serde(default = "default_subsample")]
    pub feature_subsample: FeatureSubsample,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_n_trees() -> usize {
    25
}
fn default_max_depth() -> usize {
    8
}
fn default_min_samples_split() -> usize {
    2
}
fn default_bootstrap() -> bool {
    true
}
fn default_subsample() -> FeatureSubsample {
    FeatureSubsample::Sqrt
}
fn default_seed() -> u64 {
    42
}

impl Default for ForestParams {
    fn default() -> Self {
        Self {
            n_trees: default_n_trees(),
            max_depth: default_max_depth(),
            min_samples_split: default_min_samples_split(),
            bootstrap: default_bootstrap(),
            feature_subsample: default_subsample(),
            seed: default_seed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub trees: Vec<Tree>,
}

pub(crate) fn train_forest(
    features: &[Vec<f64>],
    labels: &[u8],
    params: &ForestParams,
) -> ForestModel {
    let n = features.len();
    let mut seed_rng = ChaCha8Rng::seed_from_u64(params.seed);
    let tree_seeds: Vec<u64> = (0..params.n_trees).map(|_| seed_rng.gen()).collect();

    let grow_params = ClassificationParams {
        max_depth: params.max_depth,
        min_samples_split: params.min_samples_split,
    };
    let trees = tree_seeds
        .iter()
        .map(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let indices: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let mut pick = |dim: usize| -> Vec<usize> {
                match params.feature_subsample {
                    FeatureSubsample::All => (0..dim).collect(),
                    FeatureSubsample::Sqrt => {
                        let m = ((dim as f64).sqrt().floor() as usize).max(1);
                        sample_without_replacement(dim, m, &mut rng)
                    }
                }
            };
            grow_classification(features, labels, &indices, &grow_params, &mut pick)
        })
        .collect();
    ForestModel { trees }
}

/// Partial Fisher–Yates draw of `m` indices from `0..dim`, returned in
/// ascending order so downstream scans stay index-ordered.
fn sample_without_replacement(dim: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..dim).collect();
    for i in 0..m {
        let j = rng.gen_range(i..dim);
        pool.swap(i, j);
    }
    let mut picked = pool[..m].to_vec();
    picked.sort_unstable();
    picked
}

impl ForestModel {
    /// Fraction of trees voting class 1 (each tree votes via its leaf
    /// fraction thresholded at 1/2, ties to 0).
    pub fn score(&self, x: &[f64]) -> f64 {
        let votes = self
            .trees
            .iter()
            .filter(|t| t.eval(x) > 0.5)
            .count();
        votes as f64 / self.trees.len() as f64
    }
}
