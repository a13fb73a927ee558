//! Binary classifiers behind one train/score/predict interface.
//!
//! Five families are available: an RBF-kernel SVM, k-nearest neighbours,
//! a Gini decision tree, a random forest, and gradient-boosted trees.  SVM
//! and boosting produce signed scores (positive ⇒ class 1); the neighbour-
//! and tree-based models produce class-1 fractions in `[0, 1]` (strictly
//! above one half ⇒ class 1, ties to class 0).  All training is
//! deterministic: any randomness is driven by seeds in the model spec.

mod forest;
mod gboost;
mod knn;
mod svm;
mod tree;

pub use forest::{FeatureSubsample, ForestModel, ForestParams};
pub use gboost::{GboostModel, GboostParams};
pub use knn::{KnnModel, KnnParams};
pub use svm::{SvmModel, SvmParams};
pub use tree::{Node, Tree};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid training data: {0}")]
    Data(String),
    #[error("degenerate training data: {0}")]
    DegenerateData(String),
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// A labelled feature table; labels are 0 or 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    features: Vec<Vec<f64>>,
    labels: Vec<u8>,
}

impl Dataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self, ModelError> {
        if features.is_empty() {
            return Err(ModelError::Data("no samples".into()));
        }
        if features.len() != labels.len() {
            return Err(ModelError::Data(format!(
                "{} feature rows but {} labels",
                features.len(),
                labels.len()
            )));
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(ModelError::Data("zero-width feature rows".into()));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != dim {
                return Err(ModelError::Data(format!(
                    "row {i} has {} values, expected {dim}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(ModelError::Data(format!("row {i} contains a non-finite value")));
            }
        }
        if let Some(bad) = labels.iter().find(|&&y| y > 1) {
            return Err(ModelError::Data(format!("label {bad} is not 0 or 1")));
        }
        Ok(Self { features, labels })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features[0].len()
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    fn positives(&self) -> usize {
        self.labels.iter().filter(|&&y| y == 1).count()
    }
}

/// Which classifier to train, with its hyperparameters.  The JSON form is
/// tagged by `kind`, e.g. `{"kind": "svm", "c": 2.0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Svm(SvmParams),
    Knn(KnnParams),
    Dtree(TreeParams),
    Rforest(ForestParams),
    Gboost(GboostParams),
}

impl ModelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::Svm(_) => "svm",
            ModelSpec::Knn(_) => "knn",
            ModelSpec::Dtree(_) => "dtree",
            ModelSpec::Rforest(_) => "rforest",
            ModelSpec::Gboost(_) => "gboost",
        }
    }

    /// One spec of every kind, all at default hyperparameters.
    pub fn all_defaults() -> Vec<ModelSpec> {
        vec![
            ModelSpec::Svm(SvmParams::default()),
            ModelSpec::Knn(KnnParams::default()),
            ModelSpec::Dtree(TreeParams::default()),
            ModelSpec::Rforest(ForestParams::default()),
            ModelSpec::Gboost(GboostParams::default()),
        ]
    }
}

/// Hyperparameters for a single decision tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    #[serde(default = "default_tree_depth")]
    pub max_depth: usize,
    #[serde(default = "default_min_samples_split")]
    pub min_samples_split: usize,
}

fn default_tree_depth() -> usize {
    6
}
fn default_min_samples_split() -> usize {
    2
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: default_tree_depth(),
            min_samples_split: default_min_samples_split(),
        }
    }
}

/// A fitted classifier plus the feature width it expects.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub n_features: usize,
    #[serde(flatten)]
    pub inner: ModelInner,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "lowercase")]
pub enum ModelInner {
    Svm(SvmModel),
    Knn(KnnModel),
    Dtree(Tree),
    Rforest(ForestModel),
    Gboost(GboostModel),
}

impl TrainedModel {
    pub fn kind(&self) -> &'static str {
        match self.inner {
            ModelInner::Svm(_) => "svm",
            ModelInner::Knn(_) => "knn",
            ModelInner::Dtree(_) => "dtree",
            ModelInner::Rforest(_) => "rforest",
            ModelInner::Gboost(_) => "gboost",
        }
    }

    /// Raw score: a signed margin/logit for SVM and boosting, a class-1
    /// fraction for the neighbour and tree models.
    pub fn decision_score(&self, x: &[f64]) -> Result<f64, ModelError> {
        if x.len() != self.n_features {
            return Err(ModelError::Dimension {
                expected: self.n_features,
                got: x.len(),
            });
        }
        Ok(match &self.inner {
            ModelInner::Svm(m) => m.decision(x),
            ModelInner::Knn(m) => m.score(x),
            ModelInner::Dtree(t) => t.eval(x),
            ModelInner::Rforest(m) => m.score(x),
            ModelInner::Gboost(m) => m.decision(x),
        })
    }

    /// Hard 0/1 label.  Signed scores threshold at zero (inclusive); the
    /// fraction scores need a strict majority, so a tied vote yields 0.
    pub fn predict(&self, x: &[f64]) -> Result<u8, ModelError> {
        let score = self.decision_score(x)?;
        let label = match self.inner {
            ModelInner::Svm(_) | ModelInner::Gboost(_) => score >= 0.0,
            ModelInner::Knn(_) | ModelInner::Dtree(_) | ModelInner::Rforest(_) => score > 0.5,
        };
        Ok(label as u8)
    }
}

/// Trains the classifier described by `spec` on `data`.
///
/// SVM and gradient boosting refuse single-class data (their objectives are
/// undefined or unbounded there); the neighbour and tree models accept it
/// and degenerate to constant predictors.
pub fn train(spec: &ModelSpec, data: &Dataset) -> Result<TrainedModel, ModelError> {
    let positives = data.positives();
    let single_class = positives == 0 || positives == data.len();
    if single_class && matches!(spec, ModelSpec::Svm(_) | ModelSpec::Gboost(_)) {
        return Err(ModelError::DegenerateData(format!(
            "{} training requires both classes, got {} positives in {} samples",
            spec.kind(),
            positives,
            data.len()
        )));
    }

    let inner = match spec {
        ModelSpec::Svm(params) => {
            let y: Vec<f64> = data
                .labels
                .iter()
                .map(|&l| if l == 1 { 1.0 } else { -1.0 })
                .collect();
            ModelInner::Svm(svm::train_svm(&data.features, &y, params))
        }
        ModelSpec::Knn(params) => ModelInner::Knn(knn::train_knn(&data.features, &data.labels, params)),
        ModelSpec::Dtree(params) => {
            let grow = tree::ClassificationParams {
                max_depth: params.max_depth,
                min_samples_split: params.min_samples_split,
            };
            let indices: Vec<usize> = (0..data.len()).collect();
            let mut all_features = |dim: usize| (0..dim).collect::<Vec<_>>();
            ModelInner::Dtree(tree::grow_classification(
                &data.features,
                &data.labels,
                &indices,
                &grow,
                &mut all_features,
            ))
        }
        ModelSpec::Rforest(params) => {
            ModelInner::Rforest(forest::train_forest(&data.features, &data.labels, params))
        }
        ModelSpec::Gboost(params) => {
            ModelInner::Gboost(gboost::train_gboost(&data.features, &data.labels, params))
        }
    };
    Ok(TrainedModel {
        n_features: data.dim(),
        inner,
    })
}
