//! Feature fusion: concatenation of the classical (PCA) and quantum
//! (expectation-value) branches plus train-set standardisation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of features contributed by each branch.
pub const BRANCH_WIDTH: usize = 8;
/// Total width of a fused vector.
pub const FUSED_WIDTH: usize = 2 * BRANCH_WIDTH;

/// Errors raised by fusion and standardisation.
#[derive(Debug, Error, PartialEq)]
pub enum FusionError {
    /// An input vector has the wrong length.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    /// Not enough data to fit.
    #[error("invalid data: {0}")]
    Data(String),
}

/// A fused feature vector: positions `0..8` hold the PCA features in
/// component order, positions `8..16` the quantum features in observable
/// order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusedVector(pub [f64; FUSED_WIDTH]);

impl FusedVector {
    /// The classical half.
    pub fn pca_part(&self) -> &[f64] {
        &self.0[..BRANCH_WIDTH]
    }

    /// The quantum half.
    pub fn quantum_part(&self) -> &[f64] {
        &self.0[BRANCH_WIDTH..]
    }

    /// The full 16-feature slice.
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0.to_vec()
    }
}

/// Concatenates an 8-feature PCA vector with an 8-feature quantum vector.
pub fn fuse(pca_features: &[f64], quantum_features: &[f64]) -> Result<FusedVector, FusionError> {
    if pca_features.len() != BRANCH_WIDTH {
        return Err(FusionError::Dimension {
            expected: BRANCH_WIDTH,
            got: pca_features.len(),
        });
    }
    if quantum_features.len() != BRANCH_WIDTH {
        return Err(FusionError::Dimension {
            expected: BRANCH_WIDTH,
            got: quantum_features.len(),
        });
    }
    let mut out = [0.0; FUSED_WIDTH];
    out[..BRANCH_WIDTH].copy_from_slice(pca_features);
    out[BRANCH_WIDTH..].copy_from_slice(quantum_features);
    Ok(FusedVector(out))
}

/// Per-dimension standardisation fitted on the training split only.
///
/// Dimensions with zero variance are flagged (std stored as 0) and transform
/// to exactly 0 instead of dividing by zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fits means and population standard deviations on `rows` (one sample
    /// per row; at least two samples of equal, non-zero width).
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self, FusionError> {
        let dim = rows
            .first()
            .ok_or_else(|| FusionError::Data("empty training data".into()))?
            .len();
        if dim == 0 {
            return Err(FusionError::Data("zero-width samples".into()));
        }
        if rows.len() < 2 {
            return Err(FusionError::Data(format!(
                "need at least 2 samples to standardise, got {}",
                rows.len()
            )));
        }
        for row in rows {
            if row.len() != dim {
                return Err(FusionError::Dimension {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        let n = rows.len() as f64;
        let mut means = vec![0.0; dim];
        for row in rows {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut stds = vec![0.0; dim];
        for row in rows {
            for ((s, v), m) in stds.iter_mut().zip(row).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        for s in &mut stds {
            *s = (*s / n).sqrt();
        }
        Ok(Self { means, stds })
    }

    /// Transforms one sample: `(x − mean) / std`, with zero-variance
    /// dimensions mapped to 0.
    pub fn apply(&self, sample: &[f64]) -> Result<Vec<f64>, FusionError> {
        if sample.len() != self.means.len() {
            return Err(FusionError::Dimension {
                expected: self.means.len(),
                got: sample.len(),
            });
        }
        Ok(sample
            .iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(v, (m, s))| if *s > 0.0 { (v - m) / s } else { 0.0 })
            .collect())
    }

    /// Indices of zero-variance (degenerate) dimensions.
    pub fn degenerate_dims(&self) -> Vec<usize> {
        self.stds
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}
