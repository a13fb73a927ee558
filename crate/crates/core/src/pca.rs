//! Principal component analysis fitted from scratch.
//!
//! The fit eigendecomposes the smaller of the two scatter matrices: the
//! `D×D` feature scatter `XᵀX` when the data is short and wide the other way
//! (`D ≤ N`), or the `N×N` sample Gram matrix `XXᵀ` otherwise, mapping its
//! eigenvectors back through `Xᵀ` — the two routes share their non-zero
//! spectrum, so the choice is purely a cost decision.  Variances are the
//! eigenvalues of the sample covariance (scatter divided by `N-1`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{sym_eigen, Matrix};

/// Errors raised when fitting or applying a PCA model.
#[derive(Debug, Error, PartialEq)]
pub enum PcaError {
    /// Requested more components than the data can support.
    #[error("cannot extract {k} components from {n_samples} samples of dimension {dim} (max {max})")]
    Rank {
        k: usize,
        n_samples: usize,
        dim: usize,
        max: usize,
    },
    /// The data is empty, too small, or malformed.
    #[error("invalid data: {0}")]
    Data(String),
    /// A vector length does not match the model.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    /// The eigensolver failed to converge (practically unreachable).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// A fitted PCA basis: the training mean plus the top-`k` principal axes.
///
/// `components` holds one unit-norm axis per row, mutually orthogonal,
/// ordered by decreasing variance, with each axis oriented so that its
/// largest-magnitude entry is positive.  `variances[i]` is the sample
/// variance of the data along `components[i]` (always `≥ 0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    pub variances: Vec<f64>,
    /// Total sample variance of the training data (trace of its covariance);
    /// the denominator for explained-variance ratios.
    pub total_variance: f64,
}

impl PcaModel {
    /// Number of retained components.
    pub fn k(&self) -> usize {
        self.components.len()
    }

    /// Original feature dimension.
    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

fn check_rectangular(data: &[Vec<f64>]) -> Result<usize, PcaError> {
    let dim = data
        .first()
        .ok_or_else(|| PcaError::Data("empty data".into()))?
        .len();
    if dim == 0 {
        return Err(PcaError::Data("zero-dimensional samples".into()));
    }
    for (i, row) in data.iter().enumerate() {
        if row.len() != dim {
            return Err(PcaError::Data(format!(
                "row {i} has length {}, expected {dim}",
                row.len()
            )));
        }
    }
    Ok(dim)
}

/// Fits a `k`-component PCA to `data` (one sample per row).
///
/// Requires at least two samples and `k ≤ min(N-1, D)`.  When the data has
/// lower rank than `k`, the trailing components are a deterministic
/// orthonormal completion with zero variance.
pub fn pca_fit(data: &[Vec<f64>], k: usize) -> Result<PcaModel, PcaError> {
    let dim = check_rectangular(data)?;
    let n = data.len();
    if n < 2 {
        return Err(PcaError::Data(format!(
            "need at least 2 samples to fit, got {n}"
        )));
    }
    let max_k = (n - 1).min(dim);
    if k == 0 || k > max_k {
        return Err(PcaError::Rank {
            k,
            n_samples: n,
            dim,
            max: max_k,
        });
    }

    let mut mean = vec![0.0; dim];
    for row in data {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    let centered: Vec<Vec<f64>> = data
        .iter()
        .map(|row| row.iter().zip(&mean).map(|(v, m)| v - m).collect())
        .collect();

    let denom = (n - 1) as f64;
    let total_variance = centered
        .iter()
        .flat_map(|row| row.iter().map(|v| v * v))
        .sum::<f64>()
        / denom;

    let (mut components, variances) = if dim <= n {
        eigen_via_feature_scatter(&centered, dim, k, denom)?
    } else {
        eigen_via_sample_gram(&centered, dim, k, denom)?
    };

    orthonormalise(&mut components);
    for component in &mut components {
        orient_largest_entry_positive(component);
    }

    Ok(PcaModel {
        mean,
        components,
        variances,
        total_variance,
    })
}

/// Direct route: eigendecompose `XᵀX` (`D×D`).
fn eigen_via_feature_scatter(
    centered: &[Vec<f64>],
    dim: usize,
    k: usize,
    denom: f64,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), PcaError> {
    let mut scatter = Matrix::zeros(dim, dim);
    for row in centered {
        for i in 0..dim {
            let ri = row[i];
            if ri == 0.0 {
                continue;
            }
            for j in i..dim {
                let v = scatter.get(i, j) + ri * row[j];
                scatter.set(i, j, v);
            }
        }
    }
    for i in 0..dim {
        for j in 0..i {
            scatter.set(i, j, scatter.get(j, i));
        }
    }
    let eig = sym_eigen(&scatter).map_err(PcaError::Numerical)?;
    let components = eig.vectors.into_iter().take(k).collect();
    let variances = eig
        .values
        .iter()
        .take(k)
        .map(|&v| (v / denom).max(0.0))
        .collect();
    Ok((components, variances))
}

/// Gram route for wide data: eigendecompose `XXᵀ` (`N×N`) and map each
/// eigenvector `v` back to feature space as `Xᵀv`, which is an eigenvector of
/// `XᵀX` for the same eigenvalue.
fn eigen_via_sample_gram(
    centered: &[Vec<f64>],
    dim: usize,
    k: usize,
    denom: f64,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), PcaError> {
    let n = centered.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let dot: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(a, b)| a * b)
                .sum();
            gram.set(i, j, dot);
            gram.set(j, i, dot);
        }
    }
    let eig = sym_eigen(&gram).map_err(PcaError::Numerical)?;

    let mut components = Vec::with_capacity(k);
    let mut variances = Vec::with_capacity(k);
    for (value, vector) in eig.values.iter().zip(&eig.vectors).take(k) {
        let mut axis = vec![0.0; dim];
        for (weight, row) in vector.iter().zip(centered) {
            if *weight == 0.0 {
                continue;
            }
            for (a, r) in axis.iter_mut().zip(row) {
                *a += weight * r;
            }
        }
        let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
        // A vanishing image means the data rank ran out before k; leave a
        // zero axis for the completion pass below.
        if norm > 1e-12 * value.abs().max(1.0).sqrt() {
            for a in &mut axis {
                *a /= norm;
            }
        } else {
            axis.iter_mut().for_each(|a| *a = 0.0);
        }
        components.push(axis);
        variances.push((value / denom).max(0.0));
    }
    Ok((components, variances))
}

/// Modified Gram-Schmidt pass.  Axes that vanish (rank deficiency) are
/// replaced by the first standard basis vector with a non-trivial residual,
/// keeping the returned set orthonormal and deterministic.
fn orthonormalise(components: &mut [Vec<f64>]) {
    let dim = match components.first() {
        Some(c) => c.len(),
        None => return,
    };
    for i in 0..components.len() {
        let (done, rest) = components.split_at_mut(i);
        let current = &mut rest[0];
        for prev in done.iter() {
            let dot: f64 = current.iter().zip(prev).map(|(a, b)| a * b).sum();
            for (c, p) in current.iter_mut().zip(prev) {
                *c -= dot * p;
            }
        }
        let norm = current.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for c in current.iter_mut() {
                *c /= norm;
            }
            continue;
        }
        // Deterministic completion from the standard basis.
        'basis: for b in 0..dim {
            let mut candidate = vec![0.0; dim];
            candidate[b] = 1.0;
            for prev in done.iter() {
                let dot = prev[b];
                for (c, p) in candidate.iter_mut().zip(prev) {
                    *c -= dot * p;
                }
            }
            let cnorm = candidate.iter().map(|v| v * v).sum::<f64>().sqrt();
            if cnorm > 1e-8 {
                for c in &mut candidate {
                    *c /= cnorm;
                }
                current.copy_from_slice(&candidate);
                break 'basis;
            }
        }
    }
}

/// Flips the axis so its largest-magnitude entry (first such on ties) is
/// positive, removing the eigenvector sign ambiguity.
fn orient_largest_entry_positive(component: &mut [f64]) {
    let mut best = 0;
    for (i, v) in component.iter().enumerate() {
        if v.abs() > component[best].abs() {
            best = i;
        }
    }
    if component[best] < 0.0 {
        for v in component.iter_mut() {
            *v = -*v;
        }
    }
}

/// Projects a sample: `components · (x - mean)`, a `k`-vector.
pub fn pca_transform(model: &PcaModel, sample: &[f64]) -> Result<Vec<f64>, PcaError> {
    if sample.len() != model.dim() {
        return Err(PcaError::Dimension {
            expected: model.dim(),
            got: sample.len(),
        });
    }
    Ok(model
        .components
        .iter()
        .map(|axis| {
            axis.iter()
                .zip(sample.iter().zip(&model.mean))
                .map(|(a, (x, m))| a * (x - m))
                .sum()
        })
        .collect())
}

/// Reconstructs from coordinates: `mean + componentsᵀ · coords`.
pub fn pca_inverse_transform(model: &PcaModel, coords: &[f64]) -> Result<Vec<f64>, PcaError> {
    if coords.len() != model.k() {
        return Err(PcaError::Dimension {
            expected: model.k(),
            got: coords.len(),
        });
    }
    let mut out = model.mean.clone();
    for (c, axis) in coords.iter().zip(&model.components) {
        for (o, a) in out.iter_mut().zip(axis) {
            *o += c * a;
        }
    }
    Ok(out)
}

/// Fraction of `total_variance` captured by each component, in component
/// order (descending).  `total_variance` must be positive.
pub fn explained_variance_ratio(
    model: &PcaModel,
    total_variance: f64,
) -> Result<Vec<f64>, PcaError> {
    if !(total_variance > 0.0) {
        return Err(PcaError::Data(format!(
            "total variance must be positive, got {total_variance}"
        )));
    }
    Ok(model.variances.iter().map(|v| v / total_variance).collect())
}
