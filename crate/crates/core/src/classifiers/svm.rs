//! Soft-margin RBF support vector machine trained with simplified SMO:
//! pick a KKT-violating multiplier, pair it with a seeded random partner,
//! and solve the two-variable subproblem analytically.  The kernel matrix is
//! precomputed, so training is deterministic given the seed and the data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Numerical floor below which a dual coefficient is treated as zero when
/// collecting support vectors.
const ALPHA_FLOOR: f64 = 1e-12;

/// Hard cap on optimisation sweeps, guarding pathological non-convergence.
const MAX_SWEEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    /// Soft-margin penalty.
    #[serde(default = "default_c")]
    pub c: f64,
    /// RBF width `exp(-gamma * ||x - y||^2)`; `None` scales by feature
    /// count and pooled variance at fit time.
    #[serde(default)]
    pub gamma: Option<f64>,
    /// KKT violation tolerance.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Consecutive update-free passes required before stopping.
    #[serde(default = "default_max_passes")]
    pub max_passes: usize,
    /// Seed for the random partner-multiplier choice.
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_c() -> f64 {
    1.0
}
fn default_tol() -> f64 {
    1e-3
}
fn default_max_passes() -> usize {
    100
}
fn default_seed() -> u64 {
    42
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            c: default_c(),
            gamma: None,
            tol: default_tol(),
            max_passes: default_max_passes(),
            seed: default_seed(),
        }
    }
}

/// A trained SVM: support vectors with their signed dual coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub gamma: f64,
    pub bias: f64,
    pub support_vectors: Vec<Vec<f64>>,
    /// `alpha_i * y_i` with `y ∈ {-1, +1}`, aligned with `support_vectors`.
    pub dual_coefs: Vec<f64>,
    /// False when the pass budget ran out before a quiet stretch.
    pub converged: bool,
}

pub(crate) fn rbf_kernel(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Default RBF width: `1 / (d * var)` where `var` is the population variance
/// of all feature entries pooled together (falls back to `1 / d` when the
/// data is constant).
pub(crate) fn scale_gamma(features: &[Vec<f64>]) -> f64 {
    let dim = features[0].len();
    let count = (features.len() * dim) as f64;
    let mean: f64 = features.iter().flatten().sum::<f64>() / count;
    let var: f64 = features
        .iter()
        .flatten()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / count;
    if var > 0.0 {
        1.0 / (dim as f64 * var)
    } else {
        1.0 / dim as f64
    }
}

/// Trains on `features` with labels already mapped to ±1.
pub(crate) fn train_svm(features: &[Vec<f64>], y: &[f64], params: &SvmParams) -> SvmModel {
    let n = features.len();
    let gamma = params.gamma.unwrap_or_else(|| scale_gamma(features));
    let c = params.c;

    // Precompute the kernel matrix once; SMO touches rows constantly.
    let mut kernel = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let k = rbf_kernel(&features[i], &features[j], gamma);
            kernel[i * n + j] = k;
            kernel[j * n + i] = k;
        }
    }
    let k = |i: usize, j: usize| kernel[i * n + j];

    let mut alpha = vec![0.0_f64; n];
    let mut b = 0.0_f64;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // Decision value at training point i minus the label.
    let error = |alpha: &[f64], b: f64, i: usize| -> f64 {
        let mut f = b;
        for j in 0..n {
            if alpha[j] != 0.0 {
                f += alpha[j] * y[j] * k(j, i);
            }
        }
        f - y[i]
    };

    let mut quiet_passes = 0;
    let mut sweeps = 0;
    let mut converged = false;
    while quiet_passes < params.max_passes && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut changed = 0;
        let mut violations = 0;
        for i in 0..n {
            let e_i = error(&alpha, b, i);
            let violates = (y[i] * e_i < -params.tol && alpha[i] < c)
                || (y[i] * e_i > params.tol && alpha[i] > 0.0);
            if !violates {
                continue;
            }
            violations += 1;

            // Seeded random partner distinct from i.
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let e_j = error(&alpha, b, j);

            let (alpha_i_old, alpha_j_old) = (alpha[i], alpha[j]);
            let (low, high) = if y[i] != y[j] {
                (
                    (alpha[j] - alpha[i]).max(0.0),
                    (c + alpha[j] - alpha[i]).min(c),
                )
            } else {
                (
                    (alpha[i] + alpha[j] - c).max(0.0),
                    (alpha[i] + alpha[j]).min(c),
                )
            };
            if low >= high {
                continue;
            }
            let eta = 2.0 * k(i, j) - k(i, i) - k(j, j);
            if eta >= 0.0 {
                continue;
            }
            let mut alpha_j = alpha_j_old - y[j] * (e_i - e_j) / eta;
            alpha_j = alpha_j.clamp(low, high);
            if (alpha_j - alpha_j_old).abs() < 1e-5 {
                continue;
            }
            let alpha_i = alpha_i_old + y[i] * y[j] * (alpha_j_old - alpha_j);
            alpha[i] = alpha_i;
            alpha[j] = alpha_j;

            let b1 = b - e_i
                - y[i] * (alpha_i - alpha_i_old) * k(i, i)
                - y[j] * (alpha_j - alpha_j_old) * k(i, j);
            let b2 = b - e_j
                - y[i] * (alpha_i - alpha_i_old) * k(i, j)
                - y[j] * (alpha_j - alpha_j_old) * k(j, j);
            b = if alpha_i > 0.0 && alpha_i < c {
                b1
            } else if alpha_j > 0.0 && alpha_j < c {
                b2
            } else {
                (b1 + b2) / 2.0
            };
            changed += 1;
        }
        if violations == 0 {
            // The KKT conditions hold everywhere within tolerance.
            converged = true;
            break;
        }
        if changed == 0 {
            quiet_passes += 1;
        } else {
            quiet_passes = 0;
        }
    }
    if quiet_passes >= params.max_passes {
        converged = true;
    }

    let mut support_vectors = Vec::new();
    let mut dual_coefs = Vec::new();
    for i in 0..n {
        if alpha[i] > ALPHA_FLOOR {
            support_vectors.push(features[i].clone());
            dual_coefs.push(alpha[i] * y[i]);
        }
    }
    SvmModel {
        gamma,
        bias: b,
        support_vectors,
        dual_coefs,
        converged,
    }
}

impl SvmModel {
    /// Signed decision value; positive means class 1.
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut f = self.bias;
        for (sv, coef) in self.support_vectors.iter().zip(&self.dual_coefs) {
            f += coef * rbf_kernel(sv, x, self.gamma);
        }
        f
    }
}
