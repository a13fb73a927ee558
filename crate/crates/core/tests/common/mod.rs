//! Brute-force reference implementations shared by the integration tests.
//!
//! Each oracle deliberately uses a different algorithm from the library —
//! dense Kronecker-product unitaries instead of strided in-place updates,
//! cyclic Jacobi rotations instead of Householder tridiagonalisation, and
//! quadratic pair counting instead of threshold sweeps — so agreement between
//! the two is evidence of correctness rather than of shared bugs.
#![allow(dead_code)]

use num_complex::Complex64;
use qfuse_core::quantum::{CircuitSpec, GateOp};

pub type CMat = Vec<Vec<Complex64>>;

pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity_matrix(n: usize) -> CMat {
    let mut m = vec![vec![complex(0.0, 0.0); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = complex(1.0, 0.0);
    }
    m
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![complex(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    let (n, inner, m) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![complex(0.0, 0.0); m]; n];
    for i in 0..n {
        for k in 0..inner {
            let aik = a[i][k];
            for j in 0..m {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(m: &CMat, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn rx_2x2(angle: f64) -> CMat {
    let c = complex((angle / 2.0).cos(), 0.0);
    let mis = complex(0.0, -(angle / 2.0).sin());
    vec![vec![c, mis], vec![mis, c]]
}

fn ry_2x2(angle: f64) -> CMat {
    let c = complex((angle / 2.0).cos(), 0.0);
    let s = complex((angle / 2.0).sin(), 0.0);
    vec![vec![c, -s], vec![s, c]]
}

/// Bit position of `qubit` in a basis index: qubit 0 is the most significant.
fn bit_of(index: usize, n_qubits: usize, qubit: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

/// Embeds a 2×2 gate on `qubit` as `I ⊗ … ⊗ G ⊗ … ⊗ I` over the register.
fn single_qubit_unitary(g: &CMat, n_qubits: usize, qubit: usize) -> CMat {
    let left = identity_matrix(1 << qubit);
    let right = identity_matrix(1 << (n_qubits - 1 - qubit));
    kron(&kron(&left, g), &right)
}

/// CNOT as an explicit basis permutation matrix.
fn cnot_unitary(n_qubits: usize, control: usize, target: usize) -> CMat {
    let dim = 1 << n_qubits;
    let mut m = vec![vec![complex(0.0, 0.0); dim]; dim];
    for j in 0..dim {
        let out = if bit_of(j, n_qubits, control) == 1 {
            j ^ (1 << (n_qubits - 1 - target))
        } else {
            j
        };
        m[out][j] = complex(1.0, 0.0);
    }
    m
}

pub fn gate_unitary(gate: &GateOp, n_qubits: usize) -> CMat {
    match *gate {
        GateOp::Rx { target, angle } => single_qubit_unitary(&rx_2x2(angle), n_qubits, target),
        GateOp::Ry { target, angle } => single_qubit_unitary(&ry_2x2(angle), n_qubits, target),
        GateOp::Cnot { control, target } => cnot_unitary(n_qubits, control, target),
    }
}

/// The full circuit as one dense `2^n × 2^n` matrix: later gates multiply on
/// the left, matching sequential application to a column state.
pub fn circuit_unitary(spec: &CircuitSpec) -> CMat {
    let mut u = identity_matrix(1 << spec.n_qubits);
    for gate in spec.gates() {
        u = matmul(&gate_unitary(&gate, spec.n_qubits), &u);
    }
    u
}

pub fn dense_expect_z(amps: &[Complex64], n_qubits: usize, qubit: usize) -> f64 {
    amps.iter()
        .enumerate()
        .map(|(i, a)| {
            let sign = if bit_of(i, n_qubits, qubit) == 0 { 1.0 } else { -1.0 };
            sign * a.norm_sqr()
        })
        .sum()
}

pub fn dense_expect_zz(amps: &[Complex64], n_qubits: usize, q1: usize, q2: usize) -> f64 {
    amps.iter()
        .enumerate()
        .map(|(i, a)| {
            let parity = bit_of(i, n_qubits, q1) ^ bit_of(i, n_qubits, q2);
            let sign = if parity == 0 { 1.0 } else { -1.0 };
            sign * a.norm_sqr()
        })
        .sum()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order with eigenvectors as matching
/// rows, each oriented so its largest-magnitude entry (first on ties) is
/// positive.
pub fn jacobi_eigen(sym: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = sym.len();
    let mut a: Vec<Vec<f64>> = sym.to_vec();
    // v holds eigenvectors as columns while iterating.
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale: f64 = sym
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1.0);
    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let apq = a[p][q];
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[i][p];
                        let aiq = a[i][q];
                        a[i][p] = c * aip - s * aiq;
                        a[p][i] = a[i][p];
                        a[i][q] = s * aip + c * aiq;
                        a[q][i] = a[i][q];
                    }
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = s * vip + c * viq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    for vec in &mut eigenvectors {
        orient_first_largest_positive(vec);
    }
    (eigenvalues, eigenvectors)
}

pub fn orient_first_largest_positive(component: &mut [f64]) {
    let mut best = 0;
    for (i, value) in component.iter().enumerate() {
        if value.abs() > component[best].abs() {
            best = i;
        }
    }
    if component[best] < 0.0 {
        for value in component.iter_mut() {
            *value = -*value;
        }
    }
}

/// Reference PCA: mean-center, form the sample covariance explicitly, and
/// diagonalise it with [`jacobi_eigen`].  Returns `(mean, components,
/// variances)` with components as rows for the top `k` axes.
pub fn pca_reference(data: &[Vec<f64>], k: usize) -> (Vec<f64>, Vec<Vec<f64>>, Vec<f64>) {
    let n = data.len();
    let d = data[0].len();
    let mut mean = vec![0.0; d];
    for row in data {
        for (m, x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut cov = vec![vec![0.0; d]; d];
    for row in data {
        let centered: Vec<f64> = row.iter().zip(&mean).map(|(x, m)| x - m).collect();
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += centered[i] * centered[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for row in &mut cov {
        for x in row.iter_mut() {
            *x /= denom;
        }
    }
    let (eigenvalues, eigenvectors) = jacobi_eigen(&cov);
    let variances = eigenvalues[..k].iter().map(|&l| l.max(0.0)).collect();
    (mean, eigenvectors[..k].to_vec(), variances)
}

/// ROC AUC by explicit pair counting: the probability that a positive
/// outscores a negative, ties counting half.
pub fn pairwise_auc(scores: &[f64], labels: &[u8]) -> f64 {
    let mut wins = 0.0f64;
    let mut pairs = 0.0f64;
    for (sp, &lp) in scores.iter().zip(labels) {
        if lp != 1 {
            continue;
        }
        for (sn, &ln) in scores.iter().zip(labels) {
            if ln != 0 {
                continue;
            }
            pairs += 1.0;
            if sp > sn {
                wins += 1.0;
            } else if sp == sn {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, context: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{context}: {actual} vs {expected} (tol {tol})"
    );
}
