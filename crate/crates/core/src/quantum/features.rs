//! Quantum feature extraction: encode → evolve → measure.

use serde::{Deserialize, Serialize};

use super::circuit::CircuitSpec;
use super::state::{amplitude_encode, expectation_z, expectation_zz, run_circuit};
use super::QuantumError;

/// The Pauli-Z readout plan: single-qubit `⟨Z_q⟩` terms followed by two-qubit
/// `⟨Z_a Z_b⟩` correlators, evaluated in declared order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    /// Qubits measured individually.
    pub singles: Vec<usize>,
    /// Distinct qubit pairs measured jointly.
    pub pairs: Vec<(usize, usize)>,
}

impl ObservableSet {
    /// The default readout for an `n`-qubit ring: `⟨Z_0⟩ … ⟨Z_{n-1}⟩` followed
    /// by the nearest-neighbour correlators `⟨Z_q Z_{(q+1) mod n}⟩`.
    ///
    /// For four qubits this yields the eight observables
    /// `Z0, Z1, Z2, Z3, Z0Z1, Z1Z2, Z2Z3, Z3Z0`.
    pub fn ring_default(n_qubits: usize) -> Self {
        let singles = (0..n_qubits).collect();
        let pairs = if n_qubits > 1 {
            (0..n_qubits).map(|q| (q, (q + 1) % n_qubits)).collect()
        } else {
            Vec::new()
        };
        Self { singles, pairs }
    }

    /// Number of features the set produces.
    pub fn len(&self) -> usize {
        self.singles.len() + self.pairs.len()
    }

    /// True when no observables are declared.
    pub fn is_empty(&self) -> bool {
        self.singles.is_empty() && self.pairs.is_empty()
    }

    /// Checks all indices against the register width and pair distinctness.
    pub fn validate(&self, n_qubits: usize) -> Result<(), QuantumError> {
        for &q in &self.singles {
            if q >= n_qubits {
                return Err(QuantumError::QubitIndex { qubit: q, n_qubits });
            }
        }
        for &(a, b) in &self.pairs {
            if a >= n_qubits {
                return Err(QuantumError::QubitIndex { qubit: a, n_qubits });
            }
            if b >= n_qubits {
                return Err(QuantumError::QubitIndex { qubit: b, n_qubits });
            }
            if a == b {
                return Err(QuantumError::DuplicateQubit { qubit: a });
            }
        }
        Ok(())
    }
}

impl Default for ObservableSet {
    fn default() -> Self {
        Self::ring_default(4)
    }
}

/// Maps a real feature vector to Pauli-Z expectation values.
///
/// The input is zero-padded to the register capacity, amplitude-encoded
/// (which L2-normalises it, making the output invariant under positive
/// rescaling of the input), evolved through the circuit, and measured exactly
/// — each returned feature lies in `[-1, 1]`.
pub fn extract_quantum_features(
    values: &[f64],
    spec: &CircuitSpec,
    observables: &ObservableSet,
) -> Result<Vec<f64>, QuantumError> {
    observables.validate(spec.n_qubits)?;
    let state = amplitude_encode(values, spec.n_qubits)?;
    let state = run_circuit(&state, spec)?;
    let mut features = Vec::with_capacity(observables.len());
    for &q in &observables.singles {
        features.push(expectation_z(&state, q)?);
    }
    for &(a, b) in &observables.pairs {
        features.push(expectation_zz(&state, a, b)?);
    }
    Ok(features)
}
