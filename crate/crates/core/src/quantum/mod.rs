//! Dense statevector simulation of small parameterised circuits.
//!
//! The simulator holds all `2^n` complex amplitudes of an `n`-qubit register
//! and applies gates by direct index manipulation.  Qubit `0` is the **most
//! significant** bit of the basis-state index, i.e. for two qubits the
//! amplitudes are ordered `|00⟩, |01⟩, |10⟩, |11⟩` with qubit 0 the left bit.
//!
//! Feature extraction encodes a real vector into the amplitudes of the
//! register (L2-normalised, zero-padded), runs a fixed seeded rotation +
//! entanglement circuit, and reads out exact Pauli-Z expectation values —
//! no shot sampling is involved, so extraction is fully deterministic.

mod circuit;
mod features;
mod state;

pub use circuit::{CircuitSpec, Entanglement, GateOp};
pub use features::{extract_quantum_features, ObservableSet};
pub use state::{
    amplitude_encode, apply_gate, expectation_z, expectation_zz, run_circuit, StateVector,
};

use thiserror::Error;

/// Errors raised by state preparation, gate application and measurement.
#[derive(Debug, Error, PartialEq)]
pub enum QuantumError {
    /// The vector to encode has no magnitude, so it cannot be L2-normalised.
    #[error("cannot encode an all-zero vector: L2 norm is zero")]
    Normalization,
    /// The input vector does not fit in the register.
    #[error("input of length {len} exceeds register capacity {capacity} ({n_qubits} qubits)")]
    Capacity {
        len: usize,
        capacity: usize,
        n_qubits: usize,
    },
    /// A qubit index is out of range for the register.
    #[error("qubit index {qubit} out of range for {n_qubits}-qubit register")]
    QubitIndex { qubit: usize, n_qubits: usize },
    /// Two roles of a two-qubit operation name the same qubit.
    #[error("operation requires two distinct qubits, got {qubit} twice")]
    DuplicateQubit { qubit: usize },
    /// A vector length or qubit count does not match the register.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}
