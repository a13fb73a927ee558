//! Statevector representation, amplitude encoding, gate application and
//! Pauli-Z expectation values.

use num_complex::Complex64;

use super::circuit::{CircuitSpec, GateOp};
use super::QuantumError;

/// Tolerance on the squared-norm deviation accepted by [`StateVector::new`].
const NORM_TOLERANCE: f64 = 1e-10;

/// A pure `n`-qubit state as a dense vector of `2^n` complex amplitudes.
///
/// Qubit `0` is the most significant bit of the basis index: amplitude `i`
/// belongs to the basis state whose qubit-`q` value is bit `n - 1 - q` of `i`.
/// The amplitudes always satisfy `Σ|aᵢ|² = 1` within `1e-10`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from explicit amplitudes, validating length and norm.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(QuantumError::Dimension {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(QuantumError::Normalization);
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Builds a state without re-validating the norm.  Callers must only pass
    /// amplitudes produced by unitary evolution of a valid state.
    fn from_parts(n_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1usize << n_qubits);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// The computational basis state `|idx⟩`.
    pub fn basis(n_qubits: usize, idx: usize) -> Result<Self, QuantumError> {
        let dim = 1usize << n_qubits;
        if idx >= dim {
            return Err(QuantumError::Dimension {
                expected: dim,
                got: idx,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Number of qubits in the register.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The dense amplitude vector, ordered with qubit 0 as the most
    /// significant bit of the index.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `Σ|aᵢ|²` — should stay within `1e-10` of one under gate application.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Mask selecting the index bit that carries `qubit` in an `n`-qubit register.
fn qubit_mask(n_qubits: usize, qubit: usize) -> usize {
    1usize << (n_qubits - 1 - qubit)
}

fn check_qubit(n_qubits: usize, qubit: usize) -> Result<(), QuantumError> {
    if qubit >= n_qubits {
        Err(QuantumError::QubitIndex { qubit, n_qubits })
    } else {
        Ok(())
    }
}

/// Encodes a real vector into the amplitudes of an `n_qubits` register.
///
/// The vector is L2-normalised and zero-padded: `aᵢ = vᵢ / ‖v‖₂` for
/// `i < len(v)` and `0` beyond.  Fails with [`QuantumError::Capacity`] when
/// the vector is longer than `2^n_qubits` and [`QuantumError::Normalization`]
/// when it has zero norm.
pub fn amplitude_encode(values: &[f64], n_qubits: usize) -> Result<StateVector, QuantumError> {
    let dim = 1usize << n_qubits;
    if values.len() > dim {
        return Err(QuantumError::Capacity {
            len: values.len(),
            capacity: dim,
            n_qubits,
        });
    }
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(QuantumError::Normalization);
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    for (i, v) in values.iter().enumerate() {
        amplitudes[i] = Complex64::new(v / norm, 0.0);
    }
    Ok(StateVector::from_parts(n_qubits, amplitudes))
}

/// Applies `m` (a 2x2 unitary) to `qubit`, updating amplitudes in place.
fn apply_single_qubit(amps: &mut [Complex64], n_qubits: usize, qubit: usize, m: [[Complex64; 2]; 2]) {
    let mask = qubit_mask(n_qubits, qubit);
    for i in 0..amps.len() {
        if i & mask == 0 {
            let j = i | mask;
            let a0 = amps[i];
            let a1 = amps[j];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// `RX(θ) = [[cos θ/2, -i sin θ/2], [-i sin θ/2, cos θ/2]]`
fn rx_matrix(angle: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((angle / 2.0).cos(), 0.0);
    let mis = Complex64::new(0.0, -(angle / 2.0).sin());
    [[c, mis], [mis, c]]
}

/// `RY(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`
fn ry_matrix(angle: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((angle / 2.0).cos(), 0.0);
    let s = Complex64::new((angle / 2.0).sin(), 0.0);
    [[c, -s], [s, c]]
}

fn apply_gate_in_place(
    amps: &mut [Complex64],
    n_qubits: usize,
    gate: &GateOp,
) -> Result<(), QuantumError> {
    match *gate {
        GateOp::Rx { target, angle } => {
            check_qubit(n_qubits, target)?;
            apply_single_qubit(amps, n_qubits, target, rx_matrix(angle));
        }
        GateOp::Ry { target, angle } => {
            check_qubit(n_qubits, target)?;
            apply_single_qubit(amps, n_qubits, target, ry_matrix(angle));
        }
        GateOp::Cnot { control, target } => {
            check_qubit(n_qubits, control)?;
            check_qubit(n_qubits, target)?;
            if control == target {
                return Err(QuantumError::DuplicateQubit { qubit: control });
            }
            let cmask = qubit_mask(n_qubits, control);
            let tmask = qubit_mask(n_qubits, target);
            // Swap each pair of amplitudes whose indices differ only in the
            // target bit, restricted to control = 1.
            for i in 0..amps.len() {
                if i & cmask != 0 && i & tmask == 0 {
                    amps.swap(i, i | tmask);
                }
            }
        }
    }
    Ok(())
}

/// Applies a single gate to a state, returning the evolved state.
pub fn apply_gate(state: &StateVector, gate: &GateOp) -> Result<StateVector, QuantumError> {
    let mut amps = state.amplitudes.clone();
    apply_gate_in_place(&mut amps, state.n_qubits, gate)?;
    Ok(StateVector::from_parts(state.n_qubits, amps))
}

/// Runs the full gate sequence described by `spec` on `state`.
///
/// The gate list is regenerated deterministically from `spec`, so the same
/// `(state, spec)` pair always yields bit-identical amplitudes.
pub fn run_circuit(state: &StateVector, spec: &CircuitSpec) -> Result<StateVector, QuantumError> {
    if spec.n_qubits != state.n_qubits {
        return Err(QuantumError::Dimension {
            expected: state.n_qubits,
            got: spec.n_qubits,
        });
    }
    let mut amps = state.amplitudes.clone();
    for gate in spec.gates() {
        apply_gate_in_place(&mut amps, state.n_qubits, &gate)?;
    }
    Ok(StateVector::from_parts(state.n_qubits, amps))
}

/// Exact expectation value `⟨Z_qubit⟩ = Σᵢ |aᵢ|² (-1)^{bit}` in `[-1, 1]`.
pub fn expectation_z(state: &StateVector, qubit: usize) -> Result<f64, QuantumError> {
    check_qubit(state.n_qubits, qubit)?;
    let mask = qubit_mask(state.n_qubits, qubit);
    let mut sum = 0.0;
    for (i, a) in state.amplitudes.iter().enumerate() {
        let sign = if i & mask == 0 { 1.0 } else { -1.0 };
        sum += sign * a.norm_sqr();
    }
    // Guard against last-ulp drift pushing the value outside the physical
    // range.
    Ok(sum.clamp(-1.0, 1.0))
}

/// Exact two-qubit correlator `⟨Z_q1 Z_q2⟩`, `+1` on even parity of the two
/// bits and `-1` on odd.  The qubits must be distinct.
pub fn expectation_zz(state: &StateVector, q1: usize, q2: usize) -> Result<f64, QuantumError> {
    check_qubit(state.n_qubits, q1)?;
    check_qubit(state.n_qubits, q2)?;
    if q1 == q2 {
        return Err(QuantumError::DuplicateQubit { qubit: q1 });
    }
    let m1 = qubit_mask(state.n_qubits, q1);
    let m2 = qubit_mask(state.n_qubits, q2);
    let mut sum = 0.0;
    for (i, a) in state.amplitudes.iter().enumerate() {
        let parity_even = ((i & m1 != 0) as u8) ^ ((i & m2 != 0) as u8) == 0;
        let sign = if parity_even { 1.0 } else { -1.0 };
        sum += sign * a.norm_sqr();
    }
    Ok(sum.clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Entanglement;
    use proptest::prelude::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol})");
    }

    #[test]
    fn encode_unit_basis_vector() {
        let state = amplitude_encode(&[1.0, 0.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(state.amplitudes()[0], Complex64::new(1.0, 0.0));
        for a in &state.amplitudes()[1..] {
            assert_eq!(*a, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn encode_normalises_and_pads() {
        // [3, 4] has norm 5 -> [0.6, 0.8, 0, 0].
        let state = amplitude_encode(&[3.0, 4.0], 2).unwrap();
        assert_close(state.amplitudes()[0].re, 0.6, 1e-15);
        assert_close(state.amplitudes()[1].re, 0.8, 1e-15);
        assert_eq!(state.amplitudes()[2], Complex64::new(0.0, 0.0));
        assert_eq!(state.amplitudes()[3], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn encode_rejects_zero_vector() {
        assert_eq!(
            amplitude_encode(&[0.0, 0.0], 2).unwrap_err(),
            QuantumError::Normalization
        );
    }

    #[test]
    fn encode_rejects_oversized_vector() {
        let err = amplitude_encode(&[1.0; 5], 2).unwrap_err();
        assert_eq!(
            err,
            QuantumError::Capacity {
                len: 5,
                capacity: 4,
                n_qubits: 2
            }
        );
    }

    #[test]
    fn rx_zero_is_identity() {
        let state = amplitude_encode(&[0.6, 0.8], 1).unwrap();
        let out = apply_gate(
            &state,
            &GateOp::Rx {
                target: 0,
                angle: 0.0,
            },
        )
        .unwrap();
        assert_eq!(out.amplitudes(), state.amplitudes());
    }

    #[test]
    fn ry_pi_flips_ground_state() {
        // RY(π)|0⟩ = |1⟩ exactly up to the cos(π/2) rounding of ~6e-17.
        let state = StateVector::basis(1, 0).unwrap();
        let out = apply_gate(
            &state,
            &GateOp::Ry {
                target: 0,
                angle: std::f64::consts::PI,
            },
        )
        .unwrap();
        assert_close(out.amplitudes()[0].re, 0.0, 1e-15);
        assert_close(out.amplitudes()[1].re, 1.0, 1e-15);
    }

    #[test]
    fn rx_half_pi_superposes_with_imaginary_part() {
        // RX(π/2)|0⟩ = [1/√2, -i/√2].
        let state = StateVector::basis(1, 0).unwrap();
        let out = apply_gate(
            &state,
            &GateOp::Rx {
                target: 0,
                angle: std::f64::consts::FRAC_PI_2,
            },
        )
        .unwrap();
        assert_close(out.amplitudes()[0].re, FRAC_1_SQRT_2, 1e-15);
        assert_close(out.amplitudes()[0].im, 0.0, 1e-15);
        assert_close(out.amplitudes()[1].re, 0.0, 1e-15);
        assert_close(out.amplitudes()[1].im, -FRAC_1_SQRT_2, 1e-15);
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        // |10⟩ -> |11⟩ with qubit 0 (MSB) as control.
        let state = StateVector::basis(2, 0b10).unwrap();
        let out = apply_gate(
            &state,
            &GateOp::Cnot {
                control: 0,
                target: 1,
            },
        )
        .unwrap();
        assert_eq!(out.amplitudes()[0b11], Complex64::new(1.0, 0.0));
        assert_eq!(out.amplitudes()[0b10], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cnot_leaves_target_when_control_clear() {
        let state = StateVector::basis(2, 0b01).unwrap();
        let out = apply_gate(
            &state,
            &GateOp::Cnot {
                control: 0,
                target: 1,
            },
        )
        .unwrap();
        assert_eq!(out.amplitudes()[0b01], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn cnot_rejects_equal_control_and_target() {
        let state = StateVector::basis(2, 0).unwrap();
        let err = apply_gate(
            &state,
            &GateOp::Cnot {
                control: 1,
                target: 1,
            },
        )
        .unwrap_err();
        assert_eq!(err, QuantumError::DuplicateQubit { qubit: 1 });
    }

    #[test]
    fn gate_rejects_out_of_range_qubit() {
        let state = StateVector::basis(2, 0).unwrap();
        let err = apply_gate(
            &state,
            &GateOp::Rx {
                target: 2,
                angle: 1.0,
            },
        )
        .unwrap_err();
        assert_eq!(
            err,
            QuantumError::QubitIndex {
                qubit: 2,
                n_qubits: 2
            }
        );
    }

    #[test]
    fn expectation_z_on_basis_states() {
        let zero = StateVector::basis(1, 0).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert_eq!(expectation_z(&zero, 0).unwrap(), 1.0);
        assert_eq!(expectation_z(&one, 0).unwrap(), -1.0);
    }

    #[test]
    fn expectation_z_on_balanced_superposition_is_zero() {
        let state = amplitude_encode(&[1.0, 1.0], 1).unwrap();
        assert_close(expectation_z(&state, 0).unwrap(), 0.0, 1e-15);
    }

    #[test]
    fn expectation_zz_on_bell_state_is_one() {
        // (|00⟩ + |11⟩)/√2 has perfectly correlated qubits.
        let state = amplitude_encode(&[1.0, 0.0, 0.0, 1.0], 2).unwrap();
        assert_close(expectation_zz(&state, 0, 1).unwrap(), 1.0, 1e-15);
    }

    #[test]
    fn expectation_zz_rejects_duplicate_qubits() {
        let state = StateVector::basis(2, 0).unwrap();
        assert_eq!(
            expectation_zz(&state, 1, 1).unwrap_err(),
            QuantumError::DuplicateQubit { qubit: 1 }
        );
    }

    #[test]
    fn run_circuit_checks_register_size() {
        let state = StateVector::basis(2, 0).unwrap();
        let spec = CircuitSpec {
            n_qubits: 3,
            layers: 1,
            angle_seed: 1,
            entanglement: Entanglement::Ring,
        };
        assert!(matches!(
            run_circuit(&state, &spec).unwrap_err(),
            QuantumError::Dimension { .. }
        ));
    }

    #[test]
    fn state_new_rejects_unnormalised_amplitudes() {
        let err = StateVector::new(1, vec![Complex64::new(0.5, 0.0); 2]).unwrap_err();
        assert_eq!(err, QuantumError::Normalization);
    }

    #[test]
    fn state_new_rejects_wrong_length() {
        let err = StateVector::new(2, vec![Complex64::new(1.0, 0.0); 3]).unwrap_err();
        assert!(matches!(err, QuantumError::Dimension { .. }));
    }

    proptest! {
        #[test]
        fn any_seeded_circuit_preserves_the_norm(
            values in proptest::collection::vec(-100.0f64..100.0, 1..=16),
            angle_seed in any::<u64>(),
            layers in 0usize..4,
            ring in any::<bool>(),
        ) {
            prop_assume!(values.iter().any(|v| *v != 0.0));
            let spec = CircuitSpec {
                n_qubits: 4,
                layers,
                angle_seed,
                entanglement: if ring { Entanglement::Ring } else { Entanglement::Linear },
            };
            let state = amplitude_encode(&values, 4).unwrap();
            let evolved = run_circuit(&state, &spec).unwrap();
            prop_assert!((evolved.norm_sqr() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn expectations_stay_in_the_physical_interval(
            values in proptest::collection::vec(-10.0f64..10.0, 1..=16),
            angle_seed in any::<u64>(),
        ) {
            prop_assume!(values.iter().any(|v| *v != 0.0));
            let spec = CircuitSpec { angle_seed, ..CircuitSpec::default() };
            let state = run_circuit(&amplitude_encode(&values, 4).unwrap(), &spec).unwrap();
            for q in 0..4 {
                let z = expectation_z(&state, q).unwrap();
                prop_assert!((-1.0..=1.0).contains(&z));
            }
            let zz = expectation_zz(&state, 0, 3).unwrap();
            prop_assert!((-1.0..=1.0).contains(&zz));
        }
    }
}
