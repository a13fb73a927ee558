//! Circuit description: a fixed, seeded layout of rotation and CNOT gates.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A single gate instruction.  Angles are in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    /// Rotation about the X axis of `target`.
    Rx { target: usize, angle: f64 },
    /// Rotation about the Y axis of `target`.
    Ry { target: usize, angle: f64 },
    /// Controlled NOT: flips `target` where `control` is 1.
    Cnot { control: usize, target: usize },
}

/// How the CNOT layer wires the register together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// `q → (q+1) mod n` for every qubit — closes the chain into a loop.
    Ring,
    /// `q → q+1` for `q < n-1` — an open chain.
    Linear,
}

/// Deterministic description of the feature-extraction circuit.
///
/// Each layer applies one RX and one RY to every qubit, with angles drawn
/// uniformly from `[0, 2π)` by a ChaCha stream seeded with `angle_seed`,
/// followed by the entangling CNOT layer.  The angles are fixed by the seed —
/// they are part of the feature definition, not trained parameters — so the
/// expanded gate list is a pure function of this struct.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    /// Register width; the encodable vector length is `2^n_qubits`.
    #[serde(default = "default_n_qubits")]
    pub n_qubits: usize,
    /// Number of rotation + entanglement layers (0 = identity circuit).
    #[serde(default = "default_layers")]
    pub layers: usize,
    /// Seed of the angle stream.
    #[serde(default = "default_angle_seed")]
    pub angle_seed: u64,
    /// CNOT topology of the entangling layer.
    #[serde(default = "default_entanglement")]
    pub entanglement: Entanglement,
}

fn default_n_qubits() -> usize {
    4
}
fn default_layers() -> usize {
    2
}
fn default_angle_seed() -> u64 {
    42
}
fn default_entanglement() -> Entanglement {
    Entanglement::Ring
}

impl Default for CircuitSpec {
    fn default() -> Self {
        Self {
            n_qubits: default_n_qubits(),
            layers: default_layers(),
            angle_seed: default_angle_seed(),
            entanglement: default_entanglement(),
        }
    }
}

impl CircuitSpec {
    /// Checks the structural constraints (at least one qubit).
    pub fn validate(&self) -> Result<(), String> {
        if self.n_qubits == 0 {
            return Err("circuit needs at least one qubit".into());
        }
        Ok(())
    }

    /// Expands the circuit description into its concrete gate list.
    ///
    /// Per layer: `RX(θ)` on qubits `0..n` (angles drawn first), then `RY(φ)`
    /// on qubits `0..n`, then the CNOT layer in qubit order.  A one-qubit
    /// register has no entangling gates.
    pub fn gates(&self) -> Vec<GateOp> {
        let n = self.n_qubits;
        let mut rng = ChaCha8Rng::seed_from_u64(self.angle_seed);
        let mut gates = Vec::new();
        for _ in 0..self.layers {
            for target in 0..n {
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                gates.push(GateOp::Rx { target, angle });
            }
            for target in 0..n {
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                gates.push(GateOp::Ry { target, angle });
            }
            match self.entanglement {
                Entanglement::Ring if n > 1 => {
                    for q in 0..n {
                        gates.push(GateOp::Cnot {
                            control: q,
                            target: (q + 1) % n,
                        });
                    }
                }
                Entanglement::Linear if n > 1 => {
                    for q in 0..n - 1 {
                        gates.push(GateOp::Cnot {
                            control: q,
                            target: q + 1,
                        });
                    }
                }
                _ => {}
            }
        }
        gates
    }
}
