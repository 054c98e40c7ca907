//! Comparison of the hybrid executor against the unitary reference.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::state::{fidelity, BlochVector, NamedGate, RandomSource, StateVector};

use super::exec::{execute_hqcm, execute_unitary, HqcmOptions};

/// Fidelity threshold for byproduct-corrected states.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-10;

/// Haar-like random pure state from normalized complex Gaussians.
pub fn random_state(num_qubits: usize, rng: &mut RandomSource) -> StateVector {
    let mut gauss = || {
        let u1 = rng.uniform().max(f64::MIN_POSITIVE);
        let u2 = rng.uniform();
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    };
    let amps: Vec<Complex64> = (0..1usize << num_qubits)
        .map(|_| Complex64::new(gauss(), gauss()))
        .collect();
    let norm = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect())
        .expect("normalized by construction")
}

/// Uniformly random direction on the Bloch sphere.
pub fn random_axis(rng: &mut RandomSource) -> BlochVector {
    let cos_theta = 2.0 * rng.uniform() - 1.0;
    BlochVector::new(cos_theta.clamp(-1.0, 1.0).acos(), TAU * rng.uniform())
}

/// Random circuit on `num_qubits` logical qubits. Each gate is drawn
/// uniformly from H, Rz(φ), SQ(random axis, α), CZ(random pair) and a
/// rotation on a random subset of at most 3 qubits; angles are uniform in
/// `(-π, π]`.
pub fn random_circuit(num_qubits: usize, num_gates: usize, rng: &mut RandomSource) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits, 0);
    let angle = |rng: &mut RandomSource| PI - TAU * rng.uniform();
    for _ in 0..num_gates {
        let kind = if num_qubits < 2 { [0, 1, 2, 4][rng.below(4)] } else { rng.below(5) };
        let gate = match kind {
            0 => Gate::h(rng.below(num_qubits)),
            1 => Gate::named(rng.below(num_qubits), NamedGate::Rz(angle(rng))),
            2 => Gate::SingleQubit {
                qubit: rng.below(num_qubits),
                axis: random_axis(rng),
                angle: angle(rng),
            },
            3 => {
                let a = rng.below(num_qubits);
                let b = (a + 1 + rng.below(num_qubits - 1)) % num_qubits;
                Gate::Cz(a, b)
            }
            _ => {
                let size = 1 + rng.below(num_qubits.min(3));
                let mut pool: Vec<usize> = (0..num_qubits).collect();
                let leaves = (0..size).map(|_| pool.swap_remove(rng.below(pool.len()))).collect();
                Gate::rotation(leaves, angle(rng))
            }
        };
        c.push(gate)?;
    }
    Ok(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub trials: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.min_fidelity >= 1.0 - EQUIVALENCE_TOLERANCE
    }
}

/// Byproduct-corrected hybrid output vs the unitary output, over `trials`
/// random logical inputs (work qubits in `|+>`) and random outcome streams.
pub fn verify_equivalence(circuit: &Circuit, trials: usize, seed: u64) -> Result<EquivalenceReport> {
    let mut min = f64::INFINITY;
    let mut sum = 0.0;
    for t in 0..trials {
        let mut rng = RandomSource::new(seed, t as u64);
        let input = circuit.initial_state(&random_state(circuit.num_logical(), &mut rng))?;
        let reference = execute_unitary(circuit, &input)?;
        let run = execute_hqcm(circuit, &input, &HqcmOptions::default(), &mut rng)?;
        let f = fidelity(&run.corrected_state()?, &reference)?;
        min = min.min(f);
        sum += f;
    }
    Ok(EquivalenceReport {
        trials,
        min_fidelity: if trials == 0 { 1.0 } else { min },
        mean_fidelity: if trials == 0 { 1.0 } else { sum / trials as f64 },
    })
}
