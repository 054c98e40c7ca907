//! Measurement-based multi-qubit Z rotations on star graph states.
//!
//! An ancilla prepared in `(|0> + (-1)^κ |1>)/√2` is entangled by CZ with
//! every leaf. Measuring it in the basis `{|↑,↓(θ, (-1)^κ π/2)>}` leaves the
//! leaves in `(Z⊗...⊗Z)^m exp(-iθ Z⊗...⊗Z / 2) |ψ>` up to a global phase.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HqcmError, Result};
use crate::state::{BlochVector, MeasurementSpec, NamedGate, RandomSource, StateVector};

/// Largest tolerated population of `|1>` on an ancilla that should be reset.
const RESET_TOLERANCE: f64 = 1e-10;

/// Eigenvalue label of the ancilla's X-eigenstate preparation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncillaPrep {
    pub kappa: bool,
}

impl AncillaPrep {
    pub fn new(kappa: bool) -> Self {
        AncillaPrep { kappa }
    }

    /// Azimuth of the rotation measurement, `(-1)^κ π/2`.
    pub fn azimuth(&self) -> f64 {
        if self.kappa {
            -FRAC_PI_2
        } else {
            FRAC_PI_2
        }
    }
}

/// One ancilla bonded to a set of leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarGraph {
    ancilla: usize,
    leaves: Vec<usize>,
}

impl StarGraph {
    pub fn new(ancilla: usize, leaves: Vec<usize>) -> Result<Self> {
        if leaves.is_empty() {
            return Err(HqcmError::input("star graph needs at least one leaf"));
        }
        for (i, &l) in leaves.iter().enumerate() {
            if l == ancilla {
                return Err(HqcmError::input(format!("ancilla {ancilla} is also a leaf")));
            }
            if leaves[..i].contains(&l) {
                return Err(HqcmError::input(format!("leaf {l} listed twice")));
            }
        }
        Ok(StarGraph { ancilla, leaves })
    }

    pub fn ancilla(&self) -> usize {
        self.ancilla
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    fn leaf_mask(&self) -> usize {
        self.leaves.iter().fold(0, |m, &q| m | (1 << q))
    }
}

/// Classical record of one measurement-based rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationRecord {
    pub theta_requested: f64,
    pub theta_executed: f64,
    pub kappa: bool,
    pub outcome: bool,
    pub leaves: Vec<usize>,
}

/// Prepares the ancilla (assumed `|0>`) in the κ-signed X eigenstate and
/// bonds it to every leaf.
pub fn build_star_state(state: &mut StateVector, graph: &StarGraph, prep: AncillaPrep) -> Result<()> {
    let a = graph.ancilla;
    let (_, p1) = state.outcome_probabilities(&MeasurementSpec::new(a, BlochVector::z()))?;
    if p1 > RESET_TOLERANCE {
        return Err(HqcmError::Execution(format!(
            "ancilla {a} is not in |0> (population of |1> is {p1:e})"
        )));
    }
    for &leaf in &graph.leaves {
        if leaf >= state.num_qubits() {
            return Err(HqcmError::QubitOutOfRange {
                qubit: leaf,
                num_qubits: state.num_qubits(),
            });
        }
    }
    state.apply_named(a, NamedGate::H)?;
    if prep.kappa {
        state.apply_named(a, NamedGate::Z)?;
    }
    for &leaf in &graph.leaves {
        state.apply_cz(a, leaf)?;
    }
    Ok(())
}

/// `<ψ| X_a ⊗ Π_{b ∈ leaves} Z_b |ψ>`; equals `(-1)^κ` on a star state.
pub fn check_stabilizer(state: &StateVector, graph: &StarGraph) -> f64 {
    state.expectation_pauli(1 << graph.ancilla, graph.leaf_mask()).re
}

/// Returns the ancilla to `|0>` by a Z measurement and a conditional X.
pub fn reset_ancilla(state: &mut StateVector, ancilla: usize, rng: &mut RandomSource) -> Result<()> {
    let spec = MeasurementSpec::new(ancilla, BlochVector::z());
    if state.measure(&spec, rng, None)? {
        state.apply_named(ancilla, NamedGate::X)?;
    }
    Ok(())
}

/// Executes `exp(-iθ Z^{⊗leaves}/2)` by measuring a star graph ancilla.
///
/// `theta` is the angle actually measured; sign adaptation to earlier
/// byproducts happens in the caller. The ancilla must start in `|0>` and is
/// reset to `|0>` afterwards. `forced` pins the ancilla outcome.
pub fn multi_z_rotation(
    state: &mut StateVector,
    leaves: &[usize],
    theta: f64,
    prep: AncillaPrep,
    ancilla: usize,
    rng: &mut RandomSource,
    forced: Option<bool>,
) -> Result<RotationRecord> {
    let graph = StarGraph::new(ancilla, leaves.to_vec())?;
    build_star_state(state, &graph, prep)?;
    let basis = BlochVector::new(theta, prep.azimuth());
    let outcome = state.measure(&MeasurementSpec::new(ancilla, basis), rng, forced)?;
    reset_ancilla(state, ancilla, rng)?;
    Ok(RotationRecord {
        theta_requested: theta,
        theta_executed: theta,
        kappa: prep.kappa,
        outcome,
        leaves: leaves.to_vec(),
    })
}

/// Single-qubit `R_z(φ)` by teleportation through a two-qubit graph state.
///
/// The input qubit is bonded to a fresh ancilla and measured in
/// `{(|0> + (-1)^m e^{-iφ}|1>)/√2}`. The returned ancilla state equals
/// `X^m Z^κ H R_z(φ) |ψ>` up to a global phase.
pub fn rz_teleport_gadget(
    input: &StateVector,
    phi: f64,
    prep: AncillaPrep,
    rng: &mut RandomSource,
    forced: Option<bool>,
) -> Result<(bool, StateVector)> {
    if input.num_qubits() != 1 {
        return Err(HqcmError::LengthMismatch {
            expected: 1,
            actual: input.num_qubits(),
        });
    }
    // qubit 0: logical input, qubit 1: ancilla
    let mut state = input.tensor(&StateVector::plus(prep.kappa));
    state.apply_cz(0, 1)?;
    let basis = BlochVector::new(FRAC_PI_2, -phi);
    let spec = MeasurementSpec::new(0, basis);
    let outcome = state.measure(&spec, rng, forced)?;
    let ket = if outcome { basis.down_ket() } else { basis.up_ket() };
    let out = state.project_out(0, ket)?;
    Ok((outcome, out))
}

/// The ideal output of [`multi_z_rotation`]: `(Z^{⊗S})^m exp(-iθ Z^{⊗S}/2)|ψ>`.
pub fn expected_rotation_output(
    input: &StateVector,
    leaves: &[usize],
    theta: f64,
    outcome: bool,
) -> Result<StateVector> {
    let mut s = input.clone();
    s.apply_multi_z(leaves, theta)?;
    if outcome {
        let mask = leaves.iter().fold(0, |m, &q| m | (1 << q));
        s.apply_pauli(0, mask)?;
    }
    Ok(s)
}

pub(crate) fn ket_zero() -> [Complex64; 2] {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
}
