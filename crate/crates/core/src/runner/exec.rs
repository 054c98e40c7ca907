//! Executors: the hybrid model with byproduct tracking, and the plain
//! unitary reference.

use rayon::prelude::*;

use crate::circuit::{Circuit, Gate};
use crate::error::{HqcmError, Result};
use crate::star::{ket_zero, multi_z_rotation, AncillaPrep, RotationRecord};
use crate::state::{fidelity, NamedGate, RandomSource, StateVector};
use crate::tracker::{
    adapt_axis, adapt_azimuth, correct_readout, propagate, Gf2Expr, InfoFlowVector, OutcomeSymbol,
    SymbolicFlow,
};

use super::config::{ExecutionConfig, KappaPolicy};
use super::trace::{RotationTrace, StepTrace, TraceRow, TraceTable};

/// Options for a single pass of the hybrid executor.
#[derive(Debug, Clone, Default)]
pub struct HqcmOptions<'a> {
    /// κ per rotation; `None` uses the circuit's labels.
    pub kappas: Option<&'a [bool]>,
    pub forced: Option<&'a [bool]>,
    pub trace: bool,
    pub symbolic: bool,
}

/// State and classical record after all gates, before readout.
#[derive(Debug, Clone)]
pub struct HqcmRun {
    /// Logical and work qubits; the ancilla has been removed.
    pub state: StateVector,
    pub flow: InfoFlowVector<bool>,
    pub symbolic: Option<SymbolicFlow>,
    pub records: Vec<RotationRecord>,
    pub trace: Option<TraceTable>,
}

impl HqcmRun {
    /// The state with the tracked byproduct removed.
    pub fn corrected_state(&self) -> Result<StateVector> {
        let (x, z) = self.flow.masks();
        let mut s = self.state.clone();
        s.apply_pauli(x, z)?;
        Ok(s)
    }
}

/// Runs every step of `circuit` on `initial` (logical and work qubits).
///
/// Single-qubit gates and CZ act unitarily, with single-qubit parameters
/// adapted to the current byproduct. Each rotation is measured on a star
/// graph through one recycled ancilla placed after the register, with its
/// angle sign adapted to the x-parity of its own qubits.
pub fn execute_hqcm(
    circuit: &Circuit,
    initial: &StateVector,
    options: &HqcmOptions,
    rng: &mut RandomSource,
) -> Result<HqcmRun> {
    let n = circuit.num_qubits();
    if initial.num_qubits() != n {
        return Err(HqcmError::LengthMismatch {
            expected: n,
            actual: initial.num_qubits(),
        });
    }
    let rotations = circuit.rotation_count();
    for list in [options.kappas, options.forced].into_iter().flatten() {
        if list.len() != rotations {
            return Err(HqcmError::LengthMismatch {
                expected: rotations,
                actual: list.len(),
            });
        }
    }

    let ancilla = n;
    let mut state = initial.tensor(&StateVector::zero(1));
    let mut flow = InfoFlowVector::<bool>::new(n);
    let mut symbolic = options.symbolic.then(|| SymbolicFlow::new(n));
    let mut records = Vec::with_capacity(rotations);
    let mut rows = Vec::new();
    let built_kappas = circuit.kappas();
    let kappas = options.kappas.unwrap_or(&built_kappas);

    for (s, step) in circuit.steps().iter().enumerate() {
        let tau = s + 1;
        let mut step_trace = options.trace.then(|| StepTrace {
            gates: step.gates().to_vec(),
            rotations: Vec::new(),
        });
        let row_flow = (flow.clone(), symbolic.clone());
        let mut index = 0;
        for gate in step.gates() {
            match gate {
                Gate::MultiZRot { leaves, angle, .. } => {
                    index += 1;
                    let r = records.len();
                    let kappa = kappas[r];
                    let sign = flow.rotation_parity(leaves)?;
                    let executed = if sign { -angle } else { *angle };
                    let forced = options.forced.map(|f| f[r]);
                    let mut rec =
                        multi_z_rotation(&mut state, leaves, executed, AncillaPrep::new(kappa), ancilla, rng, forced)?;
                    rec.theta_requested = *angle;
                    flow.absorb_rotation_outcome(leaves, &rec.outcome)?;
                    let symbol = OutcomeSymbol::new(tau, index);
                    let mut sign_symbolic = None;
                    if let Some(sym) = symbolic.as_mut() {
                        sign_symbolic = Some(sym.rotation_parity(leaves)?);
                        sym.absorb_rotation_outcome(leaves, &Gf2Expr::symbol(symbol))?;
                    }
                    if let Some(t) = step_trace.as_mut() {
                        t.rotations.push(RotationTrace {
                            symbol,
                            leaves: leaves.clone(),
                            theta_requested: *angle,
                            sign,
                            sign_symbolic,
                            theta_executed: executed,
                            kappa,
                            azimuth: adapt_azimuth(kappa),
                            outcome: rec.outcome,
                        });
                    }
                    records.push(rec);
                }
                Gate::SingleQubit { qubit, axis, angle } => {
                    let q = *qubit;
                    let adapted = adapt_axis(flow.x()[q], flow.z()[q], *axis);
                    state.apply_single_qubit(q, &adapted, *angle)?;
                }
                Gate::Named { qubit, gate: g } => {
                    let actual = match *g {
                        NamedGate::Rz(phi) if flow.x()[*qubit] => NamedGate::Rz(-phi),
                        other => other,
                    };
                    state.apply_named(*qubit, actual)?;
                    let fg = gate.flow_gate();
                    flow = propagate(&flow, &fg)?;
                    if let Some(sym) = symbolic.as_mut() {
                        *sym = propagate(sym, &fg)?;
                    }
                }
                Gate::Cz(a, b) => {
                    state.apply_cz(*a, *b)?;
                    let fg = gate.flow_gate();
                    flow = propagate(&flow, &fg)?;
                    if let Some(sym) = symbolic.as_mut() {
                        *sym = propagate(sym, &fg)?;
                    }
                }
            }
        }
        if options.trace {
            rows.push(TraceRow {
                tau: tau - 1,
                flow: row_flow.0,
                symbolic: row_flow.1,
                next: step_trace,
            });
        }
    }
    let trace = options.trace.then(|| {
        rows.push(TraceRow {
            tau: circuit.tau_max(),
            flow: flow.clone(),
            symbolic: symbolic.clone(),
            next: None,
        });
        TraceTable { rows }
    });

    let state = state.project_out(ancilla, ket_zero())?;
    Ok(HqcmRun {
        state,
        flow,
        symbolic,
        records,
        trace,
    })
}

/// Applies every gate as a unitary; rotations become diagonal phases.
pub fn execute_unitary(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if initial.num_qubits() != circuit.num_qubits() {
        return Err(HqcmError::LengthMismatch {
            expected: circuit.num_qubits(),
            actual: initial.num_qubits(),
        });
    }
    let mut s = initial.clone();
    for gate in circuit.gates() {
        match gate {
            Gate::SingleQubit { qubit, axis, angle } => s.apply_single_qubit(*qubit, axis, *angle)?,
            Gate::Named { qubit, gate } => s.apply_named(*qubit, *gate)?,
            Gate::Cz(a, b) => s.apply_cz(*a, *b)?,
            Gate::MultiZRot { leaves, angle, .. } => s.apply_multi_z(leaves, *angle)?,
        }
    }
    Ok(s)
}

/// One HQCM shot.
#[derive(Debug, Clone)]
pub struct ShotResult {
    pub shot: usize,
    /// Raw Z readout `s` of all logical and work qubits.
    pub raw: Vec<bool>,
    /// `ś = s ⊕ I_x`.
    pub corrected: Vec<bool>,
    pub flow: InfoFlowVector<bool>,
    pub records: Vec<RotationRecord>,
    /// Against the unitary reference, when one was computed.
    pub fidelity: Option<f64>,
    pub trace: Option<TraceTable>,
    pub symbolic: Option<SymbolicFlow>,
}

/// Qubits that appear in readouts and histograms.
pub fn reported_qubits(circuit: &Circuit, include_work: bool) -> Vec<usize> {
    if include_work {
        (0..circuit.num_qubits()).collect()
    } else {
        circuit.logical_qubits().collect()
    }
}

/// The default input: logical qubits in `|0>`, work qubits in `|+>`.
pub fn default_input(circuit: &Circuit) -> Result<StateVector> {
    circuit.initial_state(&StateVector::zero(circuit.num_logical()))
}

fn run_shot(
    circuit: &Circuit,
    initial: &StateVector,
    config: &ExecutionConfig,
    reference: Option<&StateVector>,
    shot: usize,
) -> Result<ShotResult> {
    let mut rng = RandomSource::new(config.seed, shot as u64);
    let drawn: Vec<bool>;
    let kappas = match &config.kappa {
        KappaPolicy::AsBuilt => None,
        KappaPolicy::PerRotation(k) => Some(k.as_slice()),
        KappaPolicy::Random => {
            drawn = (0..circuit.rotation_count()).map(|_| rng.bit()).collect();
            Some(drawn.as_slice())
        }
    };
    let options = HqcmOptions {
        kappas,
        forced: config.forced_outcomes.as_deref(),
        trace: (config.trace || config.symbolic) && shot == 0,
        symbolic: config.symbolic,
    };
    let run = execute_hqcm(circuit, initial, &options, &mut rng)?;
    let fidelity = match reference {
        Some(r) => Some(fidelity(&run.corrected_state()?, r)?),
        None => None,
    };
    let mut state = run.state;
    let all: Vec<usize> = (0..circuit.num_qubits()).collect();
    let raw = state.measure_z(&all, &mut rng)?;
    let corrected = correct_readout(&raw, &run.flow)?;
    Ok(ShotResult {
        shot,
        raw,
        corrected,
        flow: run.flow,
        records: run.records,
        fidelity,
        trace: run.trace,
        symbolic: run.symbolic,
    })
}

/// All shots of the hybrid executor from the default input. Shots run in
/// parallel, each on its own random stream, and are returned in order.
pub fn run_hqcm(circuit: &Circuit, config: &ExecutionConfig) -> Result<Vec<ShotResult>> {
    run_hqcm_from(circuit, &default_input(circuit)?, config, None)
}

/// As [`run_hqcm`] from a given input, optionally scoring each shot's
/// corrected pre-readout state against `reference`.
pub fn run_hqcm_from(
    circuit: &Circuit,
    initial: &StateVector,
    config: &ExecutionConfig,
    reference: Option<&StateVector>,
) -> Result<Vec<ShotResult>> {
    config.validate()?;
    (0..config.shots)
        .into_par_iter()
        .map(|shot| run_shot(circuit, initial, config, reference, shot))
        .collect()
}

/// Final state from the default input and the distribution of the reported
/// qubits, indexed with the first reported qubit as the lowest bit.
pub fn run_unitary(circuit: &Circuit, config: &ExecutionConfig) -> Result<(StateVector, Vec<f64>)> {
    let state = execute_unitary(circuit, &default_input(circuit)?)?;
    let dist = state.marginal_distribution(&reported_qubits(circuit, config.include_work))?;
    Ok((state, dist))
}

/// Counts of each reported readout, indexed like [`run_unitary`].
pub fn histogram(shots: &[ShotResult], reported: &[usize]) -> Vec<usize> {
    let mut counts = vec![0; 1 << reported.len()];
    for s in shots {
        counts[readout_index(&s.corrected, reported)] += 1;
    }
    counts
}

pub fn readout_index(bits: &[bool], reported: &[usize]) -> usize {
    reported
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | (usize::from(bits[q]) << k))
}

/// `½ Σ |p - q|` between an empirical histogram and a distribution.
pub fn total_variation(counts: &[usize], dist: &[f64]) -> Result<f64> {
    if counts.len() != dist.len() {
        return Err(HqcmError::LengthMismatch {
            expected: dist.len(),
            actual: counts.len(),
        });
    }
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(HqcmError::input("empty histogram"));
    }
    let total = total as f64;
    Ok(0.5 * counts.iter().zip(dist).map(|(&c, &p)| (c as f64 / total - p).abs()).sum::<f64>())
}
