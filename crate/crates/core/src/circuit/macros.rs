//! Controlled-rotation decompositions into multi-qubit Z rotations, the
//! work-qubit ladder for multi-controlled Z, and Grover's search.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{HqcmError, Result};

use super::ir::{Circuit, Gate, Step};

fn check_disjoint(groups: &[&[usize]]) -> Result<()> {
    let mut seen: Vec<usize> = Vec::new();
    for group in groups {
        for &q in *group {
            if seen.contains(&q) {
                return Err(HqcmError::SameQubit(q));
            }
            seen.push(q);
        }
    }
    Ok(())
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect()
}

/// `Λ¹ U^T(angle)` with `angle = -2θ`, as `U^{T}(-θ) · U^{cT}(θ)`; the
/// rotation on `{control} ∪ targets` runs first.
pub fn expand_lambda1(control: usize, targets: &[usize], angle: f64) -> Result<Vec<Gate>> {
    if targets.is_empty() {
        return Err(HqcmError::input("controlled rotation needs at least one target"));
    }
    check_disjoint(&[&[control], targets])?;
    let theta = -angle / 2.0;
    Ok(vec![
        Gate::rotation(union(&[control], targets), theta),
        Gate::rotation(targets.to_vec(), -theta),
    ])
}

/// `Λ^{12} U^T(angle)` with `angle = 4θ`, as four rotations executed in the
/// order `{1,2,T}: θ`, `{2,T}: -θ`, `{1,T}: -θ`, `{T}: θ`.
pub fn expand_lambda2(controls: [usize; 2], targets: &[usize], angle: f64) -> Result<Vec<Gate>> {
    if targets.is_empty() {
        return Err(HqcmError::input("controlled rotation needs at least one target"));
    }
    check_disjoint(&[&controls, targets])?;
    let theta = angle / 4.0;
    let [c1, c2] = controls;
    Ok(vec![
        Gate::rotation(union(&controls, targets), theta),
        Gate::rotation(union(&[c2], targets), -theta),
        Gate::rotation(union(&[c1], targets), -theta),
        Gate::rotation(targets.to_vec(), theta),
    ])
}

fn and_block(controls: [usize; 2], work: usize, sign: f64) -> Result<Step> {
    Step::new(expand_lambda2(controls, &[work], sign * 4.0 * FRAC_PI_4)?)
}

/// Multi-controlled Z as computation steps.
///
/// With `c ≥ 2` controls and `c - 1` work qubits in `|+>`, pairwise ANDs are
/// computed left to right by `Λ² U_z(π)` blocks followed by `H`, the last
/// work qubit drives `CZ` onto the target, and the ladder is undone in
/// reverse with `Λ² U_z(-π)`. One control degenerates to a plain `CZ`.
pub fn lambda_z_steps(controls: &[usize], target: usize, work: &[usize]) -> Result<Vec<Step>> {
    let c = controls.len();
    if c == 0 {
        return Err(HqcmError::input("multi-controlled Z needs at least one control"));
    }
    if work.len() != c - 1 {
        return Err(HqcmError::input(format!(
            "{c} controls need {} work qubits, got {}",
            c - 1,
            work.len()
        )));
    }
    check_disjoint(&[controls, &[target], work])?;
    if c == 1 {
        return Ok(vec![Step::single(Gate::Cz(controls[0], target))]);
    }

    let pair = |k: usize| -> [usize; 2] {
        if k == 0 {
            [controls[0], controls[1]]
        } else {
            [controls[k + 1], work[k - 1]]
        }
    };

    let mut steps = Vec::with_capacity(4 * (c - 1) + 1);
    for (k, &w) in work.iter().enumerate() {
        steps.push(and_block(pair(k), w, 1.0)?);
        steps.push(Step::single(Gate::h(w)));
    }
    steps.push(Step::single(Gate::Cz(work[c - 2], target)));
    for (k, &w) in work.iter().enumerate().rev() {
        steps.push(Step::single(Gate::h(w)));
        steps.push(and_block(pair(k), w, -1.0)?);
    }
    Ok(steps)
}

/// Flattened [`lambda_z_steps`].
pub fn expand_lambda_z(controls: &[usize], target: usize, work: &[usize]) -> Result<Vec<Gate>> {
    Ok(flatten(lambda_z_steps(controls, target, work)?))
}

fn flatten(steps: Vec<Step>) -> Vec<Gate> {
    steps.into_iter().flat_map(|s| s.gates().to_vec()).collect()
}

fn grover_work(n: usize) -> Vec<usize> {
    (n..n + n.saturating_sub(2)).collect()
}

fn lambda_z_on_register(n: usize) -> Result<Vec<Step>> {
    let controls: Vec<usize> = (0..n - 1).collect();
    lambda_z_steps(&controls, n - 1, &grover_work(n))
}

fn check_register(n: usize) -> Result<()> {
    if n < 2 {
        return Err(HqcmError::input("Grover components need at least 2 qubits"));
    }
    if n > 24 {
        return Err(HqcmError::input("register too large for a dense simulation"));
    }
    Ok(())
}

/// Oracle `I - 2|j><j|` on qubits `0..n`, using work qubits `n..2n-2`.
pub fn oracle_steps(n: usize, marked: usize) -> Result<Vec<Step>> {
    check_register(n)?;
    if marked >= 1 << n {
        return Err(HqcmError::input(format!("marked item {marked} out of range for {n} qubits")));
    }
    let flips: Vec<Step> = (0..n)
        .filter(|q| (marked >> q) & 1 == 0)
        .map(|q| Step::single(Gate::x(q)))
        .collect();
    let mut steps = flips.clone();
    steps.extend(lambda_z_on_register(n)?);
    steps.extend(flips);
    Ok(steps)
}

pub fn build_oracle(n: usize, marked: usize) -> Result<Vec<Gate>> {
    Ok(flatten(oracle_steps(n, marked)?))
}

/// Diffusion `H^n X^n [Λ Z] X^n H^n`, i.e. `I - 2|s><s|`; the overall sign
/// is irrelevant for measurement statistics and dropped.
pub fn diffusion_steps(n: usize) -> Result<Vec<Step>> {
    check_register(n)?;
    let layer = |gate: fn(usize) -> Gate| (0..n).map(move |q| Step::single(gate(q)));
    let mut steps: Vec<Step> = layer(Gate::h).chain(layer(Gate::x)).collect();
    steps.extend(lambda_z_on_register(n)?);
    steps.extend(layer(Gate::x).chain(layer(Gate::h)));
    Ok(steps)
}

pub fn build_diffusion(n: usize) -> Result<Vec<Gate>> {
    Ok(flatten(diffusion_steps(n)?))
}

/// `⌊(π/4) √(2^n)⌋`.
pub fn grover_iterations(n: usize) -> usize {
    (PI / 4.0 * ((1u64 << n) as f64).sqrt()).floor() as usize
}

/// Work qubits Grover needs on `n` logical qubits.
pub fn grover_work_count(n: usize) -> usize {
    n.saturating_sub(2)
}

/// The Grover steps on qubits `0..n`: `H^n`, then `iterations` rounds of
/// oracle and diffusion.
pub fn grover_steps(n: usize, marked: usize, iterations: Option<usize>) -> Result<Vec<Step>> {
    check_register(n)?;
    let iterations = iterations.unwrap_or_else(|| grover_iterations(n));
    let mut steps: Vec<Step> = (0..n).map(|q| Step::single(Gate::h(q))).collect();
    let oracle = oracle_steps(n, marked)?;
    let diffusion = diffusion_steps(n)?;
    for _ in 0..iterations {
        steps.extend(oracle.iter().cloned());
        steps.extend(diffusion.iter().cloned());
    }
    Ok(steps)
}

/// Complete Grover circuit on `n` logical qubits plus `n - 2` work qubits.
pub fn build_grover(n: usize, marked: usize, iterations: Option<usize>) -> Result<Circuit> {
    let mut circuit = Circuit::new(n, grover_work_count(n));
    circuit.extend_steps(grover_steps(n, marked, iterations)?)?;
    Ok(circuit)
}

/// Macro gates accepted by circuit builders and the text format.
#[derive(Debug, Clone, PartialEq)]
pub enum MacroGate {
    Lambda1 { control: usize, targets: Vec<usize>, angle: f64 },
    Lambda2 { controls: [usize; 2], targets: Vec<usize>, angle: f64 },
    /// Work qubits are taken from the start of the circuit's work register.
    LambdaZ { controls: Vec<usize>, target: usize },
    Oracle { n: usize, marked: usize },
    Diffusion { n: usize },
    Grover { n: usize, marked: usize, iterations: Option<usize> },
}

impl MacroGate {
    /// Expands against `circuit`'s register layout.
    pub fn steps(&self, circuit: &Circuit) -> Result<Vec<Step>> {
        let need_work = |count: usize| -> Result<Vec<usize>> {
            if count > circuit.num_work() {
                return Err(HqcmError::input(format!(
                    "needs {count} work qubits, circuit declares {}",
                    circuit.num_work()
                )));
            }
            Ok(circuit.work_qubits().take(count).collect())
        };
        let need_logical = |n: usize| -> Result<()> {
            if n > circuit.num_logical() {
                return Err(HqcmError::input(format!(
                    "needs {n} logical qubits, circuit declares {}",
                    circuit.num_logical()
                )));
            }
            Ok(())
        };
        match self {
            MacroGate::Lambda1 {
                control,
                targets,
                angle,
            } => Ok(vec![Step::new(expand_lambda1(*control, targets, *angle)?)?]),
            MacroGate::Lambda2 {
                controls,
                targets,
                angle,
            } => Ok(vec![Step::new(expand_lambda2(*controls, targets, *angle)?)?]),
            MacroGate::LambdaZ { controls, target } => {
                let work = need_work(controls.len().saturating_sub(1))?;
                lambda_z_steps(controls, *target, &work)
            }
            MacroGate::Oracle { n, marked } => {
                need_logical(*n)?;
                remap_work(oracle_steps(*n, *marked)?, *n, &need_work(grover_work_count(*n))?)
            }
            MacroGate::Diffusion { n } => {
                need_logical(*n)?;
                remap_work(diffusion_steps(*n)?, *n, &need_work(grover_work_count(*n))?)
            }
            MacroGate::Grover {
                n,
                marked,
                iterations,
            } => {
                need_logical(*n)?;
                remap_work(
                    grover_steps(*n, *marked, *iterations)?,
                    *n,
                    &need_work(grover_work_count(*n))?,
                )
            }
        }
    }
}

/// Moves Grover-style work indices `n..` onto the given work qubits.
fn remap_work(steps: Vec<Step>, n: usize, work: &[usize]) -> Result<Vec<Step>> {
    let map = |q: usize| if q >= n { work[q - n] } else { q };
    steps
        .into_iter()
        .map(|s| {
            let gates = s
                .gates()
                .iter()
                .map(|g| match g.clone() {
                    Gate::SingleQubit { qubit, axis, angle } => Gate::SingleQubit {
                        qubit: map(qubit),
                        axis,
                        angle,
                    },
                    Gate::Named { qubit, gate } => Gate::Named { qubit: map(qubit), gate },
                    Gate::Cz(a, b) => Gate::Cz(map(a), map(b)),
                    Gate::MultiZRot { leaves, angle, kappa } => Gate::MultiZRot {
                        leaves: leaves.into_iter().map(map).collect(),
                        angle,
                        kappa,
                    },
                })
                .collect();
            Step::new(gates)
        })
        .collect()
}
