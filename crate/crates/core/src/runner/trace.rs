//! Per-step record of the classical side of a run, and its replay.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::{format_angle, Circuit, Gate};
use crate::error::{HqcmError, Result};
use crate::tracker::{propagate, Gf2Expr, InfoFlowVector, OutcomeSymbol, SymbolicFlow};

/// Classical record of one rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationTrace {
    pub symbol: OutcomeSymbol,
    pub leaves: Vec<usize>,
    pub theta_requested: f64,
    /// Whether the measured angle was negated.
    pub sign: bool,
    pub sign_symbolic: Option<Gf2Expr>,
    pub theta_executed: f64,
    pub kappa: bool,
    pub azimuth: f64,
    pub outcome: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepTrace {
    pub gates: Vec<Gate>,
    pub rotations: Vec<RotationTrace>,
}

/// Flow after `tau` steps, and what happened in step `tau + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub tau: usize,
    pub flow: InfoFlowVector<bool>,
    pub symbolic: Option<SymbolicFlow>,
    pub next: Option<StepTrace>,
}

/// Rows `τ = 0..=τ_max`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceTable {
    pub rows: Vec<TraceRow>,
}

impl TraceTable {
    /// Outcomes in execution order.
    pub fn outcomes(&self) -> Vec<bool> {
        self.rotations().map(|r| r.outcome).collect()
    }

    pub fn rotations(&self) -> impl Iterator<Item = &RotationTrace> {
        self.rows.iter().filter_map(|r| r.next.as_ref()).flat_map(|s| s.rotations.iter())
    }

    /// Number of rotations in each step that has more than one, keyed by τ.
    pub fn outcome_groups(&self) -> BTreeMap<usize, usize> {
        self.rows
            .iter()
            .filter_map(|r| r.next.as_ref().map(|s| (r.tau + 1, s.rotations.len())))
            .filter(|&(_, k)| k > 1)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let groups = self.outcome_groups();
        let bits = |v: &[bool]| v.iter().map(|&b| u8::from(b).to_string()).collect::<Vec<_>>();
        let exprs = |v: &[Gf2Expr]| v.iter().map(|e| e.display_grouped(&groups)).collect::<Vec<_>>();
        let rows: Vec<TraceRowJson> = self
            .rows
            .iter()
            .map(|row| TraceRowJson {
                tau: row.tau,
                x: bits(row.flow.x()),
                z: bits(row.flow.z()),
                x_symbolic: row.symbolic.as_ref().map(|s| exprs(s.x())),
                z_symbolic: row.symbolic.as_ref().map(|s| exprs(s.z())),
                next_step: row.next.as_ref().map(|step| StepJson {
                    gates: step.gates.iter().map(Gate::to_text).collect(),
                    rotations: step
                        .rotations
                        .iter()
                        .map(|r| RotationJson {
                            symbol: r.symbol.to_string(),
                            leaves: r.leaves.iter().map(|q| q + 1).collect(),
                            theta_requested: r.theta_requested,
                            sign: u8::from(r.sign),
                            sign_symbolic: r.sign_symbolic.as_ref().map(|e| e.display_grouped(&groups)),
                            theta_executed: r.theta_executed,
                            kappa: u8::from(r.kappa),
                            azimuth: r.azimuth,
                            outcome: u8::from(r.outcome),
                        })
                        .collect(),
                }),
            })
            .collect();
        serde_json::to_value(rows).expect("trace rows serialize")
    }
}

#[derive(Serialize)]
struct TraceRowJson {
    tau: usize,
    x: Vec<String>,
    z: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_symbolic: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_symbolic: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    next_step: Option<StepJson>,
}

#[derive(Serialize)]
struct StepJson {
    gates: Vec<String>,
    rotations: Vec<RotationJson>,
}

#[derive(Serialize)]
struct RotationJson {
    symbol: String,
    leaves: Vec<usize>,
    theta_requested: f64,
    sign: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    sign_symbolic: Option<String>,
    theta_executed: f64,
    kappa: u8,
    azimuth: f64,
    outcome: u8,
}

/// Recomputes every row's flow from the circuit and the recorded outcomes
/// alone, with no quantum state involved.
pub fn replay_trace(circuit: &Circuit, trace: &TraceTable) -> Result<Vec<InfoFlowVector<bool>>> {
    let outcomes = trace.outcomes();
    if outcomes.len() != circuit.rotation_count() {
        return Err(HqcmError::LengthMismatch {
            expected: circuit.rotation_count(),
            actual: outcomes.len(),
        });
    }
    let mut it = outcomes.into_iter();
    let mut flow = InfoFlowVector::<bool>::new(circuit.num_qubits());
    let mut flows = vec![flow.clone()];
    for step in circuit.steps() {
        for gate in step.gates() {
            match gate {
                Gate::MultiZRot { leaves, .. } => {
                    let m = it.next().expect("count checked");
                    flow.absorb_rotation_outcome(leaves, &m)?;
                }
                other => flow = propagate(&flow, &other.flow_gate())?,
            }
        }
        flows.push(flow.clone());
    }
    Ok(flows)
}

fn angle_label(angle: f64, unit: Option<(f64, &str)>) -> String {
    if let Some((u, name)) = unit {
        let r = angle / u;
        if (r - r.round()).abs() < 1e-9 {
            return match r.round() as i64 {
                0 => "0".into(),
                1 => name.into(),
                -1 => format!("-{name}"),
                k => format!("{k}{name}"),
            };
        }
    }
    format_angle(angle)
}

fn column(values: Vec<String>) -> String {
    format!("({})", values.join(", "))
}

/// Plain-text rendering of a trace.
///
/// `order` lists the qubits (0-based) in the order their entries should be
/// printed; labels in the output count 1-based along that order. `unit`
/// names a reference angle so that e.g. `π/4` prints as `θ`.
pub fn render_trace(trace: &TraceTable, order: &[usize], unit: Option<(f64, &str)>) -> Result<String> {
    let n = trace.rows.first().map_or(0, |r| r.flow.n());
    let mut seen = vec![false; n];
    for &q in order {
        if q >= n || std::mem::replace(&mut seen[q], true) {
            return Err(HqcmError::input("display order must be a permutation of the register"));
        }
    }
    if order.len() != n {
        return Err(HqcmError::input("display order must be a permutation of the register"));
    }
    let label = |q: usize| order.iter().position(|&p| p == q).expect("permutation") + 1;
    let groups = trace.outcome_groups();
    let mut out = String::new();
    for row in &trace.rows {
        let (x, z): (Vec<String>, Vec<String>) = match &row.symbolic {
            Some(s) => (
                order.iter().map(|&q| s.x()[q].display_grouped(&groups)).collect(),
                order.iter().map(|&q| s.z()[q].display_grouped(&groups)).collect(),
            ),
            None => (
                order.iter().map(|&q| u8::from(row.flow.x()[q]).to_string()).collect(),
                order.iter().map(|&q| u8::from(row.flow.z()[q]).to_string()).collect(),
            ),
        };
        writeln!(out, "tau {}", row.tau).unwrap();
        writeln!(out, "  I_x = {}", column(x)).unwrap();
        writeln!(out, "  I_z = {}", column(z)).unwrap();
        let Some(step) = &row.next else { continue };
        if step.rotations.is_empty() {
            let gates: Vec<String> = step.gates.iter().map(|g| relabel(g, &label)).collect();
            writeln!(out, "  next: {}", gates.join("; ")).unwrap();
            continue;
        }
        writeln!(out, "  next:").unwrap();
        for r in &step.rotations {
            let mut leaves: Vec<usize> = r.leaves.iter().map(|&q| label(q)).collect();
            leaves.sort_unstable();
            let leaves: Vec<String> = leaves.iter().map(usize::to_string).collect();
            let requested = angle_label(r.theta_requested, unit);
            let gate = format!("U[{}]({requested})", leaves.join(","));
            let change = match &r.sign_symbolic {
                Some(e) if e.is_empty() => "no change".to_string(),
                Some(e) => {
                    let (neg, mag) = match requested.strip_prefix('-') {
                        Some(m) => ("-", m),
                        None => ("", requested.as_str()),
                    };
                    format!("{requested} -> {neg}(-1)^({}){mag}", e.display_grouped(&groups))
                }
                None if r.sign => format!("{requested} -> {}", angle_label(-r.theta_requested, unit)),
                None => "no change".to_string(),
            };
            let outcome = if row.symbolic.is_some() {
                r.symbol.to_string()
            } else {
                u8::from(r.outcome).to_string()
            };
            writeln!(out, "    {gate:<16} {change:<36} {outcome}").unwrap();
        }
        if step.rotations.len() > 1 && row.symbolic.is_some() {
            let all: Vec<String> = step.rotations.iter().map(|r| r.symbol.to_string()).collect();
            writeln!(out, "    m{} = {}", row.tau + 1, all.join("+")).unwrap();
        }
    }
    Ok(out)
}

fn relabel(gate: &Gate, label: &dyn Fn(usize) -> usize) -> String {
    match gate {
        Gate::Cz(a, b) => format!("CZ {} {}", label(*a), label(*b)),
        other => {
            let q = other.qubits()[0];
            let text = other.to_text();
            let mut parts: Vec<&str> = text.split(' ').collect();
            let l = label(q).to_string();
            parts[1] = &l;
            parts.join(" ")
        }
    }
}
