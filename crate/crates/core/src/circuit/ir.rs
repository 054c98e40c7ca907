use std::ops::Range;

use crate::error::{HqcmError, Result};
use crate::state::{BlochVector, NamedGate, StateVector};
use crate::tracker::FlowGate;

use super::parse::format_angle;

/// Elementary gate. Qubit indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `exp(-i α (r·σ)/2)` about `axis`.
    SingleQubit { qubit: usize, axis: BlochVector, angle: f64 },
    Named { qubit: usize, gate: NamedGate },
    Cz(usize, usize),
    /// `exp(-i θ Z^{⊗leaves}/2)`, executed on a star graph with ancilla
    /// preparation label `kappa`.
    MultiZRot { leaves: Vec<usize>, angle: f64, kappa: bool },
}

impl Gate {
    pub fn named(qubit: usize, gate: NamedGate) -> Self {
        Gate::Named { qubit, gate }
    }

    pub fn h(qubit: usize) -> Self {
        Gate::named(qubit, NamedGate::H)
    }

    pub fn x(qubit: usize) -> Self {
        Gate::named(qubit, NamedGate::X)
    }

    pub fn rotation(leaves: Vec<usize>, angle: f64) -> Self {
        Gate::MultiZRot {
            leaves,
            angle,
            kappa: false,
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Gate::MultiZRot { .. })
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::SingleQubit { qubit, .. } | Gate::Named { qubit, .. } => vec![*qubit],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::MultiZRot { leaves, .. } => leaves.clone(),
        }
    }

    /// Checks indices against a register of `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if qubits.is_empty() {
            return Err(HqcmError::input("multi-qubit rotation needs at least one qubit"));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(HqcmError::QubitOutOfRange { qubit: q, num_qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(HqcmError::SameQubit(q));
            }
        }
        Ok(())
    }

    /// One line of the circuit text format (1-based indices).
    pub fn to_text(&self) -> String {
        match self {
            Gate::SingleQubit { qubit, axis, angle } => format!(
                "SQ {} {} {} {}",
                qubit + 1,
                format_angle(axis.theta),
                format_angle(axis.phi),
                format_angle(*angle)
            ),
            Gate::Named { qubit, gate } => match gate {
                NamedGate::X => format!("X {}", qubit + 1),
                NamedGate::Z => format!("Z {}", qubit + 1),
                NamedGate::H => format!("H {}", qubit + 1),
                NamedGate::Rz(phi) => format!("RZ {} {}", qubit + 1, format_angle(*phi)),
            },
            Gate::Cz(a, b) => format!("CZ {} {}", a + 1, b + 1),
            Gate::MultiZRot { leaves, angle, .. } => {
                let qs: Vec<String> = leaves.iter().map(|q| (q + 1).to_string()).collect();
                format!("MZROT {} {}", format_angle(*angle), qs.join(" "))
            }
        }
    }

    /// How the byproduct propagates through this gate.
    pub fn flow_gate(&self) -> FlowGate {
        match self {
            Gate::Named {
                qubit,
                gate: NamedGate::H,
            } => FlowGate::Hadamard(*qubit),
            Gate::Named { qubit, .. } | Gate::SingleQubit { qubit, .. } => FlowGate::Rotation(*qubit),
            Gate::Cz(a, b) => FlowGate::Cz(*a, *b),
            Gate::MultiZRot { leaves, .. } => FlowGate::MultiZRot(leaves.clone()),
        }
    }
}

/// One computation step: a single gate, or a block of rotations that form
/// one controlled gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    gates: Vec<Gate>,
}

impl Step {
    pub fn single(gate: Gate) -> Self {
        Step { gates: vec![gate] }
    }

    /// Multi-gate steps may only hold rotations.
    pub fn new(gates: Vec<Gate>) -> Result<Self> {
        if gates.is_empty() {
            return Err(HqcmError::input("empty step"));
        }
        if gates.len() > 1 && !gates.iter().all(Gate::is_rotation) {
            return Err(HqcmError::input(
                "a multi-gate step may only contain multi-qubit rotations",
            ));
        }
        Ok(Step { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn rotation_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_rotation()).count()
    }
}

/// Logical qubits `0..num_logical`, then work qubits. Work qubits start in
/// `|+>` and are expected to be returned there.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_logical: usize,
    num_work: usize,
    steps: Vec<Step>,
}

impl Circuit {
    pub fn new(num_logical: usize, num_work: usize) -> Self {
        Circuit {
            num_logical,
            num_work,
            steps: Vec::new(),
        }
    }

    pub fn num_logical(&self) -> usize {
        self.num_logical
    }

    pub fn num_work(&self) -> usize {
        self.num_work
    }

    /// Logical plus work qubits (the ancilla is not counted).
    pub fn num_qubits(&self) -> usize {
        self.num_logical + self.num_work
    }

    pub fn logical_qubits(&self) -> Range<usize> {
        0..self.num_logical
    }

    pub fn work_qubits(&self) -> Range<usize> {
        self.num_logical..self.num_qubits()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of computation steps.
    pub fn tau_max(&self) -> usize {
        self.steps.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.steps.iter().flat_map(|s| s.gates.iter())
    }

    pub fn gate_count(&self) -> usize {
        self.steps.iter().map(|s| s.gates.len()).sum()
    }

    pub fn rotation_count(&self) -> usize {
        self.steps.iter().map(Step::rotation_count).sum()
    }

    pub fn push_step(&mut self, step: Step) -> Result<()> {
        for g in &step.gates {
            g.validate(self.num_qubits())?;
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.push_step(Step::single(gate))
    }

    pub fn extend_steps(&mut self, steps: impl IntoIterator<Item = Step>) -> Result<()> {
        for s in steps {
            self.push_step(s)?;
        }
        Ok(())
    }

    /// Flat text form; step grouping and ancilla labels are not kept.
    pub fn to_text(&self) -> String {
        let mut out = if self.num_work > 0 {
            format!("qubits {} work {}\n", self.num_logical, self.num_work)
        } else {
            format!("qubits {}\n", self.num_logical)
        };
        for g in self.gates() {
            out.push_str(&g.to_text());
            out.push('\n');
        }
        out
    }

    /// Ancilla labels of all rotations in execution order.
    pub fn kappas(&self) -> Vec<bool> {
        self.gates()
            .filter_map(|g| match g {
                Gate::MultiZRot { kappa, .. } => Some(*kappa),
                _ => None,
            })
            .collect()
    }

    /// `|ψ> ⊗ |+>^{⊗num_work}` for a logical input `|ψ>`.
    pub fn initial_state(&self, logical: &StateVector) -> Result<StateVector> {
        if logical.num_qubits() != self.num_logical {
            return Err(HqcmError::LengthMismatch {
                expected: self.num_logical,
                actual: logical.num_qubits(),
            });
        }
        let mut s = logical.clone();
        for _ in 0..self.num_work {
            s = s.tensor(&StateVector::plus(false));
        }
        Ok(s)
    }

    /// Overrides the ancilla label of every rotation, in execution order.
    pub fn set_kappas(&mut self, kappas: &[bool]) -> Result<()> {
        if kappas.len() != self.rotation_count() {
            return Err(HqcmError::LengthMismatch {
                expected: self.rotation_count(),
                actual: kappas.len(),
            });
        }
        let mut it = kappas.iter();
        for step in &mut self.steps {
            for g in &mut step.gates {
                if let Gate::MultiZRot { kappa, .. } = g {
                    *kappa = *it.next().expect("length checked");
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_indices() {
        let mut c = Circuit::new(2, 1);
        assert!(c.push(Gate::h(2)).is_ok());
        assert!(c.push(Gate::h(3)).is_err());
        assert!(c.push(Gate::Cz(1, 1)).is_err());
        assert!(c.push(Gate::rotation(vec![], 0.1)).is_err());
        assert!(c.push(Gate::rotation(vec![0, 0], 0.1)).is_err());
        assert_eq!(c.tau_max(), 1);
    }

    #[test]
    fn mixed_steps_are_rejected() {
        assert!(Step::new(vec![Gate::h(0), Gate::rotation(vec![0], 1.0)]).is_err());
        assert!(Step::new(vec![Gate::rotation(vec![1], 1.0), Gate::rotation(vec![0], 1.0)]).is_ok());
        assert!(Step::new(vec![]).is_err());
    }

    #[test]
    fn counts_and_ranges() {
        let mut c = Circuit::new(3, 2);
        c.push_step(Step::new(vec![Gate::rotation(vec![0, 1], 0.3), Gate::rotation(vec![1], -0.3)]).unwrap())
            .unwrap();
        c.push(Gate::h(3)).unwrap();
        assert_eq!(c.tau_max(), 2);
        assert_eq!(c.gate_count(), 3);
        assert_eq!(c.rotation_count(), 2);
        assert_eq!(c.work_qubits(), 3..5);
        c.set_kappas(&[true, false]).unwrap();
        assert!(matches!(c.gates().next(), Some(Gate::MultiZRot { kappa: true, .. })));
        assert!(c.set_kappas(&[true]).is_err());
    }
}
