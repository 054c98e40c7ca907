use serde::Serialize;

use crate::error::{HqcmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hqcm,
    Unitary,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = HqcmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hqcm" => Ok(Mode::Hqcm),
            "unitary" => Ok(Mode::Unitary),
            "both" => Ok(Mode::Both),
            _ => Err(HqcmError::input(format!("unknown mode '{s}' (hqcm, unitary, both)"))),
        }
    }
}

/// How ancilla labels κ are chosen for the rotations of a run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "policy", content = "kappas")]
pub enum KappaPolicy {
    /// The labels stored in the circuit (all zero unless set).
    #[default]
    AsBuilt,
    /// One label per rotation, in execution order.
    PerRotation(Vec<bool>),
    /// Fresh uniform labels for every rotation of every shot.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExecutionConfig {
    pub mode: Mode,
    pub shots: usize,
    pub seed: u64,
    /// Record a trace table for shot 0.
    pub trace: bool,
    /// Track the flow symbolically as well; single shot only.
    pub symbolic: bool,
    /// Pins the ancilla outcome of each rotation, in execution order.
    pub forced_outcomes: Option<Vec<bool>>,
    pub kappa: KappaPolicy,
    /// Report work qubits alongside logical qubits in readouts.
    pub include_work: bool,
}

impl Default for ExecutionConfig {
    fn default() -> Self {
        ExecutionConfig {
            mode: Mode::Hqcm,
            shots: 1,
            seed: 0,
            trace: false,
            symbolic: false,
            forced_outcomes: None,
            kappa: KappaPolicy::AsBuilt,
            include_work: false,
        }
    }
}

impl ExecutionConfig {
    pub fn with_shots(mut self, shots: usize) -> Self {
        self.shots = shots;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Checks the invariants that do not depend on a circuit.
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(HqcmError::input("shots must be at least 1"));
        }
        if self.symbolic && self.shots > 1 {
            return Err(HqcmError::input("symbolic tracking runs a single shot"));
        }
        Ok(())
    }
}
