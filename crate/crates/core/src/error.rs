use thiserror::Error;

/// Errors raised by the simulator, the circuit builders and the runners.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HqcmError {
    #[error("qubit {qubit} out of range for a register of {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("two-qubit operation needs distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("execution failed: {0}")]
    Execution(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl HqcmError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        HqcmError::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, HqcmError>;
