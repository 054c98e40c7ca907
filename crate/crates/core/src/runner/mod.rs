//! End-to-end execution: the hybrid executor with shots and traces, the
//! unitary reference, equivalence checks and result serialization.

mod config;
mod exec;
mod report;
mod table;
mod trace;
mod verify;

pub use config::{ExecutionConfig, KappaPolicy, Mode};
pub use exec::{
    default_input, execute_hqcm, execute_unitary, histogram, readout_index, reported_qubits, run_hqcm,
    run_hqcm_from, run_unitary, total_variation, HqcmOptions, HqcmRun, ShotResult,
};
pub use report::{bitstring, run_report, RunReport};
pub use table::{render_three_control_table, three_control_trace, three_control_z, DISPLAY_ORDER};
pub use trace::{render_trace, replay_trace, RotationTrace, StepTrace, TraceRow, TraceTable};
pub use verify::{
    random_axis, random_circuit, random_state, verify_equivalence, EquivalenceReport,
    EQUIVALENCE_TOLERANCE,
};
