//! Gate-level circuits, macro decompositions and the text format.

mod ir;
mod macros;
mod parse;

pub use ir::{Circuit, Gate, Step};
pub use macros::{
    build_diffusion, build_grover, build_oracle, diffusion_steps, expand_lambda1, expand_lambda2,
    expand_lambda_z, grover_iterations, grover_steps, grover_work_count, lambda_z_steps,
    oracle_steps, MacroGate,
};
pub use parse::{format_angle, parse_angle, parse_circuit};
