//! Classical byproduct tracking: information flow vectors, propagation
//! matrices and the adaptation rules that keep a measurement-driven run
//! deterministic.

mod adapt;
mod flow;
mod gf2;
mod matrix;

pub use adapt::{
    adapt_axis, adapt_azimuth, adapt_euler, adapt_rotation_angle, correct_readout, rotation_sign,
};
pub use flow::{InfoFlowVector, SymbolicFlow};
pub use gf2::{Gf2, Gf2Expr, OutcomeSymbol};
pub use matrix::{matrix_for, propagate, Block, FlowGate, PropagationMatrix};
