//! Hybrid quantum computation: single-qubit gates and CZ run as unitaries,
//! multi-qubit Z rotations run by measuring star graph ancillas, and the
//! resulting Pauli byproducts are tracked classically.

pub mod circuit;
pub mod error;
pub mod runner;
pub mod star;
pub mod state;
pub mod tracker;

pub use error::{HqcmError, Result};
