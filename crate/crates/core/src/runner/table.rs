//! The three-control Z gate with two work qubits, and its symbolic trace.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{lambda_z_steps, Circuit};
use crate::error::Result;
use crate::state::RandomSource;

use super::exec::{default_input, execute_hqcm, HqcmOptions};
use super::trace::{render_trace, TraceTable};

/// Register layout: controls 0, 1, 2 and target 3 are logical; 4 and 5 are
/// the work qubits.
pub fn three_control_z() -> Result<Circuit> {
    let mut c = Circuit::new(4, 2);
    c.extend_steps(lambda_z_steps(&[0, 1, 2], 3, &[4, 5])?)?;
    Ok(c)
}

/// Print order that puts the target last: controls, works, target.
pub const DISPLAY_ORDER: [usize; 6] = [0, 1, 2, 4, 5, 3];

/// Symbolic trace of [`three_control_z`]. The expressions do not depend on
/// the outcomes actually drawn; `seed` only fixes the numeric columns.
pub fn three_control_trace(seed: u64) -> Result<TraceTable> {
    let circuit = three_control_z()?;
    let options = HqcmOptions {
        trace: true,
        symbolic: true,
        ..HqcmOptions::default()
    };
    let mut rng = RandomSource::new(seed, 0);
    let run = execute_hqcm(&circuit, &default_input(&circuit)?, &options, &mut rng)?;
    Ok(run.trace.expect("trace requested"))
}

/// Text rendering of [`three_control_trace`], with `θ = π/4`.
pub fn render_three_control_table() -> Result<String> {
    let trace = three_control_trace(0)?;
    let mut out = String::from("theta = pi/4; qubits 1-3 control, 4-5 work, 6 target\n");
    out.push_str(&render_trace(&trace, &DISPLAY_ORDER, Some((FRAC_PI_4, "θ")))?);
    Ok(out)
}
