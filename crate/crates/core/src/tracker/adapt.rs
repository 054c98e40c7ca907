//! Measurement-angle and gate-parameter adaptation to the current byproduct,
//! and the final readout correction.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{HqcmError, Result};
use crate::state::BlochVector;

use super::flow::InfoFlowVector;
use super::gf2::Gf2;

/// Sign parity for a rotation on `leaves`: the measured angle is
/// `(-1)^parity · θ`. Only the rotation's own qubits contribute.
pub fn rotation_sign<T: Gf2>(flow: &InfoFlowVector<T>, leaves: &[usize]) -> Result<T> {
    flow.rotation_parity(leaves)
}

/// Numeric form of [`rotation_sign`]: `(-1)^{⊕_{j ∈ leaves} x_j} · θ`.
pub fn adapt_rotation_angle(flow: &InfoFlowVector<bool>, leaves: &[usize], theta: f64) -> Result<f64> {
    Ok(if flow.rotation_parity(leaves)? { -theta } else { theta })
}

/// Axis of a single-qubit rotation executed after the byproduct
/// `X^x Z^z`: `((-1)^z r_x, (-1)^{x+z} r_y, (-1)^x r_z)`. The rotation angle
/// itself is unchanged.
pub fn adapt_axis(x: bool, z: bool, axis: BlochVector) -> BlochVector {
    let theta = if x { PI - axis.theta } else { axis.theta };
    let mut phi = if z { axis.phi + PI } else { axis.phi };
    if x {
        phi = -phi;
    }
    BlochVector::new(theta, phi)
}

/// Euler angles of `R_z(γ) R_x(β) R_z(α)` after the byproduct `X^x Z^z`:
/// `((-1)^x α, (-1)^z β, (-1)^x γ)`.
pub fn adapt_euler(x: bool, z: bool, (alpha, beta, gamma): (f64, f64, f64)) -> (f64, f64, f64) {
    let sx = if x { -1.0 } else { 1.0 };
    let sz = if z { -1.0 } else { 1.0 };
    (sx * alpha, sz * beta, sx * gamma)
}

/// Azimuth of the star-rotation measurement basis, `(-1)^κ π/2`.
pub fn adapt_azimuth(kappa: bool) -> f64 {
    if kappa {
        -FRAC_PI_2
    } else {
        FRAC_PI_2
    }
}

/// `ś_j = s_j ⊕ x_j`. The z-part does not affect computational-basis readout.
pub fn correct_readout(raw: &[bool], flow: &InfoFlowVector<bool>) -> Result<Vec<bool>> {
    if raw.len() != flow.n() {
        return Err(HqcmError::LengthMismatch {
            expected: flow.n(),
            actual: raw.len(),
        });
    }
    Ok(raw.iter().zip(flow.x()).map(|(s, x)| s ^ x).collect())
}
