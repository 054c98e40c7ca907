//! Dense statevector engine.
//!
//! Basis index convention: qubit `j` is bit `j` of the basis index, so qubit 0
//! is the least significant bit. A 3-qubit register in `|q0 q1 q2> = |1 0 1>`
//! lives at index `0b101 = 5`.
//!
//! Global phases are never tracked or corrected; compare states with
//! [`fidelity`].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HqcmError, Result};

/// Probabilities below this are treated as impossible branches.
pub const IMPOSSIBLE_PROBABILITY: f64 = 1e-14;

/// Allowed deviation of the squared norm from one when importing amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A direction on the Bloch sphere, `(sin θ cos φ, sin θ sin φ, cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub const fn new(theta: f64, phi: f64) -> Self {
        BlochVector { theta, phi }
    }

    pub const fn z() -> Self {
        BlochVector::new(0.0, 0.0)
    }

    pub const fn x() -> Self {
        BlochVector::new(std::f64::consts::FRAC_PI_2, 0.0)
    }

    pub const fn y() -> Self {
        BlochVector::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    /// Builds the direction of a (not necessarily normalized) Cartesian vector.
    pub fn from_components(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-300 || !norm.is_finite() {
            return Err(HqcmError::input("axis vector must be finite and nonzero"));
        }
        let theta = (v[2] / norm).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        Ok(BlochVector::new(theta, phi))
    }

    pub fn components(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `|↑(θ, φ)> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`, the outcome-0 ket.
    pub fn up_ket(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }

    /// `|↓(θ, φ)> = -sin(θ/2)|0> + e^{iφ} cos(θ/2)|1>`, the outcome-1 ket.
    pub fn down_ket(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(-s, 0.0), Complex64::from_polar(c, self.phi)]
    }

    /// The matrix `r·σ`.
    pub fn pauli_dot(&self) -> Mat2 {
        let [x, y, z] = self.components();
        [
            [Complex64::new(z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(-z, 0.0)],
        ]
    }
}

/// A projective single-qubit measurement along a Bloch direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSpec {
    pub target: usize,
    pub basis: BlochVector,
}

impl MeasurementSpec {
    pub fn new(target: usize, basis: BlochVector) -> Self {
        MeasurementSpec { target, basis }
    }

    /// `P_m = (I + (-1)^m r·σ) / 2` for `m = 0, 1`.
    pub fn projectors(&self) -> [Mat2; 2] {
        let r = self.basis.pauli_dot();
        let half = Complex64::new(0.5, 0.0);
        let mut out = [[[ZERO; 2]; 2]; 2];
        for (m, proj) in out.iter_mut().enumerate() {
            let sign = if m == 0 { 1.0 } else { -1.0 };
            for i in 0..2 {
                for j in 0..2 {
                    let id = if i == j { ONE } else { ZERO };
                    proj[i][j] = half * (id + r[i][j] * sign);
                }
            }
        }
        out
    }

    fn ket(&self, outcome: bool) -> [Complex64; 2] {
        if outcome {
            self.basis.down_ket()
        } else {
            self.basis.up_ket()
        }
    }
}

/// Seeded randomness for one shot. Streams with different indices are
/// independent, so shots can run in any order or in parallel.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn bit(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// Named gates with exact matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedGate {
    X,
    Z,
    H,
    /// `exp(-iφZ/2)`
    Rz(f64),
}

impl NamedGate {
    pub fn matrix(&self) -> Mat2 {
        match *self {
            NamedGate::X => [[ZERO, ONE], [ONE, ZERO]],
            NamedGate::Z => [[ONE, ZERO], [ZERO, -ONE]],
            NamedGate::H => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            NamedGate::Rz(phi) => [
                [Complex64::from_polar(1.0, -phi / 2.0), ZERO],
                [ZERO, Complex64::from_polar(1.0, phi / 2.0)],
            ],
        }
    }
}

/// `R_r(α) = exp(-i α (r·σ) / 2) = cos(α/2) I - i sin(α/2) r·σ`.
pub fn rotation_matrix(axis: &BlochVector, alpha: f64) -> Mat2 {
    let (s, c) = (alpha / 2.0).sin_cos();
    let r = axis.pauli_dot();
    let mut m = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { c } else { 0.0 };
            m[i][j] = Complex64::new(id, 0.0) - I * s * r[i][j];
        }
    }
    m
}

/// Normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(num_qubits: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        StateVector {
            num_qubits,
            amplitudes,
        }
    }

    /// Computational basis state; `bits[j]` is the value of qubit `j`.
    pub fn basis(num_qubits: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != num_qubits {
            return Err(HqcmError::LengthMismatch {
                expected: num_qubits,
                actual: bits.len(),
            });
        }
        let index = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | (usize::from(b) << j));
        Self::basis_index(num_qubits, index)
    }

    pub fn basis_index(num_qubits: usize, index: usize) -> Result<Self> {
        if index >= 1 << num_qubits {
            return Err(HqcmError::input(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[index] = ONE;
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Imports raw amplitudes. The squared norm must be within
    /// [`NORM_TOLERANCE`] of one; the stored state is renormalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(HqcmError::input(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(HqcmError::Numeric(format!(
                "state is not normalized (squared norm {norm_sqr})"
            )));
        }
        let mut state = StateVector {
            num_qubits,
            amplitudes,
        };
        state.renormalize();
        Ok(state)
    }

    /// Tensor product `self ⊗ other` where `other` occupies the higher qubit
    /// indices.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let low = self.amplitudes.len();
        let mut amplitudes = Vec::with_capacity(low * other.amplitudes.len());
        for hi in &other.amplitudes {
            amplitudes.extend(self.amplitudes.iter().map(|lo| lo * hi));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// Single-qubit product state `a|0> + b|1>` (normalized on the way in).
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n < 1e-300 {
            return Err(HqcmError::input("zero single-qubit state"));
        }
        Ok(StateVector {
            num_qubits: 1,
            amplitudes: vec![a / n, b / n],
        })
    }

    /// `(|0> + (-1)^minus |1>)/√2`.
    pub fn plus(minus: bool) -> Self {
        let s = if minus { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
        StateVector {
            num_qubits: 1,
            amplitudes: vec![Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(s, 0.0)],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn renormalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        for a in &mut self.amplitudes {
            *a /= n;
        }
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            Err(HqcmError::QubitOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }

    /// Applies an arbitrary 2x2 matrix to qubit `q`.
    pub fn apply_matrix(&mut self, q: usize, m: &Mat2) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        for i0 in 0..self.amplitudes.len() {
            if i0 & bit != 0 {
                continue;
            }
            let i1 = i0 | bit;
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = m[0][0] * a0 + m[0][1] * a1;
            self.amplitudes[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    /// `exp(-i α (r·σ)/2)` on qubit `q`.
    pub fn apply_single_qubit(&mut self, q: usize, axis: &BlochVector, alpha: f64) -> Result<()> {
        self.apply_matrix(q, &rotation_matrix(axis, alpha))
    }

    pub fn apply_named(&mut self, q: usize, gate: NamedGate) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        match gate {
            // Bit-exact paths for the Pauli gates.
            NamedGate::X => {
                for i0 in 0..self.amplitudes.len() {
                    if i0 & bit == 0 {
                        self.amplitudes.swap(i0, i0 | bit);
                    }
                }
                Ok(())
            }
            NamedGate::Z => {
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a = -*a;
                    }
                }
                Ok(())
            }
            other => self.apply_matrix(q, &other.matrix()),
        }
    }

    /// Negates every amplitude where both qubits are 1.
    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b {
            return Err(HqcmError::SameQubit(a));
        }
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// `exp(-i θ Z_{q1}⊗...⊗Z_{qk} / 2)` applied as a diagonal unitary.
    pub fn apply_multi_z(&mut self, qubits: &[usize], theta: f64) -> Result<()> {
        let mut mask = 0usize;
        for &q in qubits {
            self.check_qubit(q)?;
            if mask & (1 << q) != 0 {
                return Err(HqcmError::SameQubit(q));
            }
            mask |= 1 << q;
        }
        let even = Complex64::from_polar(1.0, -theta / 2.0);
        let odd = Complex64::from_polar(1.0, theta / 2.0);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= if (i & mask).count_ones() % 2 == 0 { even } else { odd };
        }
        Ok(())
    }

    /// Applies the Pauli operator `X^{x_mask} Z^{z_mask}` (Z factors act
    /// first).
    pub fn apply_pauli(&mut self, x_mask: usize, z_mask: usize) -> Result<()> {
        let full = self.amplitudes.len() - 1;
        if (x_mask | z_mask) & !full != 0 {
            return Err(HqcmError::input("Pauli mask exceeds the register"));
        }
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i & z_mask).count_ones() % 2 == 1 {
                *a = -*a;
            }
        }
        if x_mask != 0 {
            let old = self.amplitudes.clone();
            for (i, a) in old.into_iter().enumerate() {
                self.amplitudes[i ^ x_mask] = a;
            }
        }
        Ok(())
    }

    /// `<ψ| X^{x_mask} Z^{z_mask} |ψ>`. Real whenever the operator is
    /// Hermitian, i.e. when `x_mask & z_mask` has even weight.
    pub fn expectation_pauli(&self, x_mask: usize, z_mask: usize) -> Complex64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let sign = if (i & z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                self.amplitudes[i ^ x_mask].conj() * a * sign
            })
            .sum()
    }

    /// Outcome probabilities `(p0, p1)` for a measurement.
    pub fn outcome_probabilities(&self, spec: &MeasurementSpec) -> Result<(f64, f64)> {
        self.check_qubit(spec.target)?;
        let up = spec.ket(false);
        let down = spec.ket(true);
        let bit = 1usize << spec.target;
        let (mut p0, mut p1) = (0.0, 0.0);
        for i0 in 0..self.amplitudes.len() {
            if i0 & bit != 0 {
                continue;
            }
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i0 | bit]);
            p0 += (up[0].conj() * a0 + up[1].conj() * a1).norm_sqr();
            p1 += (down[0].conj() * a0 + down[1].conj() * a1).norm_sqr();
        }
        Ok((p0, p1))
    }

    /// Projective measurement. Outcome 0 projects onto `|↑(θ,φ)>`, outcome 1
    /// onto `|↓(θ,φ)>`. A `forced` outcome bypasses the random draw but is
    /// rejected when its probability is below [`IMPOSSIBLE_PROBABILITY`].
    pub fn measure(
        &mut self,
        spec: &MeasurementSpec,
        rng: &mut RandomSource,
        forced: Option<bool>,
    ) -> Result<bool> {
        let (p0, p1) = self.outcome_probabilities(spec)?;
        if p0 < IMPOSSIBLE_PROBABILITY && p1 < IMPOSSIBLE_PROBABILITY {
            return Err(HqcmError::Numeric(
                "both measurement outcomes have vanishing probability".into(),
            ));
        }
        let outcome = match forced {
            Some(m) => {
                let p = if m { p1 } else { p0 };
                if p < IMPOSSIBLE_PROBABILITY {
                    return Err(HqcmError::Execution(format!(
                        "forced outcome {} on qubit {} has probability {p:e}",
                        u8::from(m),
                        spec.target
                    )));
                }
                m
            }
            None if p0 < IMPOSSIBLE_PROBABILITY => true,
            None if p1 < IMPOSSIBLE_PROBABILITY => false,
            None => rng.uniform() * (p0 + p1) >= p0,
        };
        self.collapse(spec, outcome);
        Ok(outcome)
    }

    fn collapse(&mut self, spec: &MeasurementSpec, outcome: bool) {
        let ket = spec.ket(outcome);
        let bit = 1usize << spec.target;
        for i0 in 0..self.amplitudes.len() {
            if i0 & bit != 0 {
                continue;
            }
            let i1 = i0 | bit;
            let c = ket[0].conj() * self.amplitudes[i0] + ket[1].conj() * self.amplitudes[i1];
            self.amplitudes[i0] = ket[0] * c;
            self.amplitudes[i1] = ket[1] * c;
        }
        self.renormalize();
    }

    /// Z-basis readout of `qubits`, returning one bit per listed qubit.
    pub fn measure_z(&mut self, qubits: &[usize], rng: &mut RandomSource) -> Result<Vec<bool>> {
        qubits
            .iter()
            .map(|&q| self.measure(&MeasurementSpec::new(q, BlochVector::z()), rng, None))
            .collect()
    }

    /// Removes qubit `q` by contracting it with `<ket|`. Intended for qubits
    /// already in the product state `ket`; the remainder is renormalized.
    pub fn project_out(&self, q: usize, ket: [Complex64; 2]) -> Result<StateVector> {
        self.check_qubit(q)?;
        if self.num_qubits == 1 {
            return Err(HqcmError::input("cannot remove the last qubit"));
        }
        let bit = 1usize << q;
        let low_mask = bit - 1;
        let mut amplitudes = vec![ZERO; self.amplitudes.len() / 2];
        for (r, out) in amplitudes.iter_mut().enumerate() {
            let i0 = (r & low_mask) | ((r & !low_mask) << 1);
            *out = ket[0].conj() * self.amplitudes[i0] + ket[1].conj() * self.amplitudes[i0 | bit];
        }
        let mut state = StateVector {
            num_qubits: self.num_qubits - 1,
            amplitudes,
        };
        if state.norm_sqr() < IMPOSSIBLE_PROBABILITY {
            return Err(HqcmError::Numeric(format!(
                "qubit {q} has no overlap with the given product state"
            )));
        }
        state.renormalize();
        Ok(state)
    }

    /// Probability of each basis index of the sub-register `qubits`, where
    /// `qubits[k]` becomes bit `k` of the reported index.
    pub fn marginal_distribution(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut dist = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let key = qubits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &q)| acc | (((i >> q) & 1) << k));
            dist[key] += a.norm_sqr();
        }
        Ok(dist)
    }
}

/// `|<a|b>|^2`, insensitive to global phase.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.num_qubits != b.num_qubits {
        return Err(HqcmError::LengthMismatch {
            expected: a.num_qubits,
            actual: b.num_qubits,
        });
    }
    let overlap: Complex64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(overlap.norm_sqr().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn basis_states_follow_lsb_first_convention() {
        let s = StateVector::basis(1, &[false]).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO]);
        let s = StateVector::basis(2, &[true, true]).unwrap();
        assert_eq!(s.amplitude(3), ONE);
        let s = StateVector::basis(3, &[true, false, true]).unwrap();
        assert_eq!(s.amplitude(0b101), ONE);
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn basis_length_mismatch_is_rejected() {
        assert_eq!(
            StateVector::basis(2, &[true]),
            Err(HqcmError::LengthMismatch {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn zero_angle_rotation_is_identity() {
        let mut s = StateVector::plus(false);
        let before = s.clone();
        s.apply_single_qubit(0, &BlochVector::z(), 0.0).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn y_rotation_by_pi_flips_zero() {
        // exp(-iπY/2) = -iY, and -iY|0> = -i·(i|1>) = |1>.
        let mut s = StateVector::zero(1);
        s.apply_single_qubit(0, &BlochVector::y(), PI).unwrap();
        assert!((s.amplitude(1).norm_sqr() - 1.0).abs() < 1e-12);
        assert!(close(s.amplitude(1), ONE));
    }

    #[test]
    fn hadamard_is_rotation_about_x_plus_z() {
        // H = i R_{(x+z)/√2}(π)
        let axis = BlochVector::new(FRAC_PI_4, 0.0);
        let r = rotation_matrix(&axis, PI);
        let h = NamedGate::H.matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(I * r[i][j], h[i][j]));
            }
        }
    }

    #[test]
    fn named_gates_on_basis_states() {
        let mut s = StateVector::zero(1);
        s.apply_named(0, NamedGate::X).unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, ONE]);

        let mut s = StateVector::zero(1);
        s.apply_named(0, NamedGate::H).unwrap();
        assert!(close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0)));

        s.apply_named(0, NamedGate::Rz(FRAC_PI_2)).unwrap();
        assert!(close(s.amplitude(0), Complex64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4)));
        assert!(close(s.amplitude(1), Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4)));
    }

    #[test]
    fn out_of_range_qubits_are_rejected() {
        let mut s = StateVector::zero(2);
        assert!(matches!(
            s.apply_named(2, NamedGate::X),
            Err(HqcmError::QubitOutOfRange { qubit: 2, num_qubits: 2 })
        ));
        assert!(s.apply_single_qubit(5, &BlochVector::x(), 1.0).is_err());
        assert!(matches!(s.apply_cz(0, 0), Err(HqcmError::SameQubit(0))));
    }

    #[test]
    fn cz_action_and_involution() {
        let mut s = StateVector::basis(2, &[true, true]).unwrap();
        s.apply_cz(0, 1).unwrap();
        assert_eq!(s.amplitude(3), -ONE);

        let mut s = StateVector::basis(2, &[true, false]).unwrap();
        s.apply_cz(0, 1).unwrap();
        assert_eq!(s.amplitude(1), ONE);

        let mut s = StateVector::zero(2);
        s.apply_named(0, NamedGate::H).unwrap();
        s.apply_named(1, NamedGate::H).unwrap();
        let before = s.clone();
        s.apply_cz(0, 1).unwrap();
        s.apply_cz(1, 0).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn measuring_eigenstates_is_deterministic() {
        let mut rng = RandomSource::new(1, 0);
        let mut s = StateVector::plus(false);
        let spec = MeasurementSpec::new(0, BlochVector::x());
        assert_eq!(s.outcome_probabilities(&spec).unwrap().0, 1.0 - 0.0);
        for _ in 0..20 {
            assert!(!s.clone().measure(&spec, &mut rng, None).unwrap());
        }
        let mut z = StateVector::zero(1);
        assert!(!z
            .measure(&MeasurementSpec::new(0, BlochVector::z()), &mut rng, None)
            .unwrap());
        assert!(s.measure(&spec, &mut rng, Some(true)).is_err());
    }

    #[test]
    fn projectors_are_complete_and_orthogonal() {
        let spec = MeasurementSpec::new(0, BlochVector::new(0.7, -2.1));
        let [p0, p1] = spec.projectors();
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { ONE } else { ZERO };
                assert!(close(p0[i][j] + p1[i][j], id));
                let prod = p0[i][0] * p1[0][j] + p0[i][1] * p1[1][j];
                assert!(close(prod, ZERO));
            }
        }
    }

    #[test]
    fn down_ket_matches_outcome_one_projector() {
        let b = BlochVector::new(1.1, 0.4);
        let [_, p1] = MeasurementSpec::new(0, b).projectors();
        let d = b.down_ket();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(d[i] * d[j].conj(), p1[i][j]));
            }
        }
    }

    #[test]
    fn fidelity_basics() {
        let mut a = StateVector::zero(2);
        a.apply_single_qubit(0, &BlochVector::new(0.3, 0.9), 1.3).unwrap();
        a.apply_single_qubit(1, &BlochVector::new(2.3, -0.2), 0.4).unwrap();
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let phased = StateVector::from_amplitudes(
            a.amplitudes().iter().map(|x| x * Complex64::from_polar(1.0, 0.77)).collect(),
        )
        .unwrap();
        assert!((fidelity(&a, &phased).unwrap() - 1.0).abs() < 1e-12);
        let zero = StateVector::zero(1);
        let one = StateVector::basis(1, &[true]).unwrap();
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        assert!(fidelity(&zero, &a).is_err());
    }

    #[test]
    fn project_out_removes_a_product_factor() {
        let psi = StateVector::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        let joint = psi.tensor(&StateVector::plus(true));
        let reduced = joint.project_out(1, StateVector::plus(true).amplitudes().try_into().unwrap());
        assert!((fidelity(&reduced.unwrap(), &psi).unwrap() - 1.0).abs() < 1e-12);
        let joint = StateVector::plus(false).tensor(&psi);
        let reduced = joint.project_out(0, [ONE / 2f64.sqrt(), ONE / 2f64.sqrt()]).unwrap();
        assert!((fidelity(&reduced, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_source_streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..8).map({
            let mut r = RandomSource::new(42, 3);
            move |_| r.uniform()
        }).collect();
        let b: Vec<f64> = (0..8).map({
            let mut r = RandomSource::new(42, 3);
            move |_| r.uniform()
        }).collect();
        let c: Vec<f64> = (0..8).map({
            let mut r = RandomSource::new(42, 4);
            move |_| r.uniform()
        }).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bloch_components_are_unit_and_round_trip() {
        for &(t, p) in &[(0.0, 0.0), (0.3, 1.0), (FRAC_PI_2, -2.0), (PI, 0.0), (2.5, 3.0)] {
            let b = BlochVector::new(t, p);
            let c = b.components();
            assert!(((c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) - 1.0).abs() < 1e-12);
            let back = BlochVector::from_components(c).unwrap().components();
            for k in 0..3 {
                assert!((back[k] - c[k]).abs() < 1e-12);
            }
        }
    }
}
