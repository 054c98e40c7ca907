//! Dense reference matrices, built from Kronecker products and matrix
//! exponentials. Qubit `j` is bit `j` of the basis index, so the operator on
//! qubit 0 is the rightmost Kronecker factor.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use hqcm::circuit::{Circuit, Gate};
use hqcm::state::{BlochVector, NamedGate, RandomSource, StateVector};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn mat2(a: [[Complex64; 2]; 2]) -> CMat {
    CMat::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

pub fn id2() -> CMat {
    CMat::identity(2, 2)
}

pub fn px() -> CMat {
    mat2([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
}

pub fn py() -> CMat {
    mat2([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]])
}

pub fn pz() -> CMat {
    mat2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]])
}

pub fn hadamard() -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    mat2([[c(h, 0.), c(h, 0.)], [c(h, 0.), c(-h, 0.)]])
}

/// `R_z(π/2)` up to phase, i.e. `diag(1, i)`.
pub fn phase() -> CMat {
    mat2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 1.)]])
}

/// `exp(-i α (r·σ)/2)` by matrix exponential.
pub fn rotation(axis: BlochVector, alpha: f64) -> CMat {
    let [x, y, z] = axis.components();
    let gen = px() * c(x, 0.) + py() * c(y, 0.) + pz() * c(z, 0.);
    (gen * c(0., -alpha / 2.0)).exp()
}

pub fn rz(phi: f64) -> CMat {
    rotation(BlochVector::z(), phi)
}

/// `ops[j]` acts on qubit `j`.
pub fn kron_all(ops: &[CMat]) -> CMat {
    let mut m = CMat::identity(1, 1);
    for op in ops {
        m = op.kronecker(&m);
    }
    m
}

pub fn on_qubit(n: usize, q: usize, op: &CMat) -> CMat {
    let ops: Vec<CMat> = (0..n).map(|j| if j == q { op.clone() } else { id2() }).collect();
    kron_all(&ops)
}

/// `Π_j X_j^{x_j} Z_j^{z_j}`.
pub fn pauli(n: usize, x_mask: usize, z_mask: usize) -> CMat {
    let ops: Vec<CMat> = (0..n)
        .map(|j| {
            let mut m = id2();
            if (x_mask >> j) & 1 == 1 {
                m = px() * m;
            }
            if (z_mask >> j) & 1 == 1 {
                m *= pz();
            }
            m
        })
        .collect();
    kron_all(&ops)
}

pub fn cz(n: usize, a: usize, b: usize) -> CMat {
    let proj1 = mat2([[c(0., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]]);
    let dim = 1 << n;
    CMat::identity(dim, dim) - on_qubit(n, a, &proj1) * on_qubit(n, b, &proj1) * c(2., 0.)
}

pub fn cnot(n: usize, control: usize, target: usize) -> CMat {
    on_qubit(n, target, &hadamard()) * cz(n, control, target) * on_qubit(n, target, &hadamard())
}

/// `exp(-iθ Z^{⊗leaves}/2)`.
pub fn multi_z(n: usize, leaves: &[usize], theta: f64) -> CMat {
    let ops: Vec<CMat> = (0..n).map(|j| if leaves.contains(&j) { pz() } else { id2() }).collect();
    (kron_all(&ops) * c(0., -theta / 2.0)).exp()
}

pub fn gate_matrix(gate: &Gate, n: usize) -> CMat {
    match gate {
        Gate::SingleQubit { qubit, axis, angle } => on_qubit(n, *qubit, &rotation(*axis, *angle)),
        Gate::Named { qubit, gate } => {
            let m = match gate {
                NamedGate::X => px(),
                NamedGate::Z => pz(),
                NamedGate::H => hadamard(),
                NamedGate::Rz(phi) => rz(*phi),
            };
            on_qubit(n, *qubit, &m)
        }
        Gate::Cz(a, b) => cz(n, *a, *b),
        Gate::MultiZRot { leaves, angle, .. } => multi_z(n, leaves, *angle),
    }
}

pub fn gates_matrix<'a>(gates: impl IntoIterator<Item = &'a Gate>, n: usize) -> CMat {
    let dim = 1 << n;
    let mut m = CMat::identity(dim, dim);
    for g in gates {
        m = gate_matrix(g, n) * m;
    }
    m
}

pub fn circuit_matrix(circuit: &Circuit) -> CMat {
    gates_matrix(circuit.gates(), circuit.num_qubits())
}

pub fn to_vec(s: &StateVector) -> CVec {
    CVec::from_column_slice(s.amplitudes())
}

pub fn from_vec(v: &CVec) -> StateVector {
    StateVector::from_amplitudes(v.iter().copied().collect()).unwrap()
}

pub fn vec_fidelity(a: &CVec, b: &CVec) -> f64 {
    let overlap = a.dotc(b).norm_sqr();
    overlap / (a.norm_squared() * b.norm_squared())
}

/// Smallest column fidelity between `a` and `b`, and whether every column
/// carries the same relative phase.
pub fn equal_up_to_phase(a: &CMat, b: &CMat, tol: f64) -> bool {
    assert_eq!(a.shape(), b.shape());
    let mut phase: Option<Complex64> = None;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let (x, y) = (a[(i, j)], b[(i, j)]);
            if y.norm() > 1e-6 {
                let p = x / y;
                match phase {
                    None => phase = Some(p),
                    Some(q) => {
                        if (p - q).norm() > tol {
                            return false;
                        }
                    }
                }
            }
        }
    }
    let Some(p) = phase else { return a.norm() < tol };
    (a - b * p).norm() < tol * (a.nrows() as f64)
}

pub fn min_column_fidelity(a: &CMat, b: &CMat) -> f64 {
    (0..a.ncols())
        .map(|j| vec_fidelity(&a.column(j).into_owned(), &b.column(j).into_owned()))
        .fold(f64::INFINITY, f64::min)
}

pub fn random_vec(n: usize, rng: &mut RandomSource) -> CVec {
    to_vec(&hqcm::runner::random_state(n, rng))
}

/// `|+>` on every qubit.
pub fn plus_vec(n: usize) -> CVec {
    let a = c((1.0 / (1usize << n) as f64).sqrt(), 0.);
    CVec::from_element(1 << n, a)
}

/// Kronecker product with `high` on the upper qubits.
pub fn kron_vec(low: &CVec, high: &CVec) -> CVec {
    high.kronecker(low)
}

/// Multi-controlled Z on `controls ∪ {target}` of an `n`-qubit register.
pub fn controlled_z(n: usize, controls: &[usize], target: usize) -> CMat {
    let dim = 1 << n;
    let mut m = CMat::identity(dim, dim);
    let mask = controls.iter().fold(1 << target, |m, &q| m | (1 << q));
    for i in 0..dim {
        if i & mask == mask {
            m[(i, i)] = -m[(i, i)];
        }
    }
    m
}
