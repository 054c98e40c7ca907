use std::fmt;

use crate::error::{HqcmError, Result};

use super::flow::InfoFlowVector;
use super::gf2::Gf2;

/// Gates as seen by the classical side. Qubit indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowGate {
    /// Any single-qubit rotation; the byproduct passes unchanged.
    Rotation(usize),
    Hadamard(usize),
    /// `R_z(π/2)`, treated as a Clifford gate.
    Phase(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    /// A multi-qubit Z rotation; the byproduct passes unchanged.
    MultiZRot(Vec<usize>),
}

/// Quadrant of a propagation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// x → x, top-left
    Xx,
    /// z → x, top-right
    Zx,
    /// x → z, bottom-left
    Xz,
    /// z → z, bottom-right
    Zz,
}

/// `2n × 2n` binary matrix acting on stacked flows `(x; z)`:
///
/// ```text
/// | C_xx  C_zx |
/// | C_xz  C_zz |
/// ```
#[derive(Clone, PartialEq, Eq)]
pub struct PropagationMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl PropagationMatrix {
    pub fn identity(n: usize) -> Self {
        let dim = 2 * n;
        let mut bits = vec![false; dim * dim];
        for i in 0..dim {
            bits[i * dim + i] = true;
        }
        PropagationMatrix { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.dim() + col]
    }

    fn set(&mut self, row: usize, col: usize, v: bool) {
        let dim = self.dim();
        self.bits[row * dim + col] = v;
    }

    fn flip(&mut self, row: usize, col: usize) {
        let dim = self.dim();
        self.bits[row * dim + col] ^= true;
    }

    /// `n × n` quadrant, row-major.
    pub fn block(&self, block: Block) -> Vec<Vec<bool>> {
        let (r0, c0) = match block {
            Block::Xx => (0, 0),
            Block::Zx => (0, self.n),
            Block::Xz => (self.n, 0),
            Block::Zz => (self.n, self.n),
        };
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r0 + r, c0 + c)).collect())
            .collect()
    }

    /// Product over GF(2); `self * rhs` applies `rhs` first.
    pub fn mul(&self, rhs: &PropagationMatrix) -> Result<PropagationMatrix> {
        if self.n != rhs.n {
            return Err(HqcmError::LengthMismatch {
                expected: self.n,
                actual: rhs.n,
            });
        }
        let dim = self.dim();
        let mut out = PropagationMatrix {
            n: self.n,
            bits: vec![false; dim * dim],
        };
        for i in 0..dim {
            for k in 0..dim {
                if self.get(i, k) {
                    for j in 0..dim {
                        if rhs.get(k, j) {
                            out.flip(i, j);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Full rank over GF(2), checked by Gaussian elimination.
    pub fn is_invertible(&self) -> bool {
        let dim = self.dim();
        let mut rows: Vec<Vec<bool>> = (0..dim).map(|r| (0..dim).map(|c| self.get(r, c)).collect()).collect();
        for col in 0..dim {
            let Some(pivot) = (col..dim).find(|&r| rows[r][col]) else {
                return false;
            };
            rows.swap(col, pivot);
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row[col] {
                    for (d, s) in row.iter_mut().zip(&pivot_row) {
                        *d ^= *s;
                    }
                }
            }
        }
        true
    }

    /// `C · (x; z)` over GF(2), entrywise for symbolic flows.
    pub fn apply<T: Gf2>(&self, flow: &InfoFlowVector<T>) -> Result<InfoFlowVector<T>> {
        if flow.n() != self.n {
            return Err(HqcmError::LengthMismatch {
                expected: self.n,
                actual: flow.n(),
            });
        }
        let v = flow.stacked();
        let out = (0..self.dim())
            .map(|r| {
                let mut acc = T::zero();
                for (c, entry) in v.iter().enumerate() {
                    if self.get(r, c) {
                        acc.add_assign(entry);
                    }
                }
                acc
            })
            .collect();
        InfoFlowVector::from_stacked(out)
    }
}

impl fmt::Debug for PropagationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PropagationMatrix(n = {})", self.n)?;
        for r in 0..self.dim() {
            let row: String = (0..self.dim()).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

fn check(q: usize, n: usize) -> Result<()> {
    if q < n {
        Ok(())
    } else {
        Err(HqcmError::QubitOutOfRange { qubit: q, num_qubits: n })
    }
}

fn check_pair(a: usize, b: usize, n: usize) -> Result<()> {
    check(a, n)?;
    check(b, n)?;
    if a == b {
        Err(HqcmError::SameQubit(a))
    } else {
        Ok(())
    }
}

/// Propagation matrix of `gate` on `n` qubits.
pub fn matrix_for(gate: &FlowGate, n: usize) -> Result<PropagationMatrix> {
    let mut c = PropagationMatrix::identity(n);
    match *gate {
        FlowGate::Rotation(j) => check(j, n)?,
        FlowGate::MultiZRot(ref leaves) => {
            if leaves.is_empty() {
                return Err(HqcmError::input("multi-qubit rotation without qubits"));
            }
            for &q in leaves {
                check(q, n)?;
            }
        }
        FlowGate::Hadamard(j) => {
            check(j, n)?;
            // swap x_j and z_j
            c.set(j, j, false);
            c.set(n + j, n + j, false);
            c.set(j, n + j, true);
            c.set(n + j, j, true);
        }
        FlowGate::Phase(j) => {
            check(j, n)?;
            // z_j += x_j
            c.set(n + j, j, true);
        }
        FlowGate::Cnot(a, b) => {
            check_pair(a, b, n)?;
            // x_b += x_a, z_a += z_b
            c.set(b, a, true);
            c.set(n + a, n + b, true);
        }
        FlowGate::Cz(a, b) => {
            check_pair(a, b, n)?;
            // z_a += x_b, z_b += x_a
            c.set(n + a, b, true);
            c.set(n + b, a, true);
        }
    }
    Ok(c)
}

/// `flow ← C(gate) · flow`.
pub fn propagate<T: Gf2>(flow: &InfoFlowVector<T>, gate: &FlowGate) -> Result<InfoFlowVector<T>> {
    matrix_for(gate, flow.n())?.apply(flow)
}
