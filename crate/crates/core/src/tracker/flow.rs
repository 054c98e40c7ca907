use std::collections::BTreeMap;

use crate::error::{HqcmError, Result};
use crate::state::NamedGate;

use super::gf2::{Gf2, Gf2Expr, OutcomeSymbol};

/// Classical record `(I_x; I_z)` of the byproduct `Π_j X_j^{x_j} Z_j^{z_j}`.
///
/// Entries are bits in numeric mode and [`Gf2Expr`] in symbolic mode.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoFlowVector<T = bool> {
    x: Vec<T>,
    z: Vec<T>,
}

pub type SymbolicFlow = InfoFlowVector<Gf2Expr>;

impl<T: Gf2> InfoFlowVector<T> {
    /// All-zero flow: no byproduct on any of the `n` qubits.
    pub fn new(n: usize) -> Self {
        InfoFlowVector {
            x: vec![T::zero(); n],
            z: vec![T::zero(); n],
        }
    }

    pub fn from_parts(x: Vec<T>, z: Vec<T>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(HqcmError::LengthMismatch {
                expected: x.len(),
                actual: z.len(),
            });
        }
        Ok(InfoFlowVector { x, z })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[T] {
        &self.x
    }

    pub fn z(&self) -> &[T] {
        &self.z
    }

    pub fn x_mut(&mut self) -> &mut [T] {
        &mut self.x
    }

    pub fn z_mut(&mut self) -> &mut [T] {
        &mut self.z
    }

    /// Stacked `(x_1..x_n, z_1..z_n)`.
    pub fn stacked(&self) -> Vec<T> {
        self.x.iter().chain(&self.z).cloned().collect()
    }

    pub fn from_stacked(v: Vec<T>) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(HqcmError::input("stacked flow must have even length"));
        }
        let mut x = v;
        let z = x.split_off(x.len() / 2);
        Ok(InfoFlowVector { x, z })
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(Gf2::is_zero)
    }

    fn check_leaves(&self, leaves: &[usize]) -> Result<()> {
        match leaves.iter().find(|&&q| q >= self.n()) {
            Some(&q) => Err(HqcmError::QubitOutOfRange {
                qubit: q,
                num_qubits: self.n(),
            }),
            None => Ok(()),
        }
    }

    /// Multiplies in the byproduct `(Z^{⊗leaves})^m` of a rotation: only the
    /// z-part of the listed qubits changes.
    pub fn absorb_rotation_outcome(&mut self, leaves: &[usize], m: &T) -> Result<()> {
        self.check_leaves(leaves)?;
        for &q in leaves {
            self.z[q].add_assign(m);
        }
        Ok(())
    }

    /// Parity `⊕_{j ∈ leaves} x_j` that flips the sign of a rotation on
    /// `leaves`.
    pub fn rotation_parity(&self, leaves: &[usize]) -> Result<T> {
        self.check_leaves(leaves)?;
        let mut p = T::zero();
        for &q in leaves {
            p.add_assign(&self.x[q]);
        }
        Ok(p)
    }
}

impl InfoFlowVector<bool> {
    /// Bit masks `(x, z)` with qubit `j` at bit `j`.
    pub fn masks(&self) -> (usize, usize) {
        let mask = |v: &[bool]| v.iter().enumerate().fold(0usize, |m, (j, &b)| m | (usize::from(b) << j));
        (mask(&self.x), mask(&self.z))
    }

    /// The byproduct as a Pauli gate list in operator-product order
    /// `X_1^{x_1} Z_1^{z_1} X_2^{x_2} ...`; the rightmost gate acts first.
    pub fn byproduct_gates(&self) -> Vec<(usize, NamedGate)> {
        let mut gates = Vec::new();
        for j in 0..self.n() {
            if self.x[j] {
                gates.push((j, NamedGate::X));
            }
            if self.z[j] {
                gates.push((j, NamedGate::Z));
            }
        }
        gates
    }
}

impl SymbolicFlow {
    /// Substitutes bits for every symbol; fails on any unbound symbol.
    pub fn bind(&self, bindings: &BTreeMap<OutcomeSymbol, bool>) -> Result<InfoFlowVector<bool>> {
        let eval = |v: &[Gf2Expr]| v.iter().map(|e| e.evaluate(bindings)).collect::<Result<Vec<_>>>();
        Ok(InfoFlowVector {
            x: eval(&self.x)?,
            z: eval(&self.z)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_is_all_zero_in_both_modes() {
        let f: InfoFlowVector = InfoFlowVector::new(1);
        assert_eq!(f.stacked(), vec![false, false]);
        let f: InfoFlowVector = InfoFlowVector::new(6);
        assert_eq!(f.stacked(), vec![false; 12]);
        let s = SymbolicFlow::new(6);
        assert!(s.is_zero());
        assert_eq!(s.bind(&BTreeMap::new()).unwrap(), f);
    }

    #[test]
    fn absorbing_zero_outcome_changes_nothing() {
        let mut f = InfoFlowVector::from_parts(vec![true, false], vec![false, true]).unwrap();
        let before = f.clone();
        f.absorb_rotation_outcome(&[0, 1], &false).unwrap();
        assert_eq!(f, before);
        f.absorb_rotation_outcome(&[0, 1], &true).unwrap();
        assert_eq!(f.x(), before.x());
        assert_eq!(f.z(), &[true, false]);
        assert!(f.absorb_rotation_outcome(&[2], &true).is_err());
    }

    #[test]
    fn double_control_absorptions() {
        // rotations {1,2,T}, {2,T}, {1,T}, {T} with T = {3,4}
        let m = |k| Gf2Expr::symbol(OutcomeSymbol::new(1, k));
        let mut f = SymbolicFlow::new(4);
        f.absorb_rotation_outcome(&[0, 1, 2, 3], &m(1)).unwrap();
        f.absorb_rotation_outcome(&[1, 2, 3], &m(2)).unwrap();
        f.absorb_rotation_outcome(&[0, 2, 3], &m(3)).unwrap();
        f.absorb_rotation_outcome(&[2, 3], &m(4)).unwrap();
        let sum = |ks: &[usize]| ks.iter().map(|&k| OutcomeSymbol::new(1, k)).collect::<Gf2Expr>();
        assert_eq!(f.z()[0], sum(&[1, 3]));
        assert_eq!(f.z()[1], sum(&[1, 2]));
        assert_eq!(f.z()[2], sum(&[1, 2, 3, 4]));
        assert_eq!(f.z()[3], sum(&[1, 2, 3, 4]));
        assert!(f.x().iter().all(Gf2::is_zero));
    }

    #[test]
    fn byproduct_gate_order() {
        let f: InfoFlowVector = InfoFlowVector::new(2);
        assert!(f.byproduct_gates().is_empty());
        let f = InfoFlowVector::from_parts(vec![true, false], vec![true, false]).unwrap();
        assert_eq!(f.byproduct_gates(), vec![(0, NamedGate::X), (0, NamedGate::Z)]);
    }
}
