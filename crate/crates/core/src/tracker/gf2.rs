use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HqcmError, Result};

/// Values that live in GF(2): plain bits, or formal sums of outcome symbols.
pub trait Gf2: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn is_zero(&self) -> bool;
}

impl Gf2 for bool {
    fn zero() -> Self {
        false
    }

    fn add_assign(&mut self, other: &Self) {
        *self ^= *other;
    }

    fn is_zero(&self) -> bool {
        !*self
    }
}

/// Outcome `m_{step,index}` of the `index`-th rotation in computation step
/// `step` (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OutcomeSymbol {
    pub step: usize,
    pub index: usize,
}

impl OutcomeSymbol {
    pub fn new(step: usize, index: usize) -> Self {
        OutcomeSymbol { step, index }
    }
}

impl fmt::Display for OutcomeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step < 10 && self.index < 10 {
            write!(f, "m{}{}", self.step, self.index)
        } else {
            write!(f, "m{}_{}", self.step, self.index)
        }
    }
}

/// XOR of atomic outcome symbols. The symbol set is kept sorted, so two
/// expressions are equal exactly when their canonical forms are.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Expr {
    terms: BTreeSet<OutcomeSymbol>,
}

impl Gf2Expr {
    pub fn symbol(s: OutcomeSymbol) -> Self {
        Gf2Expr {
            terms: BTreeSet::from([s]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &OutcomeSymbol> {
        self.terms.iter()
    }

    pub fn contains(&self, s: &OutcomeSymbol) -> bool {
        self.terms.contains(s)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the parity under a binding of symbols to bits.
    pub fn evaluate(&self, bindings: &BTreeMap<OutcomeSymbol, bool>) -> Result<bool> {
        self.terms.iter().try_fold(false, |acc, s| {
            bindings
                .get(s)
                .map(|&b| acc ^ b)
                .ok_or_else(|| HqcmError::input(format!("symbol {s} is unbound")))
        })
    }

    /// Renders the sum, collapsing complete groups into their step symbol:
    /// when `groups[j] = r` and all of `m_{j,1..=r}` are present, they print
    /// as `m{j}`.
    pub fn display_grouped(&self, groups: &BTreeMap<usize, usize>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut skip = BTreeSet::new();
        for s in &self.terms {
            if skip.contains(s) {
                continue;
            }
            if let Some(&r) = groups.get(&s.step) {
                let all = (1..=r).all(|k| self.terms.contains(&OutcomeSymbol::new(s.step, k)));
                if r > 1 && all {
                    skip.extend((1..=r).map(|k| OutcomeSymbol::new(s.step, k)));
                    parts.push(format!("m{}", s.step));
                    continue;
                }
            }
            parts.push(s.to_string());
        }
        parts.join("+")
    }
}

impl FromIterator<OutcomeSymbol> for Gf2Expr {
    fn from_iter<I: IntoIterator<Item = OutcomeSymbol>>(iter: I) -> Self {
        let mut e = Gf2Expr::default();
        for s in iter {
            e.add_assign(&Gf2Expr::symbol(s));
        }
        e
    }
}

impl Gf2 for Gf2Expr {
    fn zero() -> Self {
        Gf2Expr::default()
    }

    fn add_assign(&mut self, other: &Self) {
        for s in &other.terms {
            if !self.terms.remove(s) {
                self.terms.insert(*s);
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Gf2Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_grouped(&BTreeMap::new()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(j: usize, k: usize) -> OutcomeSymbol {
        OutcomeSymbol::new(j, k)
    }

    #[test]
    fn xor_cancels_and_canonicalizes() {
        let a: Gf2Expr = [m(1, 3), m(1, 1)].into_iter().collect();
        let b: Gf2Expr = [m(1, 1), m(1, 3)].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "m11+m13");
        let mut c = a.clone();
        c.add_assign(&a);
        assert!(c.is_zero());
        assert_eq!(c.to_string(), "0");
    }

    #[test]
    fn evaluation_and_unbound_symbols() {
        let e: Gf2Expr = [m(1, 1), m(2, 1)].into_iter().collect();
        let mut bind = BTreeMap::from([(m(1, 1), true)]);
        assert!(e.evaluate(&bind).is_err());
        bind.insert(m(2, 1), true);
        assert!(!e.evaluate(&bind).unwrap());
    }

    #[test]
    fn grouped_rendering() {
        let groups = BTreeMap::from([(1, 4), (9, 4)]);
        let e: Gf2Expr = [m(1, 1), m(1, 2), m(1, 3), m(1, 4), m(9, 1)].into_iter().collect();
        assert_eq!(e.display_grouped(&groups), "m1+m91");
        assert_eq!(m(12, 3).to_string(), "m12_3");
    }
}
