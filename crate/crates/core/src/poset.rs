//! Finite partial orders and the lattice tables they induce.

use thiserror::Error;

use crate::table::OpTable;
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("empty carrier")]
    Empty,
    #[error("relation has {got} cells, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("not reflexive at {0}")]
    NotReflexive(Element),
    #[error("not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(Element, Element),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(Element, Element, Element),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("no greatest element")]
    NoTop,
    #[error("no least element")]
    NoBottom,
    #[error("{0} and {1} have no least upper bound")]
    NoJoin(Element, Element),
    #[error("{0} and {1} have no greatest lower bound")]
    NoMeet(Element, Element),
}

/// A validated partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

/// Join and meet tables together with the bounds of a lattice order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTables {
    pub join: OpTable,
    pub meet: OpTable,
    pub bot: Element,
    pub top: Element,
}

/// Checks that the row-major `n×n` relation is a partial order.
pub fn validate_poset(n: usize, leq: Vec<bool>) -> Result<Poset, PosetError> {
    if n == 0 {
        return Err(PosetError::Empty);
    }
    if leq.len() != n * n {
        return Err(PosetError::Dimension {
            expected: n * n,
            got: leq.len(),
        });
    }
    let at = |i: usize, j: usize| leq[i * n + j];
    if let Some(i) = (0..n).find(|&i| !at(i, i)) {
        return Err(PosetError::NotReflexive(i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && at(i, j) && at(j, i) {
                return Err(PosetError::NotAntisymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !at(i, j) {
                continue;
            }
            for k in 0..n {
                if at(j, k) && !at(i, k) {
                    return Err(PosetError::NotTransitive(i, j, k));
                }
            }
        }
    }
    Ok(Poset { n, leq })
}

/// Reflexive-transitive closure of the generator pairs on `0..n`.
pub fn closure_of_pairs(n: usize, pairs: &[(Element, Element)]) -> Vec<bool> {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for &(i, j) in pairs {
        rel[i * n + j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if !rel[i * n + k] {
                continue;
            }
            for j in 0..n {
                if rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    rel
}

impl Poset {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, i: Element, j: Element) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between them.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Least upper bound by scanning the set of common upper bounds.
    pub fn lub(&self, i: Element, j: Element) -> Option<Element> {
        let ub: Vec<Element> = (0..self.n).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest lower bound by scanning the set of common lower bounds.
    pub fn glb(&self, i: Element, j: Element) -> Option<Element> {
        let lb: Vec<Element> = (0..self.n).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        lb.iter().copied().find(|&l| lb.iter().all(|&v| self.leq(v, l)))
    }

    pub fn top(&self) -> Option<Element> {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq(x, t)))
    }

    pub fn bottom(&self) -> Option<Element> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq(b, x)))
    }
}

/// Computes join/meet tables, failing on the first pair without a unique bound.
pub fn lattice_from_order(p: &Poset) -> Result<LatticeTables, LatticeError> {
    let top = p.top().ok_or(LatticeError::NoTop)?;
    let bot = p.bottom().ok_or(LatticeError::NoBottom)?;
    let n = p.size();
    let mut join = OpTable::from_fn(n, |_, _| 0);
    let mut meet = OpTable::from_fn(n, |_, _| 0);
    for i in 0..n {
        for j in 0..n {
            join.set(i, j, p.lub(i, j).ok_or(LatticeError::NoJoin(i, j))?);
            meet.set(i, j, p.glb(i, j).ok_or(LatticeError::NoMeet(i, j))?);
        }
    }
    Ok(LatticeTables {
        join,
        meet,
        bot,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_pairs() -> Vec<(usize, usize)> {
        // 0:0 1:a 2:b 3:b' 4:a' 5:1
        vec![(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]
    }

    #[test]
    fn singleton_is_a_poset() {
        let p = validate_poset(1, vec![true]).unwrap();
        assert_eq!(p.top(), Some(0));
    }

    #[test]
    fn fig1_order_is_a_poset_with_expected_joins() {
        let p = validate_poset(6, closure_of_pairs(6, &fig1_pairs())).unwrap();
        let l = lattice_from_order(&p).unwrap();
        assert_eq!((l.bot, l.top), (0, 5));
        // a ∨ b' has only 1 as a common upper bound
        assert_eq!(l.join.get(1, 3), 5);
        assert_eq!(l.meet.get(2, 4), 0);
        assert_eq!(l.join.get(1, 2), 2);
    }

    #[test]
    fn two_cycle_is_not_antisymmetric() {
        let rel = vec![true, true, true, true];
        assert_eq!(validate_poset(2, rel), Err(PosetError::NotAntisymmetric(0, 1)));
    }

    #[test]
    fn missing_diagonal_and_transitivity() {
        assert_eq!(validate_poset(1, vec![false]), Err(PosetError::NotReflexive(0)));
        // 0<=1, 1<=2 but not 0<=2
        let mut rel = vec![false; 9];
        for i in 0..3 {
            rel[i * 3 + i] = true;
        }
        rel[1] = true;
        rel[5] = true;
        assert_eq!(validate_poset(3, rel), Err(PosetError::NotTransitive(0, 1, 2)));
        assert_eq!(validate_poset(0, vec![]), Err(PosetError::Empty));
    }

    #[test]
    fn antichain_has_no_top() {
        let p = validate_poset(2, vec![true, false, false, true]).unwrap();
        assert_eq!(lattice_from_order(&p), Err(LatticeError::NoTop));
    }

    #[test]
    fn bowtie_has_no_join() {
        // 0 < 2,3 ; 1 < 2,3 ; plus bottom 4 and top 5
        let pairs = [(0, 2), (0, 3), (1, 2), (1, 3), (4, 0), (4, 1), (2, 5), (3, 5)];
        let p = validate_poset(6, closure_of_pairs(6, &pairs)).unwrap();
        assert_eq!(lattice_from_order(&p), Err(LatticeError::NoJoin(0, 1)));
    }

    #[test]
    fn covers_of_a_chain() {
        let p = validate_poset(3, closure_of_pairs(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }
}
