//! Ortholattices as finite tables, their validation and the modular and
//! orthomodular laws.

use thiserror::Error;

use crate::poset::{lattice_from_order, LatticeError, Poset};
use crate::report::{Check, Report};
use crate::table::OpTable;
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("tables disagree on carrier size")]
    SizeMismatch,
    #[error("empty carrier")]
    Empty,
    #[error("cell ({0}, {1}) is out of range")]
    CellOutOfRange(Element, Element),
    #[error("element {0} is out of range")]
    BadIndex(Element),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A structure whose order is induced by a join table with a greatest element.
pub trait JoinOrder {
    fn size(&self) -> usize;
    fn join(&self, a: Element, b: Element) -> Element;
    fn top(&self) -> Element;
    fn labels(&self) -> &[String];

    #[inline]
    fn leq(&self, a: Element, b: Element) -> bool {
        self.join(a, b) == b
    }

    /// Greatest lower bound of `a` and `b` inside `[p, 1]`, by scanning.
    fn interval_glb(&self, p: Element, a: Element, b: Element) -> Option<Element> {
        let lb: Vec<Element> = (0..self.size())
            .filter(|&x| self.leq(p, x) && self.leq(x, a) && self.leq(x, b))
            .collect();
        lb.iter().copied().find(|&l| lb.iter().all(|&v| self.leq(v, l)))
    }
}

/// The interval `[p, 1]` in ascending index order.
pub fn interval<O: JoinOrder + ?Sized>(o: &O, p: Element) -> Result<Vec<Element>, TableError> {
    if p >= o.size() {
        return Err(TableError::BadIndex(p));
    }
    Ok((0..o.size()).filter(|&a| o.leq(p, a)).collect())
}

/// Bounded lattice with a complementation, all operations tabulated.
///
/// Construction only checks that every table entry is a valid index; the
/// lattice and orthocomplement axioms are checked by [`validate_ortholattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ortholattice {
    join: OpTable,
    meet: OpTable,
    comp: Vec<Element>,
    bot: Element,
    top: Element,
    labels: Vec<String>,
}

impl Ortholattice {
    pub fn from_tables(
        join: OpTable,
        meet: OpTable,
        comp: Vec<Element>,
        bot: Element,
        top: Element,
        labels: Option<Vec<String>>,
    ) -> Result<Self, TableError> {
        let n = join.size();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if meet.size() != n || comp.len() != n {
            return Err(TableError::SizeMismatch);
        }
        if let Some((i, j)) = join.first_out_of_range().or(meet.first_out_of_range()) {
            return Err(TableError::CellOutOfRange(i, j));
        }
        if let Some(&bad) = comp.iter().chain([&bot, &top]).find(|&&v| v >= n) {
            return Err(TableError::BadIndex(bad));
        }
        let labels = labels.unwrap_or_else(|| crate::default_labels(n));
        if labels.len() != n {
            return Err(TableError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        Ok(Ortholattice {
            join,
            meet,
            comp,
            bot,
            top,
            labels,
        })
    }

    /// Builds the tables of a lattice order and attaches `comp`.
    pub fn from_order(
        order: &Poset,
        comp: Vec<Element>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, OrderToLatticeError> {
        let t = lattice_from_order(order)?;
        Ok(Self::from_tables(t.join, t.meet, comp, t.bot, t.top, labels)?)
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet.get(a, b)
    }

    pub fn comp(&self, a: Element) -> Element {
        self.comp[a]
    }

    pub fn bot(&self) -> Element {
        self.bot
    }

    pub fn join_table(&self) -> &OpTable {
        &self.join
    }

    pub fn meet_table(&self) -> &OpTable {
        &self.meet
    }

    pub fn comp_map(&self) -> &[Element] {
        &self.comp
    }

    /// Replaces the complementation, keeping the lattice.
    pub fn with_comp(&self, comp: Vec<Element>) -> Result<Self, TableError> {
        Self::from_tables(
            self.join.clone(),
            self.meet.clone(),
            comp,
            self.bot,
            self.top,
            Some(self.labels.clone()),
        )
    }

    /// The induced order as a validated poset.
    pub fn order(&self) -> Poset {
        let n = self.size();
        let rel = (0..n * n).map(|k| self.leq(k / n, k % n)).collect();
        crate::poset::validate_poset(n, rel).expect("join table of a validated lattice induces an order")
    }

    /// `comp(x) ∨ y`, the Boolean-style implication.
    pub fn classical_implication(&self, x: Element, y: Element) -> Element {
        self.join(self.comp(x), y)
    }

    /// First pair `a ≠ b` with `a⊥∨b = 1` and `b⊥∨a = 1`.
    pub fn implication_anomaly(&self) -> Option<(Element, Element)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| {
                a != b
                    && self.classical_implication(a, b) == self.top
                    && self.classical_implication(b, a) == self.top
            })
    }

    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderToLatticeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Table(#[from] TableError),
}

impl JoinOrder for Ortholattice {
    fn size(&self) -> usize {
        self.comp.len()
    }

    #[inline]
    fn join(&self, a: Element, b: Element) -> Element {
        self.join.get(a, b)
    }

    fn top(&self) -> Element {
        self.top
    }

    fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (Element, Element)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (Element, Element, Element)> {
    (0..n).flat_map(move |a| pairs(n).map(move |(b, c)| (a, b, c)))
}

fn first1(n: usize, bad: impl Fn(Element) -> bool) -> Option<Vec<Element>> {
    (0..n).find(|&a| bad(a)).map(|a| vec![a])
}

fn first2(n: usize, bad: impl Fn(Element, Element) -> bool) -> Option<Vec<Element>> {
    pairs(n).find(|&(a, b)| bad(a, b)).map(|(a, b)| vec![a, b])
}

fn first3(n: usize, bad: impl Fn(Element, Element, Element) -> bool) -> Option<Vec<Element>> {
    triples(n)
        .find(|&(a, b, c)| bad(a, b, c))
        .map(|(a, b, c)| vec![a, b, c])
}

/// Checks every lattice and orthocomplement axiom, one check per axiom.
pub fn validate_ortholattice(l: &Ortholattice) -> Report {
    let n = l.size();
    let j = |a, b| l.join(a, b);
    let m = |a, b| l.meet(a, b);
    let c = |a| l.comp(a);
    let (bot, top) = (l.bot, l.top);
    let mut r = Report::new();
    r.push(Check::from_elements("join commutative", first2(n, |a, b| j(a, b) != j(b, a))));
    r.push(Check::from_elements(
        "join associative",
        first3(n, |a, b, x| j(j(a, b), x) != j(a, j(b, x))),
    ));
    r.push(Check::from_elements("join idempotent", first1(n, |a| j(a, a) != a)));
    r.push(Check::from_elements("meet commutative", first2(n, |a, b| m(a, b) != m(b, a))));
    r.push(Check::from_elements(
        "meet associative",
        first3(n, |a, b, x| m(m(a, b), x) != m(a, m(b, x))),
    ));
    r.push(Check::from_elements("meet idempotent", first1(n, |a| m(a, a) != a)));
    r.push(Check::from_elements(
        "absorption",
        first2(n, |a, b| j(a, m(a, b)) != a || m(a, j(a, b)) != a),
    ));
    r.push(Check::from_elements("bottom is least", first1(n, |a| j(bot, a) != a || m(bot, a) != bot)));
    r.push(Check::from_elements("top is greatest", first1(n, |a| j(a, top) != top || m(a, top) != a)));
    r.push(Check::from_elements("complement involutory", first1(n, |a| c(c(a)) != a)));
    r.push(Check::from_elements(
        "complement antitone",
        first2(n, |a, b| l.leq(a, b) && !l.leq(c(b), c(a))),
    ));
    r.push(Check::from_elements("complement join is top", first1(n, |a| j(a, c(a)) != top)));
    r.push(Check::from_elements("complement meet is bottom", first1(n, |a| m(a, c(a)) != bot)));
    r.push(Check::from_elements(
        "De Morgan (join)",
        first2(n, |a, b| c(j(a, b)) != m(c(a), c(b))),
    ));
    r.push(Check::from_elements(
        "De Morgan (meet)",
        first2(n, |a, b| c(m(a, b)) != j(c(a), c(b))),
    ));
    r
}

/// Failure of the modular law `x ≤ z ⇒ x∨(y∧z) = (x∨y)∧z`, with the pentagon it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonModularWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub pentagon: Pentagon,
}

/// An N5 sublattice: `bottom < low < high < top`, `side` beside both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: Element,
    pub low: Element,
    pub high: Element,
    pub side: Element,
    pub top: Element,
}

impl Pentagon {
    pub fn elements(&self) -> Vec<Element> {
        let mut v = vec![self.bottom, self.low, self.high, self.side, self.top];
        v.sort_unstable();
        v
    }

    pub fn holds_in(&self, l: &Ortholattice) -> bool {
        let Pentagon {
            bottom,
            low,
            high,
            side,
            top,
        } = *self;
        let distinct = {
            let mut v = self.elements();
            v.dedup();
            v.len() == 5
        };
        distinct
            && l.leq(bottom, low)
            && l.leq(low, high)
            && l.leq(high, top)
            && l.meet(low, side) == bottom
            && l.meet(high, side) == bottom
            && l.join(low, side) == top
            && l.join(high, side) == top
    }
}

/// Assigns N5 roles to a five-element set, if it is a pentagon sublattice.
pub fn pentagon_roles(l: &Ortholattice, set: [Element; 5]) -> Option<Pentagon> {
    let mut idx = [0usize, 1, 2, 3, 4];
    loop {
        let cand = Pentagon {
            bottom: set[idx[0]],
            low: set[idx[1]],
            high: set[idx[2]],
            side: set[idx[3]],
            top: set[idx[4]],
        };
        if cand.holds_in(l) {
            return Some(cand);
        }
        if !next_permutation(&mut idx) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn is_modular(l: &Ortholattice) -> Result<(), NonModularWitness> {
    let n = l.size();
    for (x, y, z) in triples(n) {
        if !l.leq(x, z) {
            continue;
        }
        let lhs = l.join(x, l.meet(y, z));
        let rhs = l.meet(l.join(x, y), z);
        if lhs != rhs {
            let pentagon = Pentagon {
                bottom: l.meet(y, z),
                low: lhs,
                high: rhs,
                side: y,
                top: l.join(x, y),
            };
            return Err(NonModularWitness { x, y, z, pentagon });
        }
    }
    Ok(())
}

/// Whether the orthomodular law holds for the pair `x ≤ y` (vacuous otherwise).
pub fn orthomodular_law_holds(l: &Ortholattice, x: Element, y: Element) -> bool {
    !l.leq(x, y) || l.join(x, l.meet(l.comp(x), y)) == y
}

/// First pair `(x, y)` with `x ≤ y` and `x∨(x⊥∧y) ≠ y`.
pub fn is_orthomodular(l: &Ortholattice) -> Result<(), (Element, Element)> {
    match pairs(l.size()).find(|&(x, y)| !orthomodular_law_holds(l, x, y)) {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fig1_passes_and_has_the_anomaly() {
        let l = catalog::fig1_o6();
        assert!(validate_ortholattice(&l).passed());
        let (a, b) = (l.element("a").unwrap(), l.element("b").unwrap());
        assert_eq!(l.classical_implication(a, b), l.top());
        assert_eq!(l.classical_implication(b, a), l.top());
        assert!(l.implication_anomaly().is_some());
    }

    #[test]
    fn swapped_complement_breaks_involution_at_a() {
        let l = catalog::fig1_o6();
        let mut comp = l.comp_map().to_vec();
        comp[1] = 3; // a ↦ b'
        let bad = l.with_comp(comp).unwrap();
        let r = validate_ortholattice(&bad);
        assert!(!r.passed());
        assert!(r.get("complement join is top").unwrap().passed());
        assert!(r.get("complement meet is bottom").unwrap().passed());
        let inv = r.get("complement involutory").unwrap();
        assert_eq!(inv.counterexample, Some(crate::Counterexample::Elements(vec![1])));
        // the altered map is still antitone; only involution breaks
        assert!(r.get("complement antitone").unwrap().passed());
    }

    #[test]
    fn intervals() {
        let l = catalog::fig1_o6();
        assert_eq!(interval(&l, 1).unwrap(), vec![1, 2, 5]);
        assert_eq!(interval(&l, l.top()).unwrap(), vec![l.top()]);
        assert_eq!(interval(&l, l.bot()).unwrap(), (0..6).collect::<Vec<_>>());
        assert_eq!(interval(&l, 6), Err(TableError::BadIndex(6)));
        let f2 = catalog::fig2_strong12();
        let e = f2.element("e").unwrap();
        let want: Vec<_> = ["e", "c'", "d'", "1"].iter().map(|s| f2.element(s).unwrap()).collect();
        assert_eq!(interval(&f2, e).unwrap(), want);
    }

    #[test]
    fn fig2_is_neither_modular_nor_orthomodular() {
        let l = catalog::fig2_strong12();
        let w = is_modular(&l).unwrap_err();
        assert!(w.pentagon.holds_in(&l));
        let names = ["0", "e", "d", "b'", "1"].map(|s| l.element(s).unwrap());
        let p = pentagon_roles(&l, names).expect("{0,e,d,b',1} is a pentagon");
        assert_eq!(p.side, l.element("e").unwrap());
        assert!(is_orthomodular(&l).is_err());
        let (a, cp) = (l.element("a").unwrap(), l.element("c'").unwrap());
        assert!(l.leq(a, cp));
        assert_eq!(l.join(a, l.meet(l.comp(a), cp)), a);
        assert!(!orthomodular_law_holds(&l, a, cp));
    }

    #[test]
    fn mo2_is_orthomodular_and_modular() {
        let l = catalog::mo2();
        assert!(validate_ortholattice(&l).passed());
        assert_eq!(is_orthomodular(&l), Ok(()));
        assert_eq!(is_modular(&l), Ok(()));
    }

    #[test]
    fn booleans_validate() {
        for l in [catalog::chain2(), catalog::bool4(), catalog::bool8()] {
            assert!(validate_ortholattice(&l).passed());
            assert!(is_orthomodular(&l).is_ok());
            assert!(l.implication_anomaly().is_none());
        }
    }

    #[test]
    fn de_morgan_iff_involutory_antitone_on_all_complement_maps() {
        // Among all involutive maps on small catalog lattices, the De Morgan
        // laws hold exactly when the map is antitone.
        for l in [catalog::bool4(), catalog::mo2(), catalog::fig1_o6()] {
            let n = l.size();
            let mut map = vec![0usize; n];
            loop {
                let cand = l.with_comp(map.clone()).unwrap();
                let r = validate_ortholattice(&cand);
                let dm = r.get("De Morgan (join)").unwrap().passed()
                    && r.get("De Morgan (meet)").unwrap().passed();
                if r.get("complement involutory").unwrap().passed() {
                    let antitone = r.get("complement antitone").unwrap().passed();
                    assert_eq!(dm, antitone, "map {map:?}");
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    map[k] += 1;
                    if map[k] < n {
                        break;
                    }
                    map[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }
}
