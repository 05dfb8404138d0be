//! Interval orthocomplementations and strong ortholattices.
//!
//! An ortholattice is strong when every interval `[p, 1]` carries an
//! orthocomplementation of its own. Such complementations need not be unique,
//! so they are treated as data: [`find_interval_orthocomplementation`] returns
//! the lexicographically least one and [`is_strong`] stores a complete family.

use thiserror::Error;

use crate::ortholattice::{interval, validate_ortholattice, JoinOrder, Ortholattice};
use crate::orthosemilattice::{FilterError, Orthosemilattice};
use crate::table::Subset;
use crate::{Element, MAX_SEARCH_SIZE};

/// An orthocomplementation of the interval `[p, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalWitness {
    pub p: Element,
    /// `cmap[a]` is defined exactly for `a ≥ p`.
    pub cmap: Vec<Option<Element>>,
}

impl IntervalWitness {
    pub fn get(&self, a: Element) -> Option<Element> {
        self.cmap.get(a).copied().flatten()
    }

    /// Defined pairs `(a, a⊥p)` in ascending order of `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.cmap
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.map(|c| (a, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessViolation {
    #[error("witness has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("base {0} out of range")]
    BadBase(Element),
    #[error("complement of {0} is defined outside the interval")]
    DefinedOutside(Element),
    #[error("complement of {0} is missing")]
    Undefined(Element),
    #[error("complement of {0} leaves the interval")]
    LeavesInterval(Element),
    #[error("not involutory at {0}")]
    NotInvolutory(Element),
    #[error("not antitone at {0} <= {1}")]
    NotAntitone(Element, Element),
    #[error("{0} joined with its complement is not the top")]
    JoinNotTop(Element),
    #[error("{0} met with its complement is not the base")]
    MeetNotBase(Element),
}

impl WitnessViolation {
    pub fn elements(&self) -> Vec<Element> {
        use WitnessViolation::*;
        match *self {
            Length { .. } => vec![],
            BadBase(a) | DefinedOutside(a) | Undefined(a) | LeavesInterval(a) | NotInvolutory(a)
            | JoinNotTop(a) | MeetNotBase(a) => vec![a],
            NotAntitone(a, b) => vec![a, b],
        }
    }
}

/// Checks that `w` is an orthocomplementation of `[w.p, 1]` in `o`.
///
/// Meets are greatest lower bounds inside the interval, which for a lattice
/// coincide with the ambient meet.
pub fn validate_witness<O: JoinOrder + ?Sized>(o: &O, w: &IntervalWitness) -> Result<(), WitnessViolation> {
    let n = o.size();
    if w.cmap.len() != n {
        return Err(WitnessViolation::Length {
            expected: n,
            got: w.cmap.len(),
        });
    }
    let p = w.p;
    if p >= n {
        return Err(WitnessViolation::BadBase(p));
    }
    let top = o.top();
    for a in 0..n {
        match (o.leq(p, a), w.cmap[a]) {
            (false, Some(_)) => return Err(WitnessViolation::DefinedOutside(a)),
            (true, None) => return Err(WitnessViolation::Undefined(a)),
            (true, Some(c)) if c >= n || !o.leq(p, c) => {
                return Err(WitnessViolation::LeavesInterval(a))
            }
            _ => {}
        }
    }
    let c = |a: Element| w.cmap[a].expect("checked above");
    let members: Vec<Element> = (0..n).filter(|&a| o.leq(p, a)).collect();
    for &a in &members {
        if c(c(a)) != a {
            return Err(WitnessViolation::NotInvolutory(a));
        }
    }
    for &a in &members {
        for &b in &members {
            if o.leq(a, b) && !o.leq(c(b), c(a)) {
                return Err(WitnessViolation::NotAntitone(a, b));
            }
        }
    }
    for &a in &members {
        if o.join(a, c(a)) != top {
            return Err(WitnessViolation::JoinNotTop(a));
        }
        if o.interval_glb(p, a, c(a)) != Some(p) {
            return Err(WitnessViolation::MeetNotBase(a));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("element {0} out of range")]
    BadIndex(Element),
    #[error("carrier of {0} elements exceeds the search limit")]
    TooLarge(usize),
    #[error("[{p}, 1] has no orthocomplementation; {element} cannot be complemented")]
    NotFound { p: Element, element: Element },
}

struct Search<'a> {
    l: &'a Ortholattice,
    p: Element,
    members: Vec<Element>,
    image: Vec<Option<Element>>,
    deepest: Option<(usize, Element)>,
}

impl Search<'_> {
    fn consistent(&self, a: Element, ca: Element) -> bool {
        let l = self.l;
        self.members.iter().all(|&x| {
            let Some(cx) = self.image[x] else { return true };
            (!l.leq(a, x) || l.leq(cx, ca)) && (!l.leq(x, a) || l.leq(ca, cx))
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        let Some(&a) = self.members.iter().find(|&&x| self.image[x].is_none()) else {
            return true;
        };
        let l = self.l;
        for i in 0..self.members.len() {
            let b = self.members[i];
            if self.image[b].is_some() && b != a {
                continue;
            }
            if l.join(a, b) != l.top() || l.meet(a, b) != self.p {
                continue;
            }
            self.image[a] = Some(b);
            self.image[b] = Some(a);
            if self.consistent(a, b) && self.consistent(b, a) && self.run(depth + 1) {
                return true;
            }
            self.image[a] = None;
            self.image[b] = None;
        }
        if self.deepest.is_none_or(|(d, _)| depth > d) {
            self.deepest = Some((depth, a));
        }
        false
    }
}

/// Lexicographically least orthocomplementation of `[p, 1]`.
///
/// Elements of the interval are assigned in ascending index order, each trying
/// candidate images in ascending order; assigning `a ↦ b` also fixes `b ↦ a`.
pub fn find_interval_orthocomplementation(
    l: &Ortholattice,
    p: Element,
) -> Result<IntervalWitness, SearchError> {
    let n = l.size();
    if p >= n {
        return Err(SearchError::BadIndex(p));
    }
    if n > MAX_SEARCH_SIZE {
        return Err(SearchError::TooLarge(n));
    }
    let members = interval(l, p).map_err(|_| SearchError::BadIndex(p))?;
    let mut s = Search {
        l,
        p,
        members,
        image: vec![None; n],
        deepest: None,
    };
    if s.run(0) {
        Ok(IntervalWitness { p, cmap: s.image })
    } else {
        let element = s.deepest.map(|(_, a)| a).unwrap_or(p);
        Err(SearchError::NotFound { p, element })
    }
}

/// The map `a ↦ a⊥ ∨ p` on `[p, 1]`; a valid witness in orthomodular lattices.
pub fn relative_complement_witness(l: &Ortholattice, p: Element) -> IntervalWitness {
    let cmap = (0..l.size())
        .map(|a| l.leq(p, a).then(|| l.join(l.comp(a), p)))
        .collect();
    IntervalWitness { p, cmap }
}

/// The global orthocomplement viewed as a witness for `[0, 1]`.
pub fn global_witness(l: &Ortholattice) -> IntervalWitness {
    IntervalWitness {
        p: l.bot(),
        cmap: (0..l.size()).map(|a| Some(l.comp(a))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrongError {
    #[error("not an ortholattice: {0} fails")]
    NotOrtholattice(String),
    #[error("not strong: [{p}, 1] has no orthocomplementation ({element} cannot be complemented)")]
    NoWitness { p: Element, element: Element },
    #[error("carrier of {0} elements exceeds the search limit")]
    TooLarge(usize),
}

/// An ortholattice together with a complete family of interval witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongOrtholattice {
    lattice: Ortholattice,
    witnesses: Vec<IntervalWitness>,
}

impl StrongOrtholattice {
    pub fn lattice(&self) -> &Ortholattice {
        &self.lattice
    }

    pub fn witnesses(&self) -> &[IntervalWitness] {
        &self.witnesses
    }

    pub fn witness(&self, p: Element) -> &IntervalWitness {
        &self.witnesses[p]
    }

    /// The whole lattice seen as an orthosemilattice.
    pub fn to_orthosemilattice(&self) -> Orthosemilattice {
        self.filter(&Subset::full(self.lattice.size()))
            .expect("the whole carrier is an order filter")
    }

    /// Restricts join and witnesses to an order filter.
    pub fn filter(&self, f: &Subset) -> Result<Orthosemilattice, FilterError> {
        Orthosemilattice::from_filter(&self.lattice, &self.witnesses, f)
    }
}

/// Decides strongness, returning the witness family or the least failing `p`.
///
/// The witness stored for the bottom element is the global complementation;
/// every other interval gets the lexicographically least search result.
pub fn is_strong(l: &Ortholattice) -> Result<StrongOrtholattice, StrongError> {
    if let Some(c) = validate_ortholattice(l).failures().next() {
        return Err(StrongError::NotOrtholattice(c.name.clone()));
    }
    let mut witnesses = Vec::with_capacity(l.size());
    for p in 0..l.size() {
        let w = if p == l.bot() {
            global_witness(l)
        } else {
            match find_interval_orthocomplementation(l, p) {
                Ok(w) => w,
                Err(SearchError::NotFound { p, element }) => {
                    return Err(StrongError::NoWitness { p, element })
                }
                Err(SearchError::TooLarge(n)) => return Err(StrongError::TooLarge(n)),
                Err(SearchError::BadIndex(_)) => unreachable!("p ranges over the carrier"),
            }
        };
        witnesses.push(w);
    }
    Ok(StrongOrtholattice {
        lattice: l.clone(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pair_set(w: &IntervalWitness) -> Vec<(Element, Element)> {
        w.pairs().collect()
    }

    #[test]
    fn three_chain_interval_has_no_witness() {
        let l = catalog::fig1_o6();
        let a = l.element("a").unwrap();
        match find_interval_orthocomplementation(&l, a) {
            Err(SearchError::NotFound { p, .. }) => assert_eq!(p, a),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fig1_fails_at_a() {
        let l = catalog::fig1_o6();
        match is_strong(&l) {
            Err(StrongError::NoWitness { p, .. }) => assert_eq!(p, l.element("a").unwrap()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fig2_boolean_interval_at_e() {
        let l = catalog::fig2_strong12();
        let id = |s| l.element(s).unwrap();
        let w = find_interval_orthocomplementation(&l, id("e")).unwrap();
        let mut want = vec![
            (id("e"), id("1")),
            (id("c'"), id("d'")),
            (id("d'"), id("c'")),
            (id("1"), id("e")),
        ];
        want.sort();
        assert_eq!(pair_set(&w), want);
        assert_eq!(validate_witness(&l, &w), Ok(()));
    }

    #[test]
    fn fig2_is_strong() {
        let s = is_strong(&catalog::fig2_strong12()).unwrap();
        for w in s.witnesses() {
            assert_eq!(validate_witness(s.lattice(), w), Ok(()));
        }
    }

    #[test]
    fn search_at_bottom_finds_lex_least_valid_witness() {
        for l in [catalog::bool4(), catalog::mo2(), catalog::fig2_strong12()] {
            let w = find_interval_orthocomplementation(&l, l.bot()).unwrap();
            assert_eq!(validate_witness(&l, &w), Ok(()));
            let global: Vec<_> = global_witness(&l).cmap;
            assert!(w.cmap <= global, "search result must not exceed the global comp");
        }
    }

    #[test]
    fn boolean_witness_is_relative_complement() {
        for l in [catalog::bool4(), catalog::bool8()] {
            let s = is_strong(&l).unwrap();
            for p in 0..l.size() {
                assert_eq!(s.witness(p), &relative_complement_witness(&l, p));
            }
        }
    }

    #[test]
    fn orthomodular_relative_complements_are_witnesses() {
        for l in [catalog::mo2(), catalog::bool8(), catalog::chain2()] {
            for p in 0..l.size() {
                assert_eq!(validate_witness(&l, &relative_complement_witness(&l, p)), Ok(()));
            }
        }
    }

    #[test]
    fn corrupted_witness_is_rejected() {
        let l = catalog::bool4();
        let mut w = relative_complement_witness(&l, 0);
        w.cmap[1] = Some(1);
        assert!(validate_witness(&l, &w).is_err());
        let mut w = relative_complement_witness(&l, 1);
        w.cmap[0] = Some(3);
        assert_eq!(validate_witness(&l, &w), Err(WitnessViolation::DefinedOutside(0)));
    }

    #[test]
    fn strong_iff_every_interval_search_succeeds() {
        for e in catalog::catalog() {
            if let crate::Payload::Ortholattice(l) = &e.payload {
                let strong = is_strong(l).is_ok();
                let all = (0..l.size()).all(|p| find_interval_orthocomplementation(l, p).is_ok());
                assert_eq!(strong, all, "{}", e.name);
            }
        }
    }

    #[test]
    fn bad_index_and_size_guard() {
        let l = catalog::bool4();
        assert_eq!(find_interval_orthocomplementation(&l, 9), Err(SearchError::BadIndex(9)));
        let big = catalog::boolean(5);
        assert_eq!(find_interval_orthocomplementation(&big, 0), Err(SearchError::TooLarge(32)));
    }
}
