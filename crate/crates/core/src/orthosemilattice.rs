//! Join semilattices with a top in which every interval `[p, 1]` is an
//! ortholattice under a chosen complementation.

use thiserror::Error;

use crate::ortholattice::{interval, JoinOrder, Ortholattice, TableError};
use crate::report::{Check, Counterexample, Report};
use crate::strong::{validate_witness, IntervalWitness};
use crate::table::{OpTable, Subset};
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthosemilattice {
    join: OpTable,
    top: Element,
    witnesses: Vec<IntervalWitness>,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("empty filter")]
    Empty,
    #[error("filter size {got} does not match carrier size {expected}")]
    Size { expected: usize, got: usize },
    #[error("not upward closed: {0} is in the filter, {0} <= {1}, {1} is not")]
    NotUpwardClosed(Element, Element),
    #[error("not strong: {0}")]
    NotStrong(#[from] crate::strong::StrongError),
}

impl Orthosemilattice {
    /// Assembles an orthosemilattice, checking only index validity and that
    /// `witnesses[p]` is indexed by `p`.
    pub fn from_parts(
        join: OpTable,
        top: Element,
        witnesses: Vec<IntervalWitness>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, TableError> {
        let n = join.size();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if let Some((i, j)) = join.first_out_of_range() {
            return Err(TableError::CellOutOfRange(i, j));
        }
        if top >= n {
            return Err(TableError::BadIndex(top));
        }
        if witnesses.len() != n {
            return Err(TableError::SizeMismatch);
        }
        for (p, w) in witnesses.iter().enumerate() {
            if w.p != p || w.cmap.len() != n {
                return Err(TableError::SizeMismatch);
            }
            if let Some(&bad) = w.cmap.iter().flatten().find(|&&c| c >= n) {
                return Err(TableError::BadIndex(bad));
            }
        }
        let labels = labels.unwrap_or_else(|| crate::default_labels(n));
        if labels.len() != n {
            return Err(TableError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        Ok(Orthosemilattice {
            join,
            top,
            witnesses,
            labels,
        })
    }

    /// Restricts a join order and its witness family to an order filter.
    pub(crate) fn from_filter<O: JoinOrder + ?Sized>(
        l: &O,
        witnesses: &[IntervalWitness],
        f: &Subset,
    ) -> Result<Self, FilterError> {
        let n = l.size();
        if f.universe_size() != n {
            return Err(FilterError::Size {
                expected: n,
                got: f.universe_size(),
            });
        }
        if f.is_empty() {
            return Err(FilterError::Empty);
        }
        for i in f.iter() {
            if let Some(j) = (0..n).find(|&j| l.leq(i, j) && !f.contains(j)) {
                return Err(FilterError::NotUpwardClosed(i, j));
            }
        }
        let old: Vec<Element> = f.elements();
        let mut new_index = vec![usize::MAX; n];
        for (k, &e) in old.iter().enumerate() {
            new_index[e] = k;
        }
        let m = old.len();
        let join = OpTable::from_fn(m, |i, j| new_index[l.join(old[i], old[j])]);
        let ws = old
            .iter()
            .enumerate()
            .map(|(k, &p)| IntervalWitness {
                p: k,
                cmap: old.iter().map(|&a| witnesses[p].get(a).map(|c| new_index[c])).collect(),
            })
            .collect();
        let labels = old.iter().map(|&e| l.labels()[e].clone()).collect();
        Ok(Self::from_parts(join, new_index[l.top()], ws, Some(labels)).expect("restriction keeps indices valid"))
    }

    pub fn witnesses(&self) -> &[IntervalWitness] {
        &self.witnesses
    }

    /// Restriction to an order filter; the result is again an orthosemilattice.
    pub fn filter(&self, f: &Subset) -> Result<Orthosemilattice, FilterError> {
        Self::from_filter(self, &self.witnesses, f)
    }

    pub fn witness(&self, p: Element) -> &IntervalWitness {
        &self.witnesses[p]
    }

    pub fn join_table(&self) -> &OpTable {
        &self.join
    }

    /// `a⊥p` for `a ∈ [p, 1]`.
    pub fn interval_comp(&self, p: Element, a: Element) -> Option<Element> {
        self.witnesses[p].get(a)
    }

    /// The De Morgan meet `(a⊥p ∨ b⊥p)⊥p` inside `[p, 1]`.
    pub fn witness_meet(&self, p: Element, a: Element, b: Element) -> Option<Element> {
        let ca = self.interval_comp(p, a)?;
        let cb = self.interval_comp(p, b)?;
        self.interval_comp(p, self.join(ca, cb))
    }

    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }
}

impl JoinOrder for Orthosemilattice {
    fn size(&self) -> usize {
        self.join.size()
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

/// Restricts a strong ortholattice to the order filter `f`.
pub fn order_filter_to_orthosemilattice(l: &Ortholattice, f: &Subset) -> Result<Orthosemilattice, FilterError> {
    crate::strong::is_strong(l)?.filter(f)
}

/// Upward closure of a set of generators.
pub fn upward_closure<O: JoinOrder + ?Sized>(o: &O, generators: &[Element]) -> Subset {
    let mut s = Subset::empty(o.size());
    for &g in generators {
        for a in 0..o.size() {
            if o.leq(g, a) {
                s.insert(a);
            }
        }
    }
    s
}

/// Semilattice laws, the top, every interval witness and the De Morgan meet.
pub fn validate_orthosemilattice(s: &Orthosemilattice) -> Report {
    let n = s.size();
    let j = |a, b| s.join(a, b);
    let mut r = Report::new();
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    r.push(Check::from_elements(
        "join commutative",
        pairs().find(|&(a, b)| j(a, b) != j(b, a)).map(|(a, b)| vec![a, b]),
    ));
    r.push(Check::from_elements(
        "join associative",
        pairs()
            .flat_map(|(a, b)| (0..n).map(move |c| (a, b, c)))
            .find(|&(a, b, c)| j(j(a, b), c) != j(a, j(b, c)))
            .map(|(a, b, c)| vec![a, b, c]),
    ));
    r.push(Check::from_elements(
        "join idempotent",
        (0..n).find(|&a| j(a, a) != a).map(|a| vec![a]),
    ));
    r.push(Check::from_elements(
        "top is greatest",
        (0..n).find(|&a| j(a, s.top) != s.top).map(|a| vec![a]),
    ));

    // Interval lattices: every pair in [p,1] has a glb there.
    let mut lattice_cx = None;
    'outer: for p in 0..n {
        let members = interval(s, p).expect("p in range");
        for &a in &members {
            for &b in &members {
                if s.interval_glb(p, a, b).is_none() {
                    lattice_cx = Some(vec![p, a, b]);
                    break 'outer;
                }
            }
        }
    }
    r.push(Check::from_elements("intervals are lattices", lattice_cx));

    let mut witness_cx = None;
    for (p, w) in s.witnesses.iter().enumerate() {
        if let Err(v) = validate_witness(s, w) {
            witness_cx = Some(Counterexample::Text(format!("p={}: {v}", s.labels[p])));
            break;
        }
    }
    r.push(Check {
        name: "interval witnesses".into(),
        counterexample: witness_cx.clone(),
    });

    let mut meet_cx = None;
    if witness_cx.is_none() {
        'outer: for p in 0..n {
            let members = interval(s, p).expect("p in range");
            for &a in &members {
                for &b in &members {
                    if s.witness_meet(p, a, b) != s.interval_glb(p, a, b) {
                        meet_cx = Some(Counterexample::Elements(vec![p, a, b]));
                        break 'outer;
                    }
                }
            }
        }
    } else {
        meet_cx = Some(Counterexample::Text("skipped: invalid witness".into()));
    }
    r.push(Check {
        name: "De Morgan meet".into(),
        counterexample: meet_cx,
    });
    r
}

/// For `p ≤ q` and `a, b ∈ [q, 1]`, the witness meet in `[p, 1]` equals the one in `[q, 1]`.
pub fn check_overlap_consistency(s: &Orthosemilattice) -> Report {
    let n = s.size();
    let mut cx = None;
    'outer: for p in 0..n {
        for q in 0..n {
            if !s.leq(p, q) {
                continue;
            }
            let members = interval(s, q).expect("q in range");
            for &a in &members {
                for &b in &members {
                    if s.witness_meet(p, a, b) != s.witness_meet(q, a, b) {
                        cx = Some(vec![p, q, a, b]);
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut r = Report::new();
    r.push(Check::from_elements("meets coincide on overlaps", cx));
    r
}
