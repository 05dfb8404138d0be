//! The implication reduct `(A; •, 1)` of an orthosemilattice and its inverse.
//!
//! `x•y = (x∨y)⊥y` turns an orthosemilattice into an implication orthoalgebra;
//! conversely `x ≤ y iff x•y = 1`, `x∨y = (x•y)•y` and `a⊥p = a•p` recover the
//! orthosemilattice.

use thiserror::Error;

use crate::ortholattice::{JoinOrder, TableError};
use crate::orthosemilattice::{validate_orthosemilattice, Orthosemilattice};
use crate::poset::{validate_poset, Poset, PosetError};
use crate::report::{Check, Report};
use crate::strong::IntervalWitness;
use crate::table::OpTable;
use crate::Element;

pub const ID_A_TOP: &str = "(a) x•1 = 1";
pub const ID_A_SELF: &str = "(a) x•x = 1";
pub const ID_A_ONE: &str = "(a) 1•x = x";
pub const ID_B: &str = "(b) (x•y)•y = (y•x)•x";
pub const ID_C: &str = "(c) (((x•y)•y)•p)•(x•p) = 1";
pub const ID_D: &str = "(d) (((x•p)•p)•p)•((x•p)•p) = (x•p)•p";
pub const ID_D_PRIME: &str = "(d') p <= x => ((x•p)•x)•x = 1";
pub const ID_D_EQUIV: &str = "(d) <=> (d')";

/// Carrier, the constant `1` and the table of `•`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationTable {
    bullet: OpTable,
    one: Element,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImplicationError {
    #[error("no interval witness for {0}")]
    MissingWitness(Element),
    #[error("induced relation is not an order: {0}")]
    NotAnOrder(PosetError),
    #[error("{0} is not below the constant 1")]
    OneNotGreatest(Element),
    #[error("(x•y)•y is not the least upper bound of {0} and {1}")]
    NotAJoin(Element, Element),
    #[error("{0} is not in the interval above {1}")]
    OutOfInterval(Element, Element),
    #[error("not an implication orthoalgebra: {0} fails")]
    IdentityFails(String),
    #[error("reconstruction fails validation: {0}")]
    Invalid(String),
}

impl ImplicationTable {
    pub fn from_parts(bullet: OpTable, one: Element, labels: Option<Vec<String>>) -> Result<Self, TableError> {
        let n = bullet.size();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if let Some((i, j)) = bullet.first_out_of_range() {
            return Err(TableError::CellOutOfRange(i, j));
        }
        if one >= n {
            return Err(TableError::BadIndex(one));
        }
        let labels = labels.unwrap_or_else(|| crate::default_labels(n));
        if labels.len() != n {
            return Err(TableError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        Ok(ImplicationTable { bullet, one, labels })
    }

    pub fn size(&self) -> usize {
        self.bullet.size()
    }

    #[inline]
    pub fn bullet(&self, x: Element, y: Element) -> Element {
        self.bullet.get(x, y)
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn table(&self) -> &OpTable {
        &self.bullet
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    /// `x ≤ y iff x•y = 1`, unchecked.
    #[inline]
    pub fn below(&self, x: Element, y: Element) -> bool {
        self.bullet(x, y) == self.one
    }

    /// `(x•y)•y`, unchecked.
    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.bullet(self.bullet(x, y), y)
    }

    pub fn with_cell(&self, x: Element, y: Element, v: Element) -> Self {
        let mut t = self.clone();
        t.bullet.set(x, y, v);
        t
    }
}

/// `x•y = (x∨y)⊥y`, read off the stored witnesses.
pub fn derive_bullet(s: &Orthosemilattice) -> Result<ImplicationTable, ImplicationError> {
    let n = s.size();
    let mut bullet = OpTable::from_fn(n, |_, _| 0);
    for x in 0..n {
        for y in 0..n {
            let v = s
                .interval_comp(y, s.join(x, y))
                .ok_or(ImplicationError::MissingWitness(y))?;
            bullet.set(x, y, v);
        }
    }
    Ok(ImplicationTable::from_parts(bullet, s.top(), Some(s.labels().to_vec())).expect("indices come from s"))
}

/// Exhaustive check of identities (a)–(d), the conditional form (d') and
/// agreement between (d) and (d').
pub fn check_ioa_identities(t: &ImplicationTable) -> Report {
    let n = t.size();
    let one = t.one;
    let b = |x, y| t.bullet(x, y);
    let mut r = Report::new();
    let first1 = |bad: &dyn Fn(Element) -> bool| (0..n).find(|&x| bad(x)).map(|x| vec![x]);
    let first2 = |bad: &dyn Fn(Element, Element) -> bool| {
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| bad(x, y))
            .map(|(x, y)| vec![x, y])
    };
    r.push(Check::from_elements(ID_A_TOP, first1(&|x| b(x, one) != one)));
    r.push(Check::from_elements(ID_A_SELF, first1(&|x| b(x, x) != one)));
    r.push(Check::from_elements(ID_A_ONE, first1(&|x| b(one, x) != x)));
    r.push(Check::from_elements(ID_B, first2(&|x, y| b(b(x, y), y) != b(b(y, x), x))));
    let mut c_cx = None;
    'c: for x in 0..n {
        for y in 0..n {
            let xy = b(b(x, y), y);
            for p in 0..n {
                if b(b(xy, p), b(x, p)) != one {
                    c_cx = Some(vec![x, y, p]);
                    break 'c;
                }
            }
        }
    }
    r.push(Check::from_elements(ID_C, c_cx));
    let d = first2(&|x, p| {
        let xpp = b(b(x, p), p);
        b(b(xpp, p), xpp) != xpp
    });
    let d_prime = first2(&|x, p| t.below(p, x) && b(b(b(x, p), x), x) != one);
    let agree = d.is_none() == d_prime.is_none();
    r.push(Check::from_elements(ID_D, d));
    r.push(Check::from_elements(ID_D_PRIME, d_prime));
    r.push(Check::expect(ID_D_EQUIV, agree, || "(d) and (d') disagree".into()));
    r
}

/// Interval behaviour of `a ↦ a•p` on `[p, 1]`: antitone, involutive,
/// De Morgan against [`interval_meet`], and the complement laws.
pub fn check_interval_properties(t: &ImplicationTable) -> Report {
    let n = t.size();
    let one = t.one;
    let b = |x, y| t.bullet(x, y);
    let meet = |p, x, y| interval_meet(t, p, x, y).ok();
    let mut antitone = None;
    let mut involution = None;
    let mut de_morgan = None;
    let mut complement = None;
    for p in 0..n {
        for x in (0..n).filter(|&x| t.below(p, x)) {
            if involution.is_none() && b(b(x, p), p) != x {
                involution = Some(vec![p, x]);
            }
            if complement.is_none() && (t.join(x, b(x, p)) != one || meet(p, x, b(x, p)) != Some(p)) {
                complement = Some(vec![p, x]);
            }
            for y in (0..n).filter(|&y| t.below(p, y)) {
                if antitone.is_none() && t.below(x, y) && !t.below(b(y, p), b(x, p)) {
                    antitone = Some(vec![p, x, y]);
                }
                if de_morgan.is_none() && Some(b(t.join(x, y), p)) != meet(p, b(x, p), b(y, p)) {
                    de_morgan = Some(vec![p, x, y]);
                }
            }
        }
    }
    let mut r = Report::new();
    r.push(Check::from_elements("x <= y => y•p <= x•p on [p,1]", antitone));
    r.push(Check::from_elements("(x•p)•p = x on [p,1]", involution));
    r.push(Check::from_elements("(x∨y)•p = (x•p)∧(y•p) on [p,1]", de_morgan));
    r.push(Check::from_elements("x∨(x•p) = 1 and x∧(x•p) = p on [p,1]", complement));
    r
}

/// The relation `x ≤ y iff x•y = 1`, checked to be an order with top `1`.
pub fn induced_order(t: &ImplicationTable) -> Result<Poset, ImplicationError> {
    let n = t.size();
    let rel = (0..n * n).map(|k| t.below(k / n, k % n)).collect();
    let p = validate_poset(n, rel).map_err(ImplicationError::NotAnOrder)?;
    if let Some(x) = (0..n).find(|&x| !p.leq(x, t.one)) {
        return Err(ImplicationError::OneNotGreatest(x));
    }
    Ok(p)
}

/// `x∨y = (x•y)•y`, verified to be the least upper bound in the induced order.
pub fn induced_join(t: &ImplicationTable) -> Result<OpTable, ImplicationError> {
    let order = induced_order(t)?;
    let n = t.size();
    let join = OpTable::from_fn(n, |x, y| t.join(x, y));
    for x in 0..n {
        for y in 0..n {
            if order.lub(x, y) != Some(join.get(x, y)) {
                return Err(ImplicationError::NotAJoin(x, y));
            }
        }
    }
    Ok(join)
}

/// `a∧b = (((a•p)•(b•p))•(b•p))•p` for `a, b ∈ [p, 1]`.
pub fn interval_meet(t: &ImplicationTable, p: Element, a: Element, b: Element) -> Result<Element, ImplicationError> {
    for x in [a, b] {
        if !t.below(p, x) {
            return Err(ImplicationError::OutOfInterval(x, p));
        }
    }
    let ap = t.bullet(a, p);
    let bp = t.bullet(b, p);
    Ok(t.bullet(t.bullet(t.bullet(ap, bp), bp), p))
}

/// Rebuilds the orthosemilattice: join `(x•y)•y`, witnesses `a⊥p = a•p`.
///
/// The identities are checked first; tables that fail them are rejected.
pub fn reconstruct_orthosemilattice(t: &ImplicationTable) -> Result<Orthosemilattice, ImplicationError> {
    if let Some(c) = check_ioa_identities(t).failures().next() {
        return Err(ImplicationError::IdentityFails(c.name.clone()));
    }
    let join = induced_join(t)?;
    let n = t.size();
    let witnesses = (0..n)
        .map(|p| IntervalWitness {
            p,
            cmap: (0..n).map(|a| t.below(p, a).then(|| t.bullet(a, p))).collect(),
        })
        .collect();
    let s = Orthosemilattice::from_parts(join, t.one, witnesses, Some(t.labels.clone()))
        .expect("indices come from t");
    if let Some(c) = validate_orthosemilattice(&s).failures().next() {
        return Err(ImplicationError::Invalid(c.name.clone()));
    }
    Ok(s)
}
