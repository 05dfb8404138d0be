//! Ideals (congruence kernels) recognised by closure under `t1 … t6`, plus the
//! intermediate properties that link term closure to (D1) and (D2).

use thiserror::Error;

use crate::congruence::{
    check_d1, check_d2_half, congruence_lattice, generated_congruence, kernel, D2Half,
};
use crate::implication::ImplicationTable;
use crate::report::{Check, Counterexample, Report};
use crate::table::Subset;
use crate::terms::{builtin_terms, closed_under_term, ClosureFailure, Term, BUILTIN_NAMES};
use crate::{Element, MAX_BRUTE_FORCE_SIZE};

/// The first built-in term under which a subset is not closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermFailure {
    /// 0-based index into [`builtin_terms`].
    pub term: usize,
    pub failure: ClosureFailure,
}

impl TermFailure {
    pub fn name(&self) -> &'static str {
        BUILTIN_NAMES[self.term]
    }
}

fn closed_under(t: &ImplicationTable, i: &Subset, terms: &[Term], which: &[usize]) -> Result<(), TermFailure> {
    for &k in which {
        closed_under_term(t, i, &terms[k]).map_err(|failure| TermFailure { term: k, failure })?;
    }
    Ok(())
}

/// Closure under `t1, …, t6`, checked in that order.
pub fn is_ideal_by_terms(t: &ImplicationTable, i: &Subset) -> Result<(), TermFailure> {
    closed_under(t, i, &builtin_terms(), &[0, 1, 2, 3, 4, 5])
}

/// `a ∈ I` and `a•b ∈ I` imply `b ∈ I`; returns a failing `(a, b)`.
pub fn property_mp(t: &ImplicationTable, i: &Subset) -> Result<(), (Element, Element)> {
    for a in i.iter() {
        for b in 0..t.size() {
            if i.contains(t.bullet(a, b)) && !i.contains(b) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

pub const LEMMA_D1: &str = "closed under t1,t2,t6 => (D1)";
pub const LEMMA_D2_LEFT: &str = "closed under t3,t4,t6 => (z•x)•(z•y) half of (D2)";
pub const LEMMA_D2_RIGHT: &str = "closed under t2,t5,t6 => (x•z)•(y•z) half of (D2)";

/// Tests the three implications from term closure to the kernel conditions.
type Conclusion<'a> = Box<dyn Fn() -> Option<Vec<Element>> + 'a>;

/// A check passes when its hypothesis fails or its conclusion holds.
pub fn check_lemma_chain(t: &ImplicationTable, i: &Subset) -> Report {
    let terms = builtin_terms();
    let mut r = Report::new();
    let d1 = |t, i| check_d1(t, i).expect("1 ∈ I").map(|c| c.to_vec());
    let half = |t, i, h| check_d2_half(t, i, h).expect("1 ∈ I").map(|c| c.to_vec());
    let cases: [(&str, [usize; 3], Conclusion<'_>); 3] = [
        (LEMMA_D1, [0, 1, 5], Box::new(|| d1(t, i))),
        (LEMMA_D2_LEFT, [2, 3, 5], Box::new(|| half(t, i, D2Half::Left))),
        (LEMMA_D2_RIGHT, [1, 4, 5], Box::new(|| half(t, i, D2Half::Right))),
    ];
    for (name, hyp, conclusion) in cases {
        let cx = if closed_under(t, i, &terms, &hyp).is_ok() {
            conclusion()
        } else {
            None
        };
        r.push(Check::from_elements(name, cx));
    }
    r
}

/// Least ideal containing `g`: the kernel of the congruence generated by `(g, 1)`.
pub fn ideal_closure(t: &ImplicationTable, g: &Subset) -> Subset {
    let pairs: Vec<(Element, Element)> = g.iter().map(|x| (x, t.one())).collect();
    kernel(t, &generated_congruence(t, &pairs))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureCheckError {
    #[error("carrier of {0} elements exceeds the verification limit")]
    TooLarge(usize),
}

/// Checks that [`ideal_closure`] is an ideal and the least enumerated kernel containing `g`.
pub fn verify_ideal_closure(t: &ImplicationTable, g: &Subset) -> Result<Report, ClosureCheckError> {
    if t.size() > MAX_BRUTE_FORCE_SIZE {
        return Err(ClosureCheckError::TooLarge(t.size()));
    }
    let c = ideal_closure(t, g);
    let kernels: Vec<Subset> = congruence_lattice(t).iter().map(|p| kernel(t, p)).collect();
    let mut r = Report::new();
    r.push(Check::expect("contains generators", g.is_subset_of(&c), || c.to_string()));
    r.push(Check::expect("closed under t1..t6", is_ideal_by_terms(t, &c).is_ok(), || c.to_string()));
    r.push(Check::expect("is a kernel", kernels.contains(&c), || c.to_string()));
    let smaller = kernels
        .iter()
        .find(|k| g.is_subset_of(k) && !c.is_subset_of(k));
    r.push(match smaller {
        None => Check::pass("least kernel containing generators"),
        Some(k) => Check::fail("least kernel containing generators", Counterexample::Text(k.to_string())),
    });
    Ok(r)
}
