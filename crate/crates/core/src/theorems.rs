//! Whole-theory verification over catalog entries.
//!
//! Each entry kind gets the checks that apply to it: ortholattices are
//! validated and compared against their known answers, strong ones and
//! orthosemilattices go through derivation and reconstruction of `•`, and
//! implication tables through the congruence, kernel and ideal checks.

use crate::catalog::{CatalogEntry, Expectations, Payload};
use crate::congruence::{
    all_congruences_bruteforce, check_d1, check_d2, congruence_lattice, is_congruence, join_antitone_identity,
    kernel, kernel_collision, theta_from_kernel, theta_relation,
};
use crate::ideals::{check_lemma_chain, is_ideal_by_terms, property_mp};
use crate::implication::{
    check_interval_properties, check_ioa_identities, derive_bullet, reconstruct_orthosemilattice, ImplicationTable,
};
use crate::ortholattice::{is_modular, is_orthomodular, validate_ortholattice, JoinOrder, Ortholattice};
use crate::orthosemilattice::{check_overlap_consistency, validate_orthosemilattice, Orthosemilattice};
use crate::report::{Check, Counterexample, Report};
use crate::strong::{is_strong, StrongError};
use crate::table::Subset;
use crate::terms::{builtin_terms, closed_under_term, is_ideal_term, random_ideal_terms, BUILTIN_NAMES};
use crate::{MAX_BRUTE_FORCE_SIZE, MAX_SUBSET_SWEEP_SIZE};

/// Number of seeded random ideal terms checked against every kernel.
pub const RANDOM_TERMS: usize = 20;
/// Depth bound for random terms.
pub const RANDOM_TERM_DEPTH: usize = 5;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn expectation(name: &str, expected: Option<bool>, observed: bool, detail: String) -> Option<Check> {
    let expected = expected?;
    let label = format!(
        "{name}: expected {}, observed {}{}",
        yes_no(expected),
        yes_no(observed),
        if detail.is_empty() { String::new() } else { format!(" ({detail})") }
    );
    Some(if expected == observed {
        Check::pass(label)
    } else {
        Check::fail(label, Counterexample::Text("unexpected result".into()))
    })
}

/// Validation plus known answers for strongness, modularity, orthomodularity
/// and the classical-implication anomaly.
pub fn verify_ortholattice(l: &Ortholattice, x: &Expectations) -> Report {
    let labels = l.labels();
    let mut r = Report::new();
    r.extend_prefixed("ortholattice", validate_ortholattice(l));
    let strong = is_strong(l);
    let detail = match &strong {
        Ok(_) => String::new(),
        Err(StrongError::NoWitness { p, .. }) => format!("no orthocomplementation of [{}, 1]", labels[*p]),
        Err(e) => e.to_string(),
    };
    r.checks.extend(expectation("strong", x.strong, strong.is_ok(), detail));
    let modular = is_modular(l);
    let detail = modular
        .as_ref()
        .err()
        .map(|w| {
            let names: Vec<&str> = w.pentagon.elements().iter().map(|&e| labels[e].as_str()).collect();
            format!("N5 on {{{}}}", names.join(","))
        })
        .unwrap_or_default();
    r.checks.extend(expectation("modular", x.modular, modular.is_ok(), detail));
    let om = is_orthomodular(l);
    let detail = om
        .err()
        .map(|(a, b)| format!("{} <= {} but {0}∨({0}⊥∧{1}) ≠ {1}", labels[a], labels[b]))
        .unwrap_or_default();
    r.checks.extend(expectation("orthomodular", x.orthomodular, om.is_ok(), detail));
    let anomaly = l.implication_anomaly();
    let detail = anomaly
        .map(|(a, b)| format!("{a}⊥∨{b} = 1 and {b}⊥∨{a} = 1", a = labels[a], b = labels[b]))
        .unwrap_or_default();
    r.checks.extend(expectation(
        "classical implication anomaly",
        x.implication_anomaly,
        anomaly.is_some(),
        detail,
    ));
    if let Ok(s) = strong {
        r.extend(verify_orthosemilattice(&s.to_orthosemilattice()));
    }
    r
}

/// Validation, identities of the derived `•`, both round trips and overlap consistency.
pub fn verify_orthosemilattice(s: &Orthosemilattice) -> Report {
    let mut r = Report::new();
    r.extend_prefixed("orthosemilattice", validate_orthosemilattice(s));
    let t = match derive_bullet(s) {
        Ok(t) => t,
        Err(e) => {
            r.push(Check::fail("derive •", Counterexample::Text(e.to_string())));
            return r;
        }
    };
    r.extend_prefixed("derived •", check_ioa_identities(&t));
    match reconstruct_orthosemilattice(&t) {
        Ok(back) => {
            let first = back == *s;
            let second = derive_bullet(&back).as_ref() == Ok(&t);
            r.push(Check::expect("reconstruct(derive(S)) = S", first, || "tables differ".into()));
            r.push(Check::expect("derive(reconstruct(T)) = T", second, || "tables differ".into()));
        }
        Err(e) => r.push(Check::fail("reconstruct(derive(S))", Counterexample::Text(e.to_string()))),
    }
    r.extend_prefixed("overlap", check_overlap_consistency(s));
    r
}

/// Congruence enumeration, kernel injectivity, the kernel conditions, ideal
/// terms and the lemma chain.
pub fn verify_implication(t: &ImplicationTable, seed: u64) -> Report {
    let n = t.size();
    let mut r = Report::new();
    let ids = check_ioa_identities(t);
    let identities_ok = ids.passed();
    r.extend_prefixed("identities", ids);
    if !identities_ok {
        return r;
    }
    r.extend_prefixed("intervals", check_interval_properties(t));
    r.push(match reconstruct_orthosemilattice(t) {
        Ok(s) => Check::expect("derive(reconstruct(T)) = T", derive_bullet(&s).as_ref() == Ok(t), || {
            "tables differ".into()
        }),
        Err(e) => Check::fail("reconstruct(T)", Counterexample::Text(e.to_string())),
    });
    r.push(Check::from_elements(
        "(((x•y)•y)•z)•(x•z) = 1",
        join_antitone_identity(t).map(|c| c.to_vec()),
    ));

    let congruences = congruence_lattice(t);
    let bad = congruences.iter().find(|p| is_congruence(t, p).is_err());
    r.push(Check::expect("closure enumeration yields congruences", bad.is_none(), || {
        bad.map(|p| p.display_with(t.labels()).to_string()).unwrap_or_default()
    }));
    if n <= MAX_BRUTE_FORCE_SIZE {
        let brute = all_congruences_bruteforce(t).expect("size checked");
        r.push(Check::expect("brute force = closure enumeration", brute == congruences, || {
            format!("{} vs {} congruences", brute.len(), congruences.len())
        }));
    }
    let collision = kernel_collision(t, &congruences);
    r.push(Check::expect(
        format!("kernel map injective on {} congruences", congruences.len()),
        collision.is_none(),
        || {
            let (p, q) = collision.clone().unwrap();
            format!("{} and {}", p.display_with(t.labels()), q.display_with(t.labels()))
        },
    ));

    let kernels: Vec<Subset> = congruences.iter().map(|p| kernel(t, p)).collect();
    let candidates: Vec<Subset> = if n <= MAX_SUBSET_SWEEP_SIZE {
        (0..1u64 << n)
            .map(|m| Subset::from_mask(n, m))
            .filter(|s| s.contains(t.one()))
            .collect()
    } else {
        kernels.clone()
    };
    let scope = if n <= MAX_SUBSET_SWEEP_SIZE {
        format!("all {} subsets containing 1", candidates.len())
    } else {
        format!("{} kernels", candidates.len())
    };

    let mut d_disagree = None;
    let mut terms_disagree = None;
    let mut chain_violation = None;
    for d in &candidates {
        let is_kernel = kernels.contains(d);
        let d_ok = check_d1(t, d).expect("1 ∈ D").is_none() && check_d2(t, d).expect("1 ∈ D").is_none();
        let theta_ok = theta_relation(t, d).is_ok();
        let gated = theta_from_kernel(t, d);
        let gated_ok = gated.is_ok() && congruences.contains(gated.as_ref().unwrap());
        if d_disagree.is_none() && !(d_ok == is_kernel && is_kernel == theta_ok && theta_ok == gated_ok) {
            d_disagree = Some(d.clone());
        }
        if terms_disagree.is_none() && is_ideal_by_terms(t, d).is_ok() != is_kernel {
            terms_disagree = Some(d.clone());
        }
        if chain_violation.is_none() {
            let lemmas = check_lemma_chain(t, d);
            if let Some(c) = lemmas.failures().next() {
                chain_violation = Some(format!("{}: {}", d.display_with(t.labels()), c.name));
            }
            if property_mp(t, d).is_err() && is_kernel {
                chain_violation = Some(format!("{}: modus ponens", d.display_with(t.labels())));
            }
        }
    }
    let show = |s: &Option<Subset>| s.as_ref().map(|d| d.display_with(t.labels()).to_string()).unwrap_or_default();
    r.push(Check::expect(
        format!("(D1)∧(D2) <=> kernel <=> relation (A) congruence with kernel D, over {scope}"),
        d_disagree.is_none(),
        || show(&d_disagree),
    ));
    r.push(Check::expect(
        format!("closed under t1..t6 <=> kernel, over {scope}"),
        terms_disagree.is_none(),
        || show(&terms_disagree),
    ));
    r.push(Check::expect(format!("term closure implies (D1), (D2) halves, over {scope}"), chain_violation.is_none(), || {
        chain_violation.clone().unwrap_or_default()
    }));

    let terms = builtin_terms();
    for (k, term) in terms.iter().enumerate() {
        r.push(Check::from_elements(
            format!("{} is an ideal term", BUILTIN_NAMES[k]),
            is_ideal_term(t, term).err(),
        ));
    }
    let random = random_ideal_terms(t, RANDOM_TERMS, seed, RANDOM_TERM_DEPTH);
    r.push(Check::expect(
        format!("{RANDOM_TERMS} random ideal terms generated (seed {seed})"),
        random.len() == RANDOM_TERMS,
        || format!("only {} found", random.len()),
    ));
    let mut closure_fail = None;
    'k: for d in &kernels {
        for (k, term) in terms.iter().chain(&random).enumerate() {
            if let Err(f) = closed_under_term(t, d, term) {
                let name = if k < 6 { BUILTIN_NAMES[k].to_string() } else { term.to_string() };
                let mut es = f.xs.clone();
                es.extend(&f.ys);
                closure_fail = Some(format!("{} not closed under {name} at {:?}", d.display_with(t.labels()), es));
                break 'k;
            }
        }
    }
    r.push(Check::expect(
        "every kernel closed under t1..t6 and the random ideal terms",
        closure_fail.is_none(),
        || closure_fail.clone().unwrap_or_default(),
    ));
    r
}

/// Runs the checks that apply to the entry's kind.
pub fn verify_entry(e: &CatalogEntry, seed: u64) -> Report {
    match &e.payload {
        Payload::Ortholattice(l) => verify_ortholattice(l, &e.expectations),
        Payload::Orthosemilattice(s) => verify_orthosemilattice(s),
        Payload::Implication(t) => verify_implication(t, seed),
    }
}

/// Every catalog entry, in catalog order.
pub fn verify_all(seed: u64) -> Vec<(&'static str, Report)> {
    crate::catalog::catalog()
        .iter()
        .map(|e| (e.name, verify_entry(e, seed)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn fig1_reports_expected_failures_as_passes() {
        let e = catalog::find("fig1_o6").unwrap();
        let r = verify_entry(e, 0);
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("strong: expected no, observed no")));
    }

    #[test]
    fn small_entries_verify() {
        for name in ["chain2", "bool4", "mo2", "bool4_reduct", "mo2_reduct", "fig2_filter_ea_reduct"] {
            let r = verify_entry(catalog::find(name).unwrap(), 0);
            assert!(r.passed(), "{name}\n{r}");
        }
    }

    #[test]
    fn corrupted_table_stops_after_identities() {
        let t = catalog::reduct("bool4_reduct").with_cell(3, 1, 2);
        let r = verify_implication(&t, 0);
        assert!(!r.passed());
        assert!(r.checks.iter().all(|c| c.name.starts_with("identities")));
    }
}
