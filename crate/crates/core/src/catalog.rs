//! Built-in models: small Boolean algebras, MO2, the hexagon O6 (whose
//! classical implication misbehaves) and the 12-element strong ortholattice
//! that is neither modular nor orthomodular, with order filters and
//! implication reducts of every strong entry.

use std::sync::OnceLock;

use crate::implication::{derive_bullet, ImplicationTable};
use crate::ortholattice::{JoinOrder, Ortholattice};
use crate::orthosemilattice::{upward_closure, Orthosemilattice};
use crate::poset::{closure_of_pairs, validate_poset};
use crate::strong::is_strong;
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Ortholattice(Ortholattice),
    Orthosemilattice(Orthosemilattice),
    Implication(ImplicationTable),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Ortholattice(_) => "ortholattice",
            Payload::Orthosemilattice(_) => "orthosemilattice",
            Payload::Implication(_) => "implication",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Payload::Ortholattice(l) => l.size(),
            Payload::Orthosemilattice(s) => s.size(),
            Payload::Implication(t) => t.size(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Payload::Ortholattice(l) => l.labels(),
            Payload::Orthosemilattice(s) => s.labels(),
            Payload::Implication(t) => t.labels(),
        }
    }
}

/// Known answers for an ortholattice entry; `None` means not asserted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Expectations {
    pub strong: Option<bool>,
    pub modular: Option<bool>,
    pub orthomodular: Option<bool>,
    /// Some `a ≠ b` with `a⊥∨b = 1` and `b⊥∨a = 1`.
    pub implication_anomaly: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub payload: Payload,
    pub expectations: Expectations,
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn from_covers(names: &[&str], covers: &[(Element, Element)], comp: &[Element]) -> Ortholattice {
    let n = names.len();
    let order = validate_poset(n, closure_of_pairs(n, covers)).expect("catalog order is a poset");
    Ortholattice::from_order(&order, comp.to_vec(), Some(labels(names))).expect("catalog order is a lattice")
}

pub fn chain2() -> Ortholattice {
    from_covers(&["0", "1"], &[(0, 1)], &[1, 0])
}

/// The Boolean algebra of subsets of a `k`-element set, indexed by bitmask.
pub fn boolean(k: u32) -> Ortholattice {
    let n = 1usize << k;
    let mut covers = Vec::new();
    for x in 0..n {
        for bit in 0..k {
            if x & (1 << bit) == 0 {
                covers.push((x, x | (1 << bit)));
            }
        }
    }
    let comp: Vec<Element> = (0..n).map(|x| (n - 1) ^ x).collect();
    let order = validate_poset(n, closure_of_pairs(n, &covers)).expect("subset order");
    Ortholattice::from_order(&order, comp, None).expect("subset lattice")
}

pub fn bool4() -> Ortholattice {
    let l = boolean(2);
    let names = labels(&["0", "a", "a'", "1"]);
    Ortholattice::from_tables(
        l.join_table().clone(),
        l.meet_table().clone(),
        l.comp_map().to_vec(),
        l.bot(),
        l.top(),
        Some(names),
    )
    .expect("relabelling")
}

pub fn bool8() -> Ortholattice {
    let l = boolean(3);
    let names = labels(&["0", "a", "b", "c'", "c", "b'", "a'", "1"]);
    Ortholattice::from_tables(
        l.join_table().clone(),
        l.meet_table().clone(),
        l.comp_map().to_vec(),
        l.bot(),
        l.top(),
        Some(names),
    )
    .expect("relabelling")
}

/// Four pairwise incomparable middles `a, a', b, b'`.
pub fn mo2() -> Ortholattice {
    let covers = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 5), (4, 5)];
    from_covers(&["0", "a", "a'", "b", "b'", "1"], &covers, &[5, 2, 1, 4, 3, 0])
}

/// The hexagon: `0 < a < b < 1` and `0 < b' < a' < 1`.
pub fn fig1_o6() -> Ortholattice {
    let covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
    from_covers(&["0", "a", "b", "b'", "a'", "1"], &covers, &[5, 4, 3, 2, 1, 0])
}

/// Twelve elements: five atoms `e, a, b, d, c`, their five complements as
/// coatoms, each coatom covering two atoms.
pub fn fig2_strong12() -> Ortholattice {
    let names = ["0", "e", "a", "b", "d", "c", "c'", "d'", "b'", "a'", "e'", "1"];
    let id = |s: &str| names.iter().position(|&x| x == s).unwrap();
    let mut covers: Vec<(Element, Element)> = ["e", "a", "b", "d", "c"].iter().map(|&x| (0, id(x))).collect();
    for (lo, hi) in [
        ("e", "c'"),
        ("e", "d'"),
        ("a", "c'"),
        ("a", "b'"),
        ("b", "d'"),
        ("b", "a'"),
        ("d", "b'"),
        ("d", "e'"),
        ("c", "a'"),
        ("c", "e'"),
    ] {
        covers.push((id(lo), id(hi)));
    }
    for x in ["c'", "d'", "b'", "a'", "e'"] {
        covers.push((id(x), id("1")));
    }
    let comp = [11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0];
    from_covers(&names, &covers, &comp)
}

fn fig2_filter(generators: &[&str]) -> Orthosemilattice {
    let l = fig2_strong12();
    let gens: Vec<Element> = generators.iter().map(|g| l.element(g).unwrap()).collect();
    let f = upward_closure(&l, &gens);
    is_strong(&l).expect("strong").filter(&f).expect("order filter")
}

/// The 12-element lattice without its bottom.
pub fn fig2_filter_no0() -> Orthosemilattice {
    fig2_filter(&["e", "a", "b", "d", "c"])
}

/// Order filter generated by `e` and `a` (6 elements).
pub fn fig2_filter_ea() -> Orthosemilattice {
    fig2_filter(&["e", "a"])
}

/// Order filter generated by `e`, `a` and `b` (8 elements).
pub fn fig2_filter_eab() -> Orthosemilattice {
    fig2_filter(&["e", "a", "b"])
}

fn build() -> Vec<CatalogEntry> {
    let boolean_like = Expectations {
        strong: Some(true),
        modular: Some(true),
        orthomodular: Some(true),
        implication_anomaly: Some(false),
    };
    let lattices: [(&'static str, &'static str, Ortholattice, Expectations, Option<&'static str>); 6] = [
        ("chain2", "two-element Boolean algebra", chain2(), boolean_like, Some("chain2_reduct")),
        ("bool4", "four-element Boolean algebra", bool4(), boolean_like, Some("bool4_reduct")),
        ("bool8", "eight-element Boolean algebra", bool8(), boolean_like, Some("bool8_reduct")),
        (
            "mo2",
            "MO2, the smallest non-Boolean orthomodular lattice",
            mo2(),
            Expectations {
                implication_anomaly: Some(true),
                ..boolean_like
            },
            Some("mo2_reduct"),
        ),
        (
            "fig1_o6",
            "hexagon on which x⊥∨y gives a⇒b = b⇒a = 1",
            fig1_o6(),
            Expectations {
                strong: Some(false),
                modular: Some(false),
                orthomodular: Some(false),
                implication_anomaly: Some(true),
            },
            None,
        ),
        (
            "fig2_strong12",
            "12-element strong ortholattice, neither modular nor orthomodular",
            fig2_strong12(),
            Expectations {
                strong: Some(true),
                modular: Some(false),
                orthomodular: Some(false),
                implication_anomaly: None,
            },
            Some("fig2_reduct"),
        ),
    ];
    let mut out = Vec::new();
    let mut reducts = Vec::new();
    for (name, provenance, l, expectations, reduct_name) in lattices {
        if let Some(rn) = reduct_name {
            let s = is_strong(&l).expect("catalog entry is strong").to_orthosemilattice();
            reducts.push(CatalogEntry {
                name: rn,
                provenance: "implication reduct x•y = (x∨y)⊥y",
                payload: Payload::Implication(derive_bullet(&s).expect("full witness family")),
                expectations: Expectations::default(),
            });
        }
        out.push(CatalogEntry {
            name,
            provenance,
            payload: Payload::Ortholattice(l),
            expectations,
        });
    }
    let filters: [(&'static str, &'static str, &'static str, Orthosemilattice); 3] = [
        ("fig2_filter_no0", "fig2_filter_no0_reduct", "fig2_strong12 without its bottom", fig2_filter_no0()),
        ("fig2_filter_ea", "fig2_filter_ea_reduct", "order filter of fig2_strong12 generated by e, a", fig2_filter_ea()),
        ("fig2_filter_eab", "fig2_filter_eab_reduct", "order filter of fig2_strong12 generated by e, a, b", fig2_filter_eab()),
    ];
    for (name, rn, provenance, s) in filters {
        reducts.push(CatalogEntry {
            name: rn,
            provenance: "implication reduct x•y = (x∨y)⊥y",
            payload: Payload::Implication(derive_bullet(&s).expect("full witness family")),
            expectations: Expectations::default(),
        });
        out.push(CatalogEntry {
            name,
            provenance,
            payload: Payload::Orthosemilattice(s),
            expectations: Expectations::default(),
        });
    }
    out.extend(reducts);
    out
}

/// Every built-in entry, built once.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

#[cfg(test)]
pub(crate) fn reduct(name: &str) -> ImplicationTable {
    match &find(name).unwrap_or_else(|| panic!("no entry {name}")).payload {
        Payload::Implication(t) => t.clone(),
        _ => panic!("{name} is not an implication table"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implication::check_ioa_identities;
    use crate::ortholattice::{is_modular, is_orthomodular, validate_ortholattice};
    use crate::orthosemilattice::validate_orthosemilattice;

    #[test]
    fn every_entry_validates() {
        for e in catalog() {
            let ok = match &e.payload {
                Payload::Ortholattice(l) => validate_ortholattice(l).passed(),
                Payload::Orthosemilattice(s) => validate_orthosemilattice(s).passed(),
                Payload::Implication(t) => check_ioa_identities(t).passed(),
            };
            assert!(ok, "{}", e.name);
        }
    }

    #[test]
    fn expectations_hold() {
        for e in catalog() {
            let Payload::Ortholattice(l) = &e.payload else { continue };
            let x = e.expectations;
            if let Some(s) = x.strong {
                assert_eq!(is_strong(l).is_ok(), s, "{}", e.name);
            }
            if let Some(m) = x.modular {
                assert_eq!(is_modular(l).is_ok(), m, "{}", e.name);
            }
            if let Some(om) = x.orthomodular {
                assert_eq!(is_orthomodular(l).is_ok(), om, "{}", e.name);
            }
            if let Some(a) = x.implication_anomaly {
                assert_eq!(l.implication_anomaly().is_some(), a, "{}", e.name);
            }
        }
    }

    #[test]
    fn required_names_present() {
        for name in [
            "chain2",
            "bool4",
            "bool8",
            "mo2",
            "fig1_o6",
            "fig2_strong12",
            "fig2_filter_no0",
            "chain2_reduct",
            "bool4_reduct",
            "fig2_reduct",
        ] {
            assert!(find(name).is_some(), "{name}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(fig2_filter_no0().size(), 11);
        assert_eq!(fig2_filter_ea().size(), 6);
        assert_eq!(fig2_filter_eab().size(), 8);
        assert_eq!(bool8().size(), 8);
    }
}
