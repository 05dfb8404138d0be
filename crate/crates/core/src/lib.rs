//! Finite-model toolkit for ortholattices and their implication reducts.
//!
//! Every structure lives on a dense carrier `0..n` and stores its operations as
//! precomputed tables. The crate covers:
//!
//! * posets, ortholattices, interval orthocomplementations and strongness
//!   ([`poset`], [`ortholattice`], [`strong`]);
//! * orthosemilattices and order filters ([`orthosemilattice`]);
//! * the implication operation `x•y = (x∨y)⊥y`, the identities of implication
//!   orthoalgebras and the reconstruction of the orthosemilattice from `•`
//!   ([`implication`]);
//! * congruences, kernels and the kernel conditions (D1)/(D2) ([`congruence`]);
//! * terms over `{•, 1}`, ideal terms and ideals ([`terms`], [`ideals`]);
//! * the built-in model catalog and the `.olat`/`.ioa` text formats
//!   ([`catalog`], [`format`]);
//! * a whole-theory verification suite ([`theorems`]).

pub mod catalog;
pub mod congruence;
pub mod format;
pub mod ideals;
pub mod implication;
pub mod ortholattice;
pub mod orthosemilattice;
pub mod poset;
pub mod report;
pub mod strong;
pub mod table;
pub mod terms;
pub mod theorems;

pub use catalog::{catalog, CatalogEntry, Expectations, Payload};
pub use congruence::Partition;
pub use implication::ImplicationTable;
pub use ortholattice::{JoinOrder, Ortholattice};
pub use orthosemilattice::Orthosemilattice;
pub use poset::Poset;
pub use report::{Check, Counterexample, Report};
pub use strong::{IntervalWitness, StrongOrtholattice};
pub use table::{OpTable, Subset};
pub use terms::Term;

/// Index of an element of a finite carrier.
pub type Element = usize;

/// Largest carrier accepted by the interval orthocomplement search.
pub const MAX_SEARCH_SIZE: usize = 16;

/// Largest carrier accepted by brute-force partition enumeration.
pub const MAX_BRUTE_FORCE_SIZE: usize = 10;

/// Largest carrier for which every subset is swept exhaustively.
pub const MAX_SUBSET_SWEEP_SIZE: usize = 8;

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
