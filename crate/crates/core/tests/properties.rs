use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthoalg::catalog::{self, Payload};
use orthoalg::congruence::{generated_congruence, is_congruence, kernel, theta_relation};
use orthoalg::format::{parse_ioa, serialize_ioa};
use orthoalg::ideals::{ideal_closure, is_ideal_by_terms};
use orthoalg::implication::{check_ioa_identities, derive_bullet, reconstruct_orthosemilattice};
use orthoalg::orthosemilattice::{order_filter_to_orthosemilattice, upward_closure, validate_orthosemilattice};
use orthoalg::terms::random_node;
use orthoalg::{ImplicationTable, OpTable, Partition, Subset, Term};

fn reduct(name: &str) -> &'static ImplicationTable {
    match &catalog::find(name).unwrap().payload {
        Payload::Implication(t) => t,
        _ => unreachable!(),
    }
}

const REDUCTS: [&str; 5] = ["bool8_reduct", "mo2_reduct", "fig2_reduct", "fig2_filter_no0_reduct", "fig2_filter_eab_reduct"];

fn reduct_and_mask() -> impl Strategy<Value = (&'static ImplicationTable, u64)> {
    prop::sample::select(&REDUCTS[..]).prop_flat_map(|name| {
        let t = reduct(name);
        (Just(t), 0..1u64 << t.size())
    })
}

proptest! {
    #[test]
    fn partitions_are_canonical(labels in prop::collection::vec(0u8..4, 1..12)) {
        let p = Partition::from_labels(&labels);
        for i in 0..labels.len() {
            prop_assert!(p.rep(i) <= i);
            prop_assert_eq!(labels[p.rep(i)], labels[i]);
            for j in 0..labels.len() {
                prop_assert_eq!(p.same(i, j), labels[i] == labels[j]);
            }
        }
        let blocks = p.blocks();
        let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Partition::from_blocks(labels.len(), &refs), Some(p.clone()));
        prop_assert!(Partition::identity(labels.len()).refines(&p));
        prop_assert!(p.refines(&Partition::all(labels.len())));
    }

    #[test]
    fn terms_print_and_parse_back(seed in any::<u64>(), depth in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let node = random_node(&mut rng, depth);
        prop_assert!(node.depth() <= depth);
        let term = Term::from_node(node);
        let again = Term::parse(&term.to_string()).unwrap();
        prop_assert_eq!(again, term);
    }

    #[test]
    fn ioa_text_round_trips(n in 1usize..7, cells in prop::collection::vec(0usize..64, 36), one in 0usize..7) {
        let table = OpTable::from_fn(n, |i, j| cells[i * 6 + j] % n);
        let t = ImplicationTable::from_parts(table, one % n, None).unwrap();
        prop_assert_eq!(parse_ioa(&serialize_ioa(&t)).unwrap(), t);
    }

    #[test]
    fn generated_congruences_are_congruences((t, mask) in reduct_and_mask(), pivot in 0usize..12) {
        let pivot = pivot % t.size();
        let pairs: Vec<(usize, usize)> = Subset::from_mask(t.size(), mask).iter().map(|x| (x, pivot)).collect();
        let p = generated_congruence(t, &pairs);
        prop_assert!(is_congruence(t, &p).is_ok());
        for &(a, b) in &pairs {
            prop_assert!(p.same(a, b));
        }
        prop_assert_eq!(theta_relation(t, &kernel(t, &p)), Ok(p));
    }

    #[test]
    fn ideal_closure_is_a_least_ideal((t, mask) in reduct_and_mask()) {
        let g = Subset::from_mask(t.size(), mask);
        let c = ideal_closure(t, &g);
        prop_assert!(g.is_subset_of(&c));
        prop_assert!(c.contains(t.one()));
        prop_assert!(is_ideal_by_terms(t, &c).is_ok());
        prop_assert_eq!(ideal_closure(t, &c), c.clone());
        for x in c.iter() {
            let single = Subset::from_elements(t.size(), [x]).unwrap();
            prop_assert!(ideal_closure(t, &single).is_subset_of(&c));
        }
    }

    #[test]
    fn filters_of_the_12_element_lattice(gens in prop::collection::vec(0usize..12, 1..4)) {
        let l = catalog::fig2_strong12();
        let f = upward_closure(&l, &gens);
        let s = order_filter_to_orthosemilattice(&l, &f).unwrap();
        prop_assert!(validate_orthosemilattice(&s).passed());
        let t = derive_bullet(&s).unwrap();
        prop_assert!(check_ioa_identities(&t).passed());
        prop_assert_eq!(reconstruct_orthosemilattice(&t).unwrap(), s);
    }
}
