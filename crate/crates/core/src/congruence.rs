//! Congruences of implication tables, their kernels and the kernel
//! conditions (D1)/(D2).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::implication::ImplicationTable;
use crate::table::Subset;
use crate::{Element, MAX_BRUTE_FORCE_SIZE};

/// An equivalence on `0..n`, each element mapped to the least member of its block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    rep: Vec<Element>,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition { rep: (0..n).collect() }
    }

    pub fn all(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Canonical partition grouping elements with equal `labels[x]`.
    pub fn from_labels<K: Eq + std::hash::Hash>(labels: &[K]) -> Self {
        let mut first: HashMap<&K, Element> = HashMap::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(i, k)| *first.entry(k).or_insert(i))
            .collect();
        Partition { rep }
    }

    /// Accepts a representative array if it is already canonical.
    pub fn from_rep(rep: Vec<Element>) -> Option<Self> {
        let ok = rep
            .iter()
            .enumerate()
            .all(|(x, &r)| r <= x && rep[r] == r);
        ok.then_some(Partition { rep })
    }

    pub fn from_blocks(n: usize, blocks: &[&[Element]]) -> Option<Self> {
        let mut label = (0..n).map(|x| n + x).collect::<Vec<_>>();
        for (k, b) in blocks.iter().enumerate() {
            for &x in b.iter() {
                if x >= n {
                    return None;
                }
                label[x] = k;
            }
        }
        Some(Self::from_labels(&label))
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    #[inline]
    pub fn rep(&self, x: Element) -> Element {
        self.rep[x]
    }

    pub fn reps(&self) -> &[Element] {
        &self.rep
    }

    #[inline]
    pub fn same(&self, a: Element, b: Element) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn block_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut out: Vec<Vec<Element>> = Vec::new();
        let mut slot = vec![usize::MAX; self.rep.len()];
        for (x, &r) in self.rep.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    /// Whether every pair merged here is merged in `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.size()).all(|x| other.same(x, self.rep[x]))
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelledPartition { p: self, labels }
    }
}

/// Coarser partitions sort after finer ones; ties break on the rep arrays.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .block_count()
            .cmp(&self.block_count())
            .then_with(|| self.rep.cmp(&other.rep))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct LabelledPartition<'a> {
    p: &'a Partition,
    labels: &'a [String],
}

impl fmt::Display for LabelledPartition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .p
            .blocks()
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&x| self.labels[x].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = crate::default_labels(self.size());
        let shown = LabelledPartition { p: self, labels: &labels }.to_string();
        f.write_str(&shown)
    }
}

struct UnionFind {
    parent: Vec<Element>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn from_partition(p: &Partition) -> Self {
        UnionFind {
            parent: p.rep.clone(),
        }
    }

    fn find(&mut self, mut x: Element) -> Element {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes keeping the smaller index as root.
    fn union(&mut self, a: Element, b: Element) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_partition(mut self) -> Partition {
        let rep = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition { rep }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("carrier of {0} elements exceeds the brute-force limit")]
    TooLarge(usize),
    #[error("partition size {got} does not match carrier size {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// Compatibility with `•`: returns `(a, b, c, d)` with `a~b`, `c~d` but `a•c ≁ b•d`.
pub fn is_congruence(t: &ImplicationTable, p: &Partition) -> Result<(), [Element; 4]> {
    let n = t.size();
    // One-sided substitution suffices for an equivalence.
    for a in 0..n {
        let r = p.rep(a);
        if r == a {
            continue;
        }
        for c in 0..n {
            if !p.same(t.bullet(a, c), t.bullet(r, c)) {
                return Err([a, r, c, c]);
            }
            if !p.same(t.bullet(c, a), t.bullet(c, r)) {
                return Err([c, c, a, r]);
            }
        }
    }
    Ok(())
}

/// Every partition of the carrier, filtered by [`is_congruence`], in canonical order.
pub fn all_congruences_bruteforce(t: &ImplicationTable) -> Result<Vec<Partition>, CongruenceError> {
    let n = t.size();
    if n > MAX_BRUTE_FORCE_SIZE {
        return Err(CongruenceError::TooLarge(n));
    }
    let mut out = Vec::new();
    for_each_partition(n, |p| {
        if is_congruence(t, &p).is_ok() {
            out.push(p);
        }
    });
    out.sort();
    Ok(out)
}

/// Calls `f` on every partition of `0..n` (restricted growth strings).
pub fn for_each_partition(n: usize, mut f: impl FnMut(Partition)) {
    if n == 0 {
        return;
    }
    let mut code = vec![0usize; n];
    let mut max_prefix = vec![0usize; n];
    loop {
        let mut first = vec![usize::MAX; n];
        let rep = code
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                if first[b] == usize::MAX {
                    first[b] = i;
                }
                first[b]
            })
            .collect();
        f(Partition { rep });
        // advance: rightmost position that can grow
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if code[i] <= max_prefix[i - 1] {
                code[i] += 1;
                break;
            }
            code[i] = 0;
            i -= 1;
        }
        for j in i..n {
            if j > i {
                code[j] = 0;
            }
            max_prefix[j] = max_prefix[j - 1].max(code[j]);
        }
    }
}

fn close(t: &ImplicationTable, mut uf: UnionFind) -> Partition {
    let n = t.size();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for z in 0..n {
                changed |= uf.union(t.bullet(x, z), t.bullet(r, z));
                changed |= uf.union(t.bullet(z, x), t.bullet(z, r));
            }
        }
        if !changed {
            return uf.into_partition();
        }
    }
}

/// Least congruence merging every listed pair.
pub fn generated_congruence(t: &ImplicationTable, pairs: &[(Element, Element)]) -> Partition {
    let mut uf = UnionFind::new(t.size());
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    close(t, uf)
}

/// Least congruence merging `a` and `b`.
pub fn principal_congruence(t: &ImplicationTable, a: Element, b: Element) -> Partition {
    generated_congruence(t, &[(a, b)])
}

/// Join in the congruence lattice: closure of the union of `p` and `q`.
pub fn congruence_join(t: &ImplicationTable, p: &Partition, q: &Partition) -> Partition {
    let mut uf = UnionFind::from_partition(p);
    for x in 0..q.size() {
        uf.union(x, q.rep(x));
    }
    close(t, uf)
}

/// All congruences, as the join-closure of the principal ones, in canonical order.
pub fn congruence_lattice(t: &ImplicationTable) -> Vec<Partition> {
    let n = t.size();
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    found.insert(Partition::identity(n));
    found.insert(Partition::all(n));
    let mut principals: BTreeSet<Partition> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principals.insert(principal_congruence(t, a, b));
        }
    }
    let principals: Vec<Partition> = principals.into_iter().collect();
    let mut frontier: Vec<Partition> = principals.clone();
    found.extend(principals.iter().cloned());
    while let Some(c) = frontier.pop() {
        for p in &principals {
            let j = congruence_join(t, &c, p);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    found.into_iter().collect()
}

/// The class of `1`.
pub fn kernel(t: &ImplicationTable, p: &Partition) -> Subset {
    let one = p.rep(t.one());
    Subset::from_elements(t.size(), (0..t.size()).filter(|&x| p.rep(x) == one)).expect("in range")
}

/// First two distinct congruences in `list` with the same kernel.
pub fn kernel_collision(t: &ImplicationTable, list: &[Partition]) -> Option<(Partition, Partition)> {
    let mut seen: HashMap<Subset, &Partition> = HashMap::new();
    for p in list {
        if let Some(q) = seen.insert(kernel(t, p), p) {
            if q != p {
                return Some((q.clone(), p.clone()));
            }
        }
    }
    None
}

/// Injectivity of the kernel map over the brute-force congruence list.
/// `Ok(None)` means injective; `Ok(Some(pair))` is a collision.
pub fn verify_kernel_injectivity(t: &ImplicationTable) -> Result<Option<(Partition, Partition)>, CongruenceError> {
    let list = all_congruences_bruteforce(t)?;
    Ok(kernel_collision(t, &list))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("subset does not contain the constant 1")]
    MissingOne,
    #[error("subset is over {got} elements, carrier has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("(D1) fails at x={0}, y={1}, z={2}")]
    NotD1(Element, Element, Element),
    #[error("(D2) fails at x={0}, y={1}, z={2}")]
    NotD2(Element, Element, Element),
    #[error("relation (A) is not reflexive at {0}")]
    NotReflexive(Element),
    #[error("relation (A) is not transitive at {0}, {1}, {2}")]
    NotTransitive(Element, Element, Element),
    #[error("relation (A) is not compatible with •: {0:?}")]
    NotCompatible([Element; 4]),
    #[error("kernel of relation (A) differs from the subset")]
    KernelMismatch,
}

/// Which conclusion of (D2) fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2Half {
    /// `(x•z)•(y•z) ∈ D`
    Right,
    /// `(z•x)•(z•y) ∈ D`
    Left,
}

fn check_subset(t: &ImplicationTable, d: &Subset) -> Result<(), KernelError> {
    if d.universe_size() != t.size() {
        return Err(KernelError::SizeMismatch {
            expected: t.size(),
            got: d.universe_size(),
        });
    }
    if !d.contains(t.one()) {
        return Err(KernelError::MissingOne);
    }
    Ok(())
}

/// (D1): `x ∈ D` and `y•z ∈ D` imply `(x•y)•z ∈ D`. Returns the first failing `(x, y, z)`.
pub fn check_d1(t: &ImplicationTable, d: &Subset) -> Result<Option<[Element; 3]>, KernelError> {
    check_subset(t, d)?;
    let n = t.size();
    for x in d.iter() {
        for y in 0..n {
            for z in 0..n {
                if d.contains(t.bullet(y, z)) && !d.contains(t.bullet(t.bullet(x, y), z)) {
                    return Ok(Some([x, y, z]));
                }
            }
        }
    }
    Ok(None)
}

/// One half of (D2) under the hypothesis `x•y, y•x ∈ D`.
pub fn check_d2_half(t: &ImplicationTable, d: &Subset, half: D2Half) -> Result<Option<[Element; 3]>, KernelError> {
    check_subset(t, d)?;
    let n = t.size();
    let b = |x, y| t.bullet(x, y);
    for x in 0..n {
        for y in 0..n {
            if !(d.contains(b(x, y)) && d.contains(b(y, x))) {
                continue;
            }
            for z in 0..n {
                let v = match half {
                    D2Half::Right => b(b(x, z), b(y, z)),
                    D2Half::Left => b(b(z, x), b(z, y)),
                };
                if !d.contains(v) {
                    return Ok(Some([x, y, z]));
                }
            }
        }
    }
    Ok(None)
}

/// (D2): both halves. Returns the first failing `(x, y, z)` and the half.
pub fn check_d2(t: &ImplicationTable, d: &Subset) -> Result<Option<([Element; 3], D2Half)>, KernelError> {
    for half in [D2Half::Right, D2Half::Left] {
        if let Some(cx) = check_d2_half(t, d, half)? {
            return Ok(Some((cx, half)));
        }
    }
    Ok(None)
}

/// Relation (A) `x Θ y iff x•y, y•x ∈ D`, with every congruence property asserted.
/// Does not require (D1)/(D2).
pub fn theta_relation(t: &ImplicationTable, d: &Subset) -> Result<Partition, KernelError> {
    check_subset(t, d)?;
    let n = t.size();
    let rel = |x, y| d.contains(t.bullet(x, y)) && d.contains(t.bullet(y, x));
    if let Some(x) = (0..n).find(|&x| !rel(x, x)) {
        return Err(KernelError::NotReflexive(x));
    }
    for x in 0..n {
        for y in 0..n {
            if !rel(x, y) {
                continue;
            }
            for z in 0..n {
                if rel(y, z) && !rel(x, z) {
                    return Err(KernelError::NotTransitive(x, y, z));
                }
            }
        }
    }
    let rep: Vec<Element> = (0..n)
        .map(|x| (0..=x).find(|&r| rel(r, x)).expect("reflexive"))
        .collect();
    let p = Partition { rep };
    is_congruence(t, &p).map_err(KernelError::NotCompatible)?;
    if kernel(t, &p) != *d {
        return Err(KernelError::KernelMismatch);
    }
    Ok(p)
}

/// The congruence `Θ_D` of a subset satisfying (D1) and (D2).
pub fn theta_from_kernel(t: &ImplicationTable, d: &Subset) -> Result<Partition, KernelError> {
    if let Some([x, y, z]) = check_d1(t, d)? {
        return Err(KernelError::NotD1(x, y, z));
    }
    if let Some(([x, y, z], _)) = check_d2(t, d)? {
        return Err(KernelError::NotD2(x, y, z));
    }
    theta_relation(t, d)
}

/// First `(x, y, z)` violating `(((x•y)•y)•z)•(x•z) = 1`.
pub fn join_antitone_identity(t: &ImplicationTable) -> Option<[Element; 3]> {
    let n = t.size();
    for x in 0..n {
        for y in 0..n {
            let j = t.join(x, y);
            for z in 0..n {
                if t.bullet(t.bullet(j, z), t.bullet(x, z)) != t.one() {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for &v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            row = next;
        }
        if n == 0 {
            1
        } else {
            *row.last().unwrap()
        }
    }

    #[test]
    fn partition_enumeration_counts_bell_numbers() {
        for n in 1..=8 {
            let mut seen = BTreeSet::new();
            for_each_partition(n, |p| {
                assert!(Partition::from_rep(p.reps().to_vec()).is_some());
                seen.insert(p);
            });
            assert_eq!(seen.len(), bell(n), "n={n}");
        }
        assert_eq!(bell(10), 115975);
    }

    #[test]
    fn canonical_forms() {
        let p = Partition::from_labels(&['b', 'a', 'b', 'c']);
        assert_eq!(p.reps(), &[0, 1, 0, 3]);
        assert_eq!(p.block_count(), 3);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(Partition::from_rep(vec![0, 0, 1]).is_none());
        assert!(Partition::identity(3) < Partition::all(3));
        assert!(Partition::identity(4).refines(&p) && p.refines(&Partition::all(4)));
        assert!(!p.refines(&Partition::identity(4)));
    }

    #[test]
    fn trivial_partitions_are_congruences() {
        let t = catalog::reduct("bool4_reduct");
        assert_eq!(is_congruence(&t, &Partition::identity(4)), Ok(()));
        assert_eq!(is_congruence(&t, &Partition::all(4)), Ok(()));
    }

    #[test]
    fn congruence_check_matches_definition() {
        // direct four-variable definition as oracle
        let t = catalog::reduct("bool4_reduct");
        for_each_partition(4, |p| {
            let mut direct = true;
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            if p.same(a, b) && p.same(c, d) && !p.same(t.bullet(a, c), t.bullet(b, d)) {
                                direct = false;
                            }
                        }
                    }
                }
            }
            assert_eq!(is_congruence(&t, &p).is_ok(), direct, "{p}");
        });
        // {0,a} {a'} {1}: 0•a' = 1 but a•a' = a', and 1 ≁ a'
        let p = Partition::from_blocks(4, &[&[0, 1]]).unwrap();
        assert!(is_congruence(&t, &p).is_err());
    }

    #[test]
    fn small_congruence_lists() {
        let c2 = catalog::reduct("chain2_reduct");
        assert_eq!(all_congruences_bruteforce(&c2).unwrap(), vec![Partition::identity(2), Partition::all(2)]);
        assert_eq!(congruence_lattice(&c2), vec![Partition::identity(2), Partition::all(2)]);
        let single = ImplicationTable::from_parts(crate::OpTable::from_fn(1, |_, _| 0), 0, None).unwrap();
        assert_eq!(all_congruences_bruteforce(&single).unwrap(), vec![Partition::identity(1)]);
        assert_eq!(congruence_lattice(&single), vec![Partition::identity(1)]);
        let big = catalog::reduct("fig2_reduct");
        assert_eq!(all_congruences_bruteforce(&big), Err(CongruenceError::TooLarge(12)));
    }

    #[test]
    fn principal_congruences_are_minimal() {
        for name in ["bool4_reduct", "mo2_reduct", "fig2_filter_ea_reduct"] {
            let t = catalog::reduct(name);
            let all = all_congruences_bruteforce(&t).unwrap();
            for a in 0..t.size() {
                for b in 0..t.size() {
                    let p = principal_congruence(&t, a, b);
                    assert_eq!(is_congruence(&t, &p), Ok(()));
                    assert!(p.same(a, b));
                    let least = all.iter().filter(|q| q.same(a, b)).find(|q| p.refines(q) && q.refines(&p));
                    assert!(least.is_some());
                    assert!(all.iter().filter(|q| q.same(a, b)).all(|q| p.refines(q)), "{name} {a} {b}");
                }
            }
            assert_eq!(principal_congruence(&t, 1, 1), Partition::identity(t.size()));
        }
        let c2 = catalog::reduct("chain2_reduct");
        assert_eq!(principal_congruence(&c2, 0, 1), Partition::all(2));
    }

    #[test]
    fn b4_principal_a_one_kernel() {
        let t = catalog::reduct("bool4_reduct");
        let p = principal_congruence(&t, 1, 3);
        let k = kernel(&t, &p);
        assert!(k.contains(1) && k.contains(3));
    }

    #[test]
    fn closure_agrees_with_brute_force() {
        for e in catalog::catalog() {
            if let crate::Payload::Implication(t) = &e.payload {
                if t.size() <= MAX_BRUTE_FORCE_SIZE {
                    assert_eq!(congruence_lattice(t), all_congruences_bruteforce(t).unwrap(), "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn kernels_of_trivial_congruences() {
        let t = catalog::reduct("mo2_reduct");
        let n = t.size();
        assert_eq!(kernel(&t, &Partition::identity(n)).elements(), vec![t.one()]);
        assert_eq!(kernel(&t, &Partition::all(n)), Subset::full(n));
        assert_eq!(verify_kernel_injectivity(&t), Ok(None));
    }

    #[test]
    fn d_conditions_on_trivial_subsets() {
        for name in ["bool4_reduct", "mo2_reduct", "fig2_filter_eab_reduct"] {
            let t = catalog::reduct(name);
            let n = t.size();
            let one = Subset::from_elements(n, [t.one()]).unwrap();
            assert_eq!(check_d1(&t, &one), Ok(None));
            assert_eq!(check_d2(&t, &one), Ok(None));
            assert_eq!(check_d1(&t, &Subset::full(n)), Ok(None));
            assert_eq!(check_d2(&t, &Subset::full(n)), Ok(None));
            assert_eq!(theta_from_kernel(&t, &one), Ok(Partition::identity(n)));
            assert_eq!(theta_from_kernel(&t, &Subset::full(n)), Ok(Partition::all(n)));
            assert_eq!(check_d1(&t, &Subset::empty(n)), Err(KernelError::MissingOne));
        }
    }

    #[test]
    fn b4_subset_one_a_matches_kernel_list() {
        let t = catalog::reduct("bool4_reduct");
        let d = Subset::from_elements(4, [1, 3]).unwrap();
        let is_kernel = congruence_lattice(&t).iter().any(|p| kernel(&t, p) == d);
        let d_ok = check_d1(&t, &d).unwrap().is_none() && check_d2(&t, &d).unwrap().is_none();
        assert_eq!(is_kernel, d_ok);
        assert!(is_kernel);
    }

    #[test]
    fn theta_rejects_non_kernels() {
        let t = catalog::reduct("bool4_reduct");
        // {0, 1}: 0 ∈ D and 0•y ∈ D ... fails (D1) or (D2)
        let d = Subset::from_elements(4, [0, 3]).unwrap();
        assert!(matches!(theta_from_kernel(&t, &d), Err(KernelError::NotD1(..) | KernelError::NotD2(..))));
    }

    #[test]
    fn identity_b_holds_on_reducts() {
        for e in catalog::catalog() {
            if let crate::Payload::Implication(t) = &e.payload {
                assert_eq!(join_antitone_identity(t), None, "{}", e.name);
            }
        }
    }
}
