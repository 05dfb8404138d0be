use std::fmt;
use std::ops::Index;

use crate::Element;

/// A binary operation on `0..n` stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    cells: Vec<Element>,
}

impl OpTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Element, Element) -> Element) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(f(i, j));
            }
        }
        OpTable { n, cells }
    }

    /// Builds a table from rows; returns `None` unless the rows form an `n×n` square.
    pub fn from_rows(rows: Vec<Vec<Element>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(OpTable {
            n,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: Element, j: Element) -> Element {
        self.cells[i * self.n + j]
    }

    pub fn set(&mut self, i: Element, j: Element, v: Element) {
        self.cells[i * self.n + j] = v;
    }

    pub fn row(&self, i: Element) -> &[Element] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    /// First cell whose value is outside `0..n`.
    pub fn first_out_of_range(&self) -> Option<(Element, Element)> {
        self.cells
            .iter()
            .position(|&v| v >= self.n)
            .map(|k| (k / self.n, k % self.n))
    }
}

impl Index<(Element, Element)> for OpTable {
    type Output = Element;

    fn index(&self, (i, j): (Element, Element)) -> &Element {
        &self.cells[i * self.n + j]
    }
}

/// A subset of a finite carrier, stored as a membership vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            members: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            members: vec![true; n],
        }
    }

    /// Builds a subset from indices; out-of-range indices yield `None`.
    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = Element>) -> Option<Self> {
        let mut s = Subset::empty(n);
        for e in elements {
            if e >= n {
                return None;
            }
            s.members[e] = true;
        }
        Some(s)
    }

    /// Subset encoded by the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Subset {
            members: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        self.members[e]
    }

    pub fn insert(&mut self, e: Element) {
        self.members[e] = true;
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// Members in ascending order.
    pub fn elements(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelledSet {
            elements: self.elements(),
            labels,
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

struct LabelledSet<'a> {
    elements: Vec<Element>,
    labels: &'a [String],
}

impl fmt::Display for LabelledSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .elements
            .iter()
            .map(|&e| self.labels.get(e).map(String::as_str).unwrap_or("?"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
