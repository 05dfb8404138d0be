//! Terms over `{•, 1}` with two kinds of variables.
//!
//! `x`-variables range over the whole carrier, `y`-variables are the ones an
//! ideal term collapses to `1`: `t` is an ideal term of `A` when
//! `t(x…, 1, …, 1) = 1` holds identically in `A`.
//!
//! The text form is an S-expression: `1`, `x<i>`, `y<j>` and `(b s t)` for `s•t`.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::implication::ImplicationTable;
use crate::table::Subset;
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    One,
    X(usize),
    Y(usize),
    Bullet(Box<Node>, Box<Node>),
}

impl Node {
    pub fn bullet(l: Node, r: Node) -> Node {
        Node::Bullet(Box::new(l), Box::new(r))
    }

    fn max_vars(&self) -> (Option<usize>, Option<usize>) {
        match self {
            Node::One => (None, None),
            Node::X(i) => (Some(*i), None),
            Node::Y(j) => (None, Some(*j)),
            Node::Bullet(l, r) => {
                let (lx, ly) = l.max_vars();
                let (rx, ry) = r.max_vars();
                (lx.max(rx), ly.max(ry))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Bullet(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    fn eval(&self, t: &ImplicationTable, xs: &[Element], ys: &[Element]) -> Element {
        match self {
            Node::One => t.one(),
            Node::X(i) => xs[*i],
            Node::Y(j) => ys[*j],
            Node::Bullet(l, r) => t.bullet(l.eval(t, xs, ys), r.eval(t, xs, ys)),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::One => write!(f, "1"),
            Node::X(i) => write!(f, "x{i}"),
            Node::Y(j) => write!(f, "y{j}"),
            Node::Bullet(l, r) => write!(f, "(b {l} {r})"),
        }
    }
}

/// A term tree with declared variable arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    root: Node,
    x_arity: usize,
    y_arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable index exceeds declared arity")]
    VariableOutOfRange,
    #[error("expected {x_arity} x-values and {y_arity} y-values, got {xs} and {ys}")]
    ArityMismatch {
        x_arity: usize,
        y_arity: usize,
        xs: usize,
        ys: usize,
    },
    #[error("term parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Term {
    pub fn new(root: Node, x_arity: usize, y_arity: usize) -> Result<Self, TermError> {
        let (mx, my) = root.max_vars();
        if mx.is_some_and(|i| i >= x_arity) || my.is_some_and(|j| j >= y_arity) {
            return Err(TermError::VariableOutOfRange);
        }
        Ok(Term {
            root,
            x_arity,
            y_arity,
        })
    }

    /// Arities taken as one past the largest variable index used.
    pub fn from_node(root: Node) -> Self {
        let (mx, my) = root.max_vars();
        Term {
            root,
            x_arity: mx.map_or(0, |i| i + 1),
            y_arity: my.map_or(0, |j| j + 1),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn x_arity(&self) -> usize {
        self.x_arity
    }

    pub fn y_arity(&self) -> usize {
        self.y_arity
    }

    pub fn eval(&self, t: &ImplicationTable, xs: &[Element], ys: &[Element]) -> Result<Element, TermError> {
        if xs.len() != self.x_arity || ys.len() != self.y_arity {
            return Err(TermError::ArityMismatch {
                x_arity: self.x_arity,
                y_arity: self.y_arity,
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        Ok(self.root.eval(t, xs, ys))
    }

    pub fn parse(text: &str) -> Result<Self, TermError> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let root = parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(TermError::Parse {
                pos,
                msg: format!("trailing input `{}`", tokens[pos]),
            });
        }
        Ok(Term::from_node(root))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    spaced.split_whitespace().map(str::to_owned).collect()
}

fn parse_index(tok: &str, prefix: char) -> Option<usize> {
    let rest = tok.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Node, TermError> {
    let err = |pos: usize, msg: &str| TermError::Parse {
        pos,
        msg: msg.to_owned(),
    };
    let tok = tokens.get(*pos).ok_or_else(|| err(*pos, "unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "1" => Ok(Node::One),
        "(" => {
            if tokens.get(*pos).map(String::as_str) != Some("b") {
                return Err(err(*pos, "expected `b` after `(`"));
            }
            *pos += 1;
            let l = parse_node(tokens, pos)?;
            let r = parse_node(tokens, pos)?;
            if tokens.get(*pos).map(String::as_str) != Some(")") {
                return Err(err(*pos, "expected `)`"));
            }
            *pos += 1;
            Ok(Node::bullet(l, r))
        }
        t => {
            if let Some(i) = parse_index(t, 'x') {
                Ok(Node::X(i))
            } else if let Some(j) = parse_index(t, 'y') {
                Ok(Node::Y(j))
            } else {
                Err(err(*pos - 1, &format!("unknown token `{t}`")))
            }
        }
    }
}

/// Calls `f` on every tuple in `domain^k`, stopping early when `f` returns `false`.
pub(crate) fn for_each_tuple(domain: &[Element], k: usize, mut f: impl FnMut(&[Element]) -> bool) -> bool {
    if k > 0 && domain.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<Element> = vec![domain.first().copied().unwrap_or(0); k];
    loop {
        if !f(&tuple) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == k {
                return true;
            }
            idx[i] += 1;
            if idx[i] < domain.len() {
                tuple[i] = domain[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = domain[0];
            i += 1;
        }
    }
}

/// `t(x…, 1, …, 1) = 1` for every assignment of the x-variables; returns a failing `xs`.
pub fn is_ideal_term(t: &ImplicationTable, term: &Term) -> Result<(), Vec<Element>> {
    let carrier: Vec<Element> = (0..t.size()).collect();
    let ones = vec![t.one(); term.y_arity];
    let mut cx = None;
    for_each_tuple(&carrier, term.x_arity, |xs| {
        if term.root.eval(t, xs, &ones) != t.one() {
            cx = Some(xs.to_vec());
            return false;
        }
        true
    });
    cx.map_or(Ok(()), Err)
}

/// A failing assignment for [`closed_under_term`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureFailure {
    pub xs: Vec<Element>,
    pub ys: Vec<Element>,
    pub value: Element,
}

/// `t(a…, b…) ∈ I` for all `a` in the carrier and `b` in `I`.
pub fn closed_under_term(t: &ImplicationTable, i: &Subset, term: &Term) -> Result<(), ClosureFailure> {
    let carrier: Vec<Element> = (0..t.size()).collect();
    let members = i.elements();
    let mut cx = None;
    for_each_tuple(&carrier, term.x_arity, |xs| {
        for_each_tuple(&members, term.y_arity, |ys| {
            let v = term.root.eval(t, xs, ys);
            if !i.contains(v) {
                cx = Some(ClosureFailure {
                    xs: xs.to_vec(),
                    ys: ys.to_vec(),
                    value: v,
                });
                return false;
            }
            true
        })
    });
    cx.map_or(Ok(()), Err)
}

fn b(l: Node, r: Node) -> Node {
    Node::bullet(l, r)
}

/// The six ideal terms `t1 … t6`, in order.
pub fn builtin_terms() -> [Term; 6] {
    use Node::{X, Y};
    let (x1, x2, x3) = (|| X(0), || X(1), || X(2));
    let (y1, y2) = (|| Y(0), || Y(1));
    // t1(x, y) = x•y
    let t1 = b(x1(), y1());
    // t2(x1, x2, y1, y2) = (x1•x2)•[y2•((y1•x1)•x2)]
    let t2 = b(b(x1(), x2()), b(y2(), b(b(y1(), x1()), x2())));
    // t3(x1, x2, y) = (x1•x2)•(x1•(y•x2))
    let t3 = b(b(x1(), x2()), b(x1(), b(y1(), x2())));
    // t4(x1, x2, x3, y) = [(x1•x2)•(x1•(y•x3))]•((x1•x2)•(x1•x3))
    let t4 = b(
        b(b(x1(), x2()), b(x1(), b(y1(), x3()))),
        b(b(x1(), x2()), b(x1(), x3())),
    );
    // t5(x1, x2, x3, y) = [(x1•x2)•((y•x3)•x2)]•((x1•x2)•(x3•x2))
    let t5 = b(
        b(b(x1(), x2()), b(b(y1(), x3()), x2())),
        b(b(x1(), x2()), b(x3(), x2())),
    );
    // t6(x, y1, y2) = (y1•(y2•x))•x
    let t6 = b(b(y1(), b(y2(), x1())), x1());
    [
        Term::new(t1, 1, 1),
        Term::new(t2, 2, 2),
        Term::new(t3, 2, 1),
        Term::new(t4, 3, 1),
        Term::new(t5, 3, 1),
        Term::new(t6, 1, 2),
    ]
    .map(|t| t.expect("built-in arities are consistent"))
}

pub const BUILTIN_NAMES: [&str; 6] = ["t1", "t2", "t3", "t4", "t5", "t6"];

/// A random tree of depth at most `max_depth` using up to three x- and two y-variables.
pub fn random_node(rng: &mut impl Rng, max_depth: usize) -> Node {
    let leaf = max_depth == 0 || rng.gen_bool(0.3);
    if leaf {
        match rng.gen_range(0..6) {
            0 => Node::One,
            1..=3 => Node::X(rng.gen_range(0..3)),
            _ => Node::Y(rng.gen_range(0..2)),
        }
    } else {
        b(random_node(rng, max_depth - 1), random_node(rng, max_depth - 1))
    }
}

/// `count` distinct random ideal terms of `t` that mention at least one y-variable.
///
/// Deterministic for a given seed; gives up after a fixed number of draws.
pub fn random_ideal_terms(t: &ImplicationTable, count: usize, seed: u64, max_depth: usize) -> Vec<Term> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Term> = Vec::new();
    for _ in 0..200_000 {
        if out.len() == count {
            break;
        }
        let term = Term::from_node(random_node(&mut rng, max_depth));
        if term.y_arity == 0 || out.contains(&term) {
            continue;
        }
        if is_ideal_term(t, &term).is_ok() {
            out.push(term);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn builtin_arities() {
        let ts = builtin_terms();
        let ar: Vec<_> = ts.iter().map(|t| (t.x_arity(), t.y_arity())).collect();
        assert_eq!(ar, vec![(1, 1), (2, 2), (2, 1), (3, 1), (3, 1), (1, 2)]);
    }

    #[test]
    fn parse_round_trip_of_builtins() {
        for t in builtin_terms() {
            assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
        }
        assert_eq!(Term::parse("(b x0 y0)").unwrap(), builtin_terms()[0]);
    }

    #[test]
    fn parse_errors() {
        assert!(Term::parse("").is_err());
        assert!(Term::parse("(b x0)").is_err());
        assert!(Term::parse("(c x0 y0)").is_err());
        assert!(Term::parse("x0 y0").is_err());
        assert!(Term::parse("z1").is_err());
        assert!(Term::parse("x").is_err());
        assert_eq!(Term::parse(" 1 ").unwrap().root(), &Node::One);
    }

    #[test]
    fn eval_examples() {
        let t = catalog::reduct("fig2_reduct");
        let [t1, .., t6] = builtin_terms();
        for a in 0..t.size() {
            assert_eq!(t1.eval(&t, &[a], &[t.one()]).unwrap(), t.one());
            for bb in 0..t.size() {
                let ab = t.bullet(a, bb);
                assert_eq!(t6.eval(&t, &[bb], &[ab, a]).unwrap(), bb);
            }
        }
        let one = Term::from_node(Node::One);
        assert_eq!(one.eval(&t, &[], &[]).unwrap(), t.one());
        assert!(matches!(t1.eval(&t, &[], &[]), Err(TermError::ArityMismatch { .. })));
        assert_eq!(Term::new(Node::X(2), 2, 0), Err(TermError::VariableOutOfRange));
    }

    #[test]
    fn builtins_are_ideal_terms() {
        for e in catalog::catalog() {
            if let crate::Payload::Implication(t) = &e.payload {
                for (k, term) in builtin_terms().iter().enumerate() {
                    assert_eq!(is_ideal_term(t, term), Ok(()), "{} t{}", e.name, k + 1);
                }
            }
        }
    }

    #[test]
    fn bare_variable_is_not_an_ideal_term() {
        let t = catalog::reduct("bool4_reduct");
        let x = Term::from_node(Node::X(0));
        assert_eq!(is_ideal_term(&t, &x), Err(vec![0]));
    }

    #[test]
    fn closure_trivial_cases() {
        let t = catalog::reduct("bool4_reduct");
        let ts = builtin_terms();
        for term in &ts {
            assert_eq!(closed_under_term(&t, &Subset::full(4), term), Ok(()));
        }
        let one = Subset::from_elements(4, [t.one()]).unwrap();
        assert_eq!(closed_under_term(&t, &one, &ts[0]), Ok(()));
    }

    #[test]
    fn random_ideal_terms_are_reproducible() {
        let t = catalog::reduct("bool4_reduct");
        let a = random_ideal_terms(&t, 20, 0, 5);
        let b = random_ideal_terms(&t, 20, 0, 5);
        assert_eq!(a.len(), 20);
        assert_eq!(a, b);
        for term in &a {
            assert!(term.root().depth() <= 5);
            assert_eq!(is_ideal_term(&t, term), Ok(()));
        }
    }

    #[test]
    fn tuples_enumerate_product() {
        let mut n = 0;
        for_each_tuple(&[4, 5, 6], 2, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 9);
        let mut zero = 0;
        for_each_tuple(&[1], 0, |t| {
            assert!(t.is_empty());
            zero += 1;
            true
        });
        assert_eq!(zero, 1);
    }
}
