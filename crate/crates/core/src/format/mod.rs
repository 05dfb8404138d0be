//! Line-oriented text formats.
//!
//! Both formats are UTF-8, one directive per line, `#` starts a comment.
//!
//! `.olat` (ortholattice):
//!
//! ```text
//! olat 1
//! n 4
//! name 1 a          # optional labels
//! le 0 1            # generator pairs; reflexive-transitive closure is taken
//! comp 0 3          # symmetric; every element appears in exactly one comp line
//! ```
//!
//! `.ioa` (implication table):
//!
//! ```text
//! ioa 1
//! n 2
//! one 1
//! name 0 0          # optional labels
//! row 0 1 1         # row i: the values i•0 … i•(n-1)
//! row 1 0 1
//! ```

mod ioa;
mod olat;

pub use ioa::{parse_ioa, serialize_ioa};
pub use olat::{parse_olat, serialize_olat};

use thiserror::Error;

use crate::ortholattice::OrderToLatticeError;
use crate::poset::PosetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: index out of range: {msg}")]
    Range { line: usize, msg: String },
    #[error("element {0} has no comp line")]
    MissingComplement(usize),
    #[error("row {0} is missing")]
    MissingRow(usize),
    #[error("order relation: {0}")]
    Order(#[from] PosetError),
    #[error("order is not a lattice: {0}")]
    Lattice(#[from] OrderToLatticeError),
}

/// Significant lines as `(line number, tokens)`, comments and blanks removed.
fn significant_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then(|| (i + 1, content.split_whitespace().collect()))
        })
        .collect()
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn index(line: usize, tok: &str, n: usize) -> Result<usize, FormatError> {
    let v = parse_usize(line, tok)?;
    if v >= n {
        return Err(FormatError::Range {
            line,
            msg: format!("{v} is not below n = {n}"),
        });
    }
    Ok(v)
}

type Lines<'a> = [(usize, Vec<&'a str>)];

/// Reads the `<magic> 1` header and `n <count>` lines; returns `n` and the remaining lines.
fn header<'a>(
    lines: &'a Lines<'a>,
    magic: &str,
) -> Result<(usize, &'a Lines<'a>), FormatError> {
    let Some((line, toks)) = lines.first() else {
        return Err(syntax(1, "empty input"));
    };
    if toks.as_slice() != [magic, "1"] {
        return Err(syntax(*line, format!("expected header `{magic} 1`")));
    }
    let Some((line, toks)) = lines.get(1) else {
        return Err(syntax(*line + 1, "missing `n` line"));
    };
    if toks.len() != 2 || toks[0] != "n" {
        return Err(syntax(*line, "expected `n <count>`"));
    }
    let n = parse_usize(*line, toks[1])?;
    if n == 0 {
        return Err(syntax(*line, "n must be positive"));
    }
    Ok((n, &lines[2..]))
}

fn name_line(line: usize, toks: &[&str], names: &mut [Option<String>]) -> Result<(), FormatError> {
    if toks.len() != 3 {
        return Err(syntax(line, "expected `name <i> <label>`"));
    }
    let i = index(line, toks[1], names.len())?;
    if names[i].is_some() {
        return Err(syntax(line, format!("element {i} named twice")));
    }
    if names.iter().flatten().any(|l| l == toks[2]) {
        return Err(syntax(line, format!("label `{}` used twice", toks[2])));
    }
    names[i] = Some(toks[2].to_owned());
    Ok(())
}

fn finish_labels(names: Vec<Option<String>>) -> Option<Vec<String>> {
    if names.iter().all(Option::is_none) {
        return None;
    }
    Some(
        names
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
            .collect(),
    )
}

fn has_custom_labels(labels: &[String]) -> bool {
    labels.iter().enumerate().any(|(i, l)| *l != i.to_string())
}
