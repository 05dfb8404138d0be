use super::{finish_labels, has_custom_labels, header, index, name_line, significant_lines, syntax, FormatError};
use crate::ortholattice::{JoinOrder, Ortholattice};
use crate::poset::{closure_of_pairs, validate_poset};

pub fn parse_olat(text: &str) -> Result<Ortholattice, FormatError> {
    let lines = significant_lines(text);
    let (n, body) = header(&lines, "olat")?;
    let mut names: Vec<Option<String>> = vec![None; n];
    let mut pairs = Vec::new();
    let mut comp: Vec<Option<usize>> = vec![None; n];
    for (line, toks) in body {
        let line = *line;
        match toks[0] {
            "name" => name_line(line, toks, &mut names)?,
            "le" | "comp" => {
                if toks.len() != 3 {
                    return Err(syntax(line, format!("expected `{} <i> <j>`", toks[0])));
                }
                let i = index(line, toks[1], n)?;
                let j = index(line, toks[2], n)?;
                if toks[0] == "le" {
                    pairs.push((i, j));
                } else {
                    if comp[i].is_some() || comp[j].is_some() {
                        return Err(syntax(line, "element already has a complement"));
                    }
                    comp[i] = Some(j);
                    comp[j] = Some(i);
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let comp = comp
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or(FormatError::MissingComplement(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let order = validate_poset(n, closure_of_pairs(n, &pairs))?;
    Ok(Ortholattice::from_order(&order, comp, finish_labels(names))?)
}

/// Writes cover pairs of the order and one `comp` line per complement pair.
///
/// Only involutive complementations survive a round trip.
pub fn serialize_olat(l: &Ortholattice) -> String {
    let n = l.size();
    let mut out = format!("olat 1\nn {n}\n");
    if has_custom_labels(l.labels()) {
        for (i, name) in l.labels().iter().enumerate() {
            out.push_str(&format!("name {i} {name}\n"));
        }
    }
    for (i, j) in l.order().covers() {
        out.push_str(&format!("le {i} {j}\n"));
    }
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let c = l.comp(i);
        out.push_str(&format!("comp {i} {c}\n"));
        done[i] = true;
        done[c] = true;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_lattices_round_trip() {
        for l in [catalog::fig1_o6(), catalog::fig2_strong12(), catalog::mo2(), catalog::bool8(), catalog::boolean(2)] {
            let text = serialize_olat(&l);
            assert_eq!(parse_olat(&text).unwrap(), l, "{text}");
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# chain\n\nolat 1   # header\nn 2\nle 0 1\n\ncomp 0 1 # pair\n";
        let l = parse_olat(text).unwrap();
        assert_eq!(l, catalog::chain2());
        assert_eq!((l.bot(), l.top()), (0, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_olat(""), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_olat("# only a comment\n"), Err(FormatError::Syntax { .. })));
        assert_eq!(
            parse_olat("olat 1\nn 3\nle 0 1\nle 1 2\ncomp 0 2\n"),
            Err(FormatError::MissingComplement(1))
        );
        assert!(matches!(
            parse_olat("olat 1\nn 2\nle 0 5\n"),
            Err(FormatError::Range { line: 3, .. })
        ));
        assert!(matches!(
            parse_olat("olat 1\nn 2\nfoo 0 1\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_olat("olat 1\nn 2\ncomp 0 1\n"),
            Err(FormatError::Lattice(_))
        ));
        assert!(matches!(
            parse_olat("olat 1\nn 2\nle 0 1\nle 1 0\ncomp 0 1\n"),
            Err(FormatError::Order(_))
        ));
        assert!(matches!(
            parse_olat("olat 2\nn 2\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
    }
}
