use super::{finish_labels, has_custom_labels, header, index, name_line, significant_lines, syntax, FormatError};
use crate::implication::ImplicationTable;
use crate::table::OpTable;

pub fn parse_ioa(text: &str) -> Result<ImplicationTable, FormatError> {
    let lines = significant_lines(text);
    let (n, body) = header(&lines, "ioa")?;
    let mut names: Vec<Option<String>> = vec![None; n];
    let mut one = None;
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, toks) in body {
        let line = *line;
        match toks[0] {
            "name" => name_line(line, toks, &mut names)?,
            "one" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "expected `one <i>`"));
                }
                if one.is_some() {
                    return Err(syntax(line, "duplicate `one` line"));
                }
                one = Some(index(line, toks[1], n)?);
            }
            "row" => {
                if toks.len() != n + 2 {
                    return Err(syntax(
                        line,
                        format!("row has {} values, expected {n}", toks.len().saturating_sub(2)),
                    ));
                }
                let i = index(line, toks[1], n)?;
                if rows[i].is_some() {
                    return Err(syntax(line, format!("row {i} given twice")));
                }
                let vals = toks[2..]
                    .iter()
                    .map(|t| index(line, t, n))
                    .collect::<Result<Vec<_>, _>>()?;
                rows[i] = Some(vals);
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let last = lines.last().map_or(1, |(l, _)| *l);
    let one = one.ok_or_else(|| syntax(last, "missing `one` line"))?;
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(FormatError::MissingRow(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let table = OpTable::from_rows(rows).expect("row lengths checked");
    Ok(ImplicationTable::from_parts(table, one, finish_labels(names)).expect("indices checked"))
}

pub fn serialize_ioa(t: &ImplicationTable) -> String {
    let n = t.size();
    let mut out = format!("ioa 1\nn {n}\none {}\n", t.one());
    if has_custom_labels(t.labels()) {
        for (i, name) in t.labels().iter().enumerate() {
            out.push_str(&format!("name {i} {name}\n"));
        }
    }
    for i in 0..n {
        let vals: Vec<String> = t.table().row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("row {i} {}\n", vals.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn bool4_reduct_round_trips() {
        let t = catalog::reduct("bool4_reduct");
        assert_eq!(parse_ioa(&serialize_ioa(&t)).unwrap(), t);
    }

    #[test]
    fn unlabelled_table() {
        let t = parse_ioa("ioa 1\nn 2\none 1\nrow 0 1 1\nrow 1 0 1\n").unwrap();
        assert_eq!(t.bullet(1, 0), 0);
        assert_eq!(serialize_ioa(&t), "ioa 1\nn 2\none 1\nrow 0 1 1\nrow 1 0 1\n");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_ioa("ioa 1\nn 2\none 1\nrow 0 1\nrow 1 0 1\n"),
            Err(FormatError::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_ioa("ioa 1\nn 2\none 2\nrow 0 1 1\nrow 1 0 1\n"),
            Err(FormatError::Range { line: 3, .. })
        ));
        assert_eq!(
            parse_ioa("ioa 1\nn 2\none 1\nrow 0 1 1\n"),
            Err(FormatError::MissingRow(1))
        );
        assert!(matches!(parse_ioa(""), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_ioa("ioa 1\nn 2\nrow 0 1 1\nrow 1 0 1\n"),
            Err(FormatError::Syntax { .. })
        ));
    }
}
