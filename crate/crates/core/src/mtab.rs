//! The `mtab v1` text format.
//!
//! ```text
//! 3
//! 0 1 2
//! 2 2 2
//! 2 2 2
//! names: e a z
//! zero: 2
//! ```
//!
//! The first line is the order `n`, followed by `n` rows of `n`
//! space-separated 0-based indices. Optional trailing lines set `names:`,
//! `identity:` and `zero:`. Several tables in one stream are separated by
//! blank lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::semigroup::{build_semigroup, FiniteSemigroup};

/// Serializes a semigroup as a single mtab block (no trailing blank line).
pub fn to_mtab(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", s.order());
    for a in s.elements() {
        let row: Vec<String> = s.row(a).iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(names) = s.names() {
        let _ = writeln!(out, "names: {}", names.join(" "));
    }
    if let Some(e) = s.identity() {
        let _ = writeln!(out, "identity: {e}");
    }
    if let Some(z) = s.zero() {
        let _ = writeln!(out, "zero: {z}");
    }
    out
}

/// Parses exactly one table. Blank lines around it are ignored.
pub fn parse_mtab(text: &str) -> Result<FiniteSemigroup> {
    let mut blocks = parse_mtab_stream(text)?;
    match blocks.len() {
        1 => Ok(blocks.pop().unwrap()),
        0 => Err(Error::Parse {
            line: 1,
            message: "no table found".into(),
        }),
        k => Err(Error::Parse {
            line: 1,
            message: format!("expected one table, found {k}"),
        }),
    }
}

/// Parses a stream of blank-line-separated tables.
pub fn parse_mtab_stream(text: &str) -> Result<Vec<FiniteSemigroup>> {
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !block.is_empty() {
                out.push(parse_block(&block)?);
                block.clear();
            }
        } else {
            block.push((i + 1, line));
        }
    }
    if !block.is_empty() {
        out.push(parse_block(&block)?);
    }
    Ok(out)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_block(lines: &[(usize, &str)]) -> Result<FiniteSemigroup> {
    let (first_line, header) = lines[0];
    let order: usize = header.trim().parse().map_err(|_| {
        parse_err(
            first_line,
            format!("expected the order, found `{}`", header.trim()),
        )
    })?;
    if order == 0 {
        return Err(parse_err(first_line, "order must be positive"));
    }
    if lines.len() < order + 1 {
        let line = lines.last().map_or(first_line, |l| l.0);
        return Err(parse_err(
            line,
            format!("expected {order} rows, found {}", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(order);
    for &(line, text) in &lines[1..=order] {
        let mut row = Vec::with_capacity(order);
        for (col, tok) in text.split_whitespace().enumerate() {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_err(line, format!("column {col}: `{tok}` is not an index")))?;
            if v >= order {
                return Err(parse_err(
                    line,
                    format!("column {col}: entry {v} is outside 0..{order}"),
                ));
            }
            row.push(v);
        }
        if row.len() != order {
            return Err(parse_err(
                line,
                format!("ragged row: {} entries, expected {order}", row.len()),
            ));
        }
        rows.push(row);
    }
    let mut names = None;
    let mut identity = None;
    let mut zero = None;
    for &(line, text) in &lines[order + 1..] {
        let (key, value) = text
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("unexpected line `{}`", text.trim())))?;
        let value = value.trim();
        match key.trim() {
            "names" => {
                let list: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if list.len() != order {
                    return Err(parse_err(
                        line,
                        format!("{} names for {order} elements", list.len()),
                    ));
                }
                names = Some(list);
            }
            "identity" => identity = Some(parse_index(line, value, order)?),
            "zero" => zero = Some(parse_index(line, value, order)?),
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    build_semigroup(rows, names, identity, zero)
}

fn parse_index(line: usize, value: &str, order: usize) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(v) if v < order => Ok(v),
        _ => Err(parse_err(
            line,
            format!("`{value}` is not an element index"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "3\n0 1 2\n2 2 2\n2 2 2\nnames: e a z\nzero: 2\n";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_mtab(FIG1).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.name(1), "a");
        assert_eq!(s.zero(), Some(2));
        assert_eq!(to_mtab(&s), FIG1);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse_mtab("2\n0 1\n0\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "ragged row: 1 entries, expected 2".into()
            }
        );
        assert!(matches!(
            parse_mtab("2\n0 1 1\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn names_offending_cell() {
        let err = parse_mtab("2\n0 1\n0 7\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "column 1: entry 7 is outside 0..2".into()
            }
        );
    }

    #[test]
    fn missing_rows_and_bad_keys() {
        assert!(matches!(parse_mtab("3\n0 0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_mtab("1\n0\ncolour: red\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(
            parse_mtab("2\n0 1\n0 1\nidentity: 0\n").unwrap_err(),
            Error::InvalidIdentity(0)
        );
    }

    #[test]
    fn stream_of_tables() {
        let text = format!("\n1\n0\n\n{FIG1}\n\n");
        let all = parse_mtab_stream(&text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0], FiniteSemigroup::trivial());
    }
}
