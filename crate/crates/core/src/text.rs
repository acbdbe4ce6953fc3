//! Plain-text formats.
//!
//! Cayley table: the order `n` on the first line, then `n` lines of `n`
//! space-separated 0-based indices. Permutation: one line of images.
//! Group: the degree on the first line, then one permutation per line.
//! Blank lines are ignored.

use crate::error::{Error, Result};
use crate::loops::FiniteLoop;
use crate::perm::{Permutation, PermutationGroup};

fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_indices(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not an index: {t:?}"),
            })
        })
        .collect()
}

pub fn parse_table(s: &str) -> Result<FiniteLoop> {
    let lines: Vec<(usize, String)> = content_lines(s).map(|(n, l)| (n, l.to_string())).collect();
    let (first_no, first) = lines.first().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: *first_no,
        message: format!("expected order, found {first:?}"),
    })?;
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let rows: Vec<Vec<usize>> = lines[1..]
        .iter()
        .map(|(no, l)| parse_indices(*no, l))
        .collect::<Result<_>>()?;
    if rows.len() != n {
        let line = lines.last().map_or(1, |(no, _)| *no);
        return Err(Error::Parse {
            line,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    FiniteLoop::from_rows(&rows)
}

pub fn format_table(l: &FiniteLoop) -> String {
    let mut out = format!("{}\n", l.order());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_permutation(line: &str) -> Result<Permutation> {
    Permutation::from_images(parse_indices(1, line.trim())?)
}

pub fn format_permutation(p: &Permutation) -> String {
    p.images()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_group(s: &str) -> Result<PermutationGroup> {
    let mut lines = content_lines(s);
    let (no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let degree: usize = first.parse().map_err(|_| Error::Parse {
        line: no,
        message: format!("expected degree, found {first:?}"),
    })?;
    let mut gens = Vec::new();
    for (no, line) in lines {
        let p = Permutation::from_images(parse_indices(no, line)?).map_err(|e| Error::Parse {
            line: no,
            message: e.to_string(),
        })?;
        if p.degree() != degree {
            return Err(Error::Parse {
                line: no,
                message: format!("expected degree {degree}, found {}", p.degree()),
            });
        }
        gens.push(p);
    }
    PermutationGroup::new(degree, gens)
}

pub fn format_group(g: &PermutationGroup) -> String {
    let mut out = format!("{}\n", g.degree());
    for p in g.generators() {
        out.push_str(&format_permutation(p));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, ConstructionSpec};

    #[test]
    fn table_round_trip() {
        let l = build(&ConstructionSpec::Cml81).unwrap();
        let text = format_table(&l);
        assert!(text.starts_with("81\n0 1 2 "));
        assert_eq!(parse_table(&text).unwrap(), l);
    }

    #[test]
    fn table_errors() {
        assert!(matches!(parse_table(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_table("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_table("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_table("2\n0 1\n1 a\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_table("2\n0 1\n1 1\n"),
            Err(Error::NotLatinSquare { .. })
        ));
        assert_eq!(parse_table("\n1\n\n0\n").unwrap().order(), 1);
    }

    #[test]
    fn group_round_trip() {
        let g = parse_group("4\n1 2 3 0\n1 0 2 3\n").unwrap();
        assert_eq!(g.order_usize(), Some(24));
        assert_eq!(format_group(&g), "4\n1 2 3 0\n1 0 2 3\n");
        assert!(parse_group("3\n0 1\n").is_err());
        assert!(parse_group("3\n0 0 1\n").is_err());
        assert_eq!(parse_permutation(" 2 0 1 ").unwrap().apply(0), 2);
    }
}
