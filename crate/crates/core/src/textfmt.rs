//! Plain-text group files.
//!
//! ```text
//! # comment
//! degree 4
//! gen (1 2)
//! gen (1 2 3 4)
//! ```
//!
//! Points are 1-indexed; `gen ()` is the identity.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn parse_error(line: usize, msg: impl std::fmt::Display) -> GroupError {
    GroupError::input(format!("line {line}: {msg}"))
}

/// Parses 1-indexed disjoint-cycle notation into 0-indexed cycles.
pub fn parse_cycles(text: &str, degree: usize) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' at {rest:?}"))?;
        let close = body
            .find(')')
            .ok_or_else(|| format!("unclosed cycle in {text:?}"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(format!("unclosed cycle in {text:?}"));
        }
        let mut cycle = Vec::new();
        for tok in inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let point: usize = tok.parse().map_err(|_| format!("invalid point {tok:?}"))?;
            if point == 0 || point > degree {
                return Err(format!("point {point} outside 1..={degree}"));
            }
            cycle.push(point - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub fn parse_group_text(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "degree" => {
                if degree.is_some() {
                    return Err(parse_error(line_no, "duplicate degree line"));
                }
                let n: usize = rest.trim().parse().map_err(|_| {
                    parse_error(line_no, format!("invalid degree {:?}", rest.trim()))
                })?;
                if n == 0 {
                    return Err(parse_error(line_no, "degree must be positive"));
                }
                degree = Some(n);
            }
            "gen" => {
                let n = degree.ok_or_else(|| parse_error(line_no, "gen before degree line"))?;
                let cycles = parse_cycles(rest, n).map_err(|m| parse_error(line_no, m))?;
                let g =
                    Permutation::from_cycles(n, &cycles).map_err(|e| parse_error(line_no, e))?;
                gens.push(g);
            }
            other => return Err(parse_error(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    let degree = degree.ok_or_else(|| GroupError::input("missing degree line"))?;
    PermGroup::new(degree, gens)
}

pub fn load_group_file(path: impl AsRef<Path>) -> Result<PermGroup> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_group_text(&text)
}

pub fn write_group_text(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        writeln!(out, "gen {s}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s4() {
        let g = parse_group_text("# S4\ndegree 4\n\ngen (1 2)\ngen (1 2 3 4)\n").unwrap();
        assert_eq!(g.order_u64(), Some(24));
    }

    #[test]
    fn empty_generator_list_is_trivial() {
        let g = parse_group_text("degree 5\n").unwrap();
        assert!(g.is_trivial());
        let g = parse_group_text("degree 3\ngen ()\n").unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn malformed_cycle_reports_line() {
        let err = parse_group_text("degree 4\ngen (1 2)\ngen (1 2\n").unwrap_err();
        match err {
            GroupError::Input(msg) => assert!(msg.starts_with("line 3:"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_violations() {
        assert!(parse_group_text("degree 3\ngen (1 4)\n").is_err());
        assert!(parse_group_text("gen (1 2)\n").is_err());
        assert!(parse_group_text("degree 3\ngen (1 2)(2 3)\n").is_err());
        assert!(parse_group_text("degree 0\n").is_err());
        assert!(parse_group_text("").is_err());
    }

    #[test]
    fn multiple_cycles_and_commas() {
        let g = parse_group_text("degree 4\ngen (1,2)(3,4)\n").unwrap();
        assert_eq!(format!("{}", g.generators()[0]), "(1 2)(3 4)");
    }
}
