//! Text formats for hypergraphs and colorings.
//!
//! Hypergraph: header `k n m`, then `m` lines of `k` ascending vertex ids.
//! Coloring: header `q n`, then one line of `n` colors. In both, lines
//! starting with `#` are comments.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hypercolor_core::hypergraph::{validate, Violation};
use hypercolor_core::{Coloring, Hypergraph};

use crate::{Error, Result};

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#') && !l.is_empty())
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| Error::Parse { line, message: format!("`{tok}` is not a non-negative integer") }))
        .collect()
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing `k n m` header".into() })?;
    let header = parse_numbers(header_line, header)?;
    let [k, n, m] = header[..] else {
        return Err(Error::Parse { line: header_line, message: "header must be `k n m`".into() });
    };
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(Error::Parse { line, message: format!("more than the {m} edges declared in the header") });
        }
        let edge = parse_numbers(line, body)?;
        if edge.len() != k {
            return Err(Error::Parse { line, message: format!("edge has {} vertices, expected k = {k}", edge.len()) });
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= n) {
            return Err(Error::Parse { line, message: format!("vertex {v} outside [0, {n})") });
        }
        if edge.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse { line, message: "vertex ids must be strictly ascending".into() });
        }
        edges.push(edge);
        edge_lines.push(line);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    let report = validate(n, k, &edges);
    if let Some(first) = report.violations.first() {
        let line = match first {
            Violation::Simplicity { second, .. } => edge_lines[*second],
            Violation::Arity { edge, .. }
            | Violation::DuplicateVertex { edge, .. }
            | Violation::VertexOutOfRange { edge, .. } => edge_lines[*edge],
            _ => header_line,
        };
        return Err(Error::Parse { line, message: report.to_string() });
    }
    Ok(Hypergraph::new(n, k, edges)?)
}

/// Edges are written in lexicographic order.
pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut edges: Vec<&Vec<usize>> = h.edges().iter().collect();
    edges.sort();
    let mut out = format!("{} {} {}\n", h.k(), h.n(), h.m());
    for e in edges {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_hypergraph(&text)
}

pub fn write_hypergraph(path: &Path, h: &Hypergraph) -> Result<()> {
    fs::write(path, format_hypergraph(h)).map_err(|e| Error::io(path, e))
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing `q n` header".into() })?;
    let [q, n] = parse_numbers(header_line, header)?[..] else {
        return Err(Error::Parse { line: header_line, message: "header must be `q n`".into() });
    };
    let (line, body) = match lines.next() {
        Some(l) => l,
        None if n == 0 => (header_line + 1, ""),
        None => return Err(Error::Parse { line: header_line + 1, message: "missing color line".into() }),
    };
    let colors = parse_numbers(line, body)?;
    if colors.len() != n {
        return Err(Error::Parse { line, message: format!("expected {n} colors, found {}", colors.len()) });
    }
    if let Some((extra, _)) = lines.next() {
        return Err(Error::Parse { line: extra, message: "unexpected content after the color line".into() });
    }
    let colors = colors
        .into_iter()
        .map(|c| u32::try_from(c).map_err(|_| Error::Parse { line, message: format!("color {c} too large") }))
        .collect::<Result<Vec<u32>>>()?;
    Coloring::new(q, colors).map_err(|e| Error::Parse { line, message: e.to_string() })
}

pub fn format_coloring(x: &Coloring) -> String {
    let colors: Vec<String> = x.colors().iter().map(u32::to_string).collect();
    format!("{} {}\n{}\n", x.q(), x.n(), colors.join(" "))
}

pub fn read_coloring(path: &Path) -> Result<Coloring> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_coloring(&text)
}

pub fn write_coloring(path: &Path, x: &Coloring) -> Result<()> {
    fs::write(path, format_coloring(x)).map_err(|e| Error::io(path, e))
}

/// One code per line, ascending, for diffing enumeration sets.
pub fn format_codes(codes: &[u64]) -> String {
    let mut out = String::with_capacity(codes.len() * 8);
    for c in codes {
        let _ = writeln!(out, "{c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_two_edge() {
        let h = Hypergraph::new(5, 3, vec![vec![2, 3, 4], vec![0, 1, 2]]).unwrap();
        let text = format_hypergraph(&h);
        assert_eq!(text, "3 5 2\n0 1 2\n2 3 4\n");
        let back = parse_hypergraph(&text).unwrap();
        assert_eq!(format_hypergraph(&back), text);
        assert_eq!(back.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn comments_are_skipped() {
        let h = parse_hypergraph("# tiny\n3 5 1\n# edge follows\n0 1 2\n").unwrap();
        assert_eq!(h.m(), 1);
    }

    #[test]
    fn arity_error_has_line() {
        let err = parse_hypergraph("3 5 2\n0 1 2\n3 4\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("expected k = 3"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn simplicity_error_has_line() {
        let err = parse_hypergraph("3 5 2\n0 1 2\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref message } if message.contains("simplicity")), "{err}");
    }

    #[test]
    fn malformed_header() {
        assert!(matches!(parse_hypergraph("3 5\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("a b c\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_count_mismatch() {
        assert!(parse_hypergraph("3 5 2\n0 1 2\n").is_err());
        assert!(parse_hypergraph("3 5 1\n0 1 2\n2 3 4\n").is_err());
    }

    #[test]
    fn descending_line_rejected() {
        assert!(matches!(parse_hypergraph("3 5 1\n2 1 0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn empty_edge_list() {
        let h = parse_hypergraph("3 4 0\n").unwrap();
        assert_eq!(h.m(), 0);
        assert_eq!(h.n(), 4);
    }

    #[test]
    fn coloring_roundtrip() {
        let x = Coloring::new(4, vec![3, 0, 1, 1]).unwrap();
        let text = format_coloring(&x);
        assert_eq!(text, "4 4\n3 0 1 1\n");
        assert_eq!(parse_coloring(&text).unwrap(), x);
    }

    #[test]
    fn coloring_errors() {
        assert!(matches!(parse_coloring("2 3\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_coloring("2 2\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_coloring("2 2\n").is_err());
    }
}
