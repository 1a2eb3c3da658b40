//! Text formats.
//!
//! Graph files:
//!
//! ```text
//! tc7-graph v1 <n>
//! <id>: <neighbors in clockwise order>
//! ```
//!
//! one line per vertex `0..n`. Coloring files:
//!
//! ```text
//! tc7-coloring v1 <k>
//! v <id> <color>
//! e <u> <v> <color>
//! ```
//!
//! where a color of `-` means uncolored and omitted elements are uncolored.
//! In both formats blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, TotalColoring, MAX_PALETTE};
use crate::plane::{PlaneError, PlaneGraph, VertexId};

pub const GRAPH_HEADER: &str = "tc7-graph v1";
pub const COLORING_HEADER: &str = "tc7-coloring v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("invalid embedding: {0}")]
    Plane(#[from] PlaneError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header_count(line: usize, text: &str, header: &str) -> Result<usize, FormatError> {
    let rest = text
        .strip_prefix(header)
        .ok_or_else(|| syntax(line, format!("expected header `{header} <count>`")))?;
    parse_num(line, rest.trim(), "count")
}

fn parse_num(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn write_graph(g: &PlaneGraph) -> String {
    let mut out = format!("{GRAPH_HEADER} {}\n", g.vertex_count());
    for v in 0..g.vertex_count() {
        let _ = write!(out, "{v}:");
        for w in g.neighbors(v) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

/// Parses a graph file; the graph must be connected.
pub fn parse_graph(text: &str) -> Result<PlaneGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, head) = lines.next().ok_or(FormatError::MissingHeader)?;
    let n = header_count(hl, head, GRAPH_HEADER)?;
    let mut rotation: Vec<Option<Vec<VertexId>>> = vec![None; n];
    let mut last_line = hl;
    for (line, l) in lines {
        last_line = line;
        let (id, rest) = l
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `<id>: <neighbors>`"))?;
        let v = parse_num(line, id.trim(), "vertex id")?;
        if v >= n {
            return Err(syntax(line, format!("vertex {v} out of range 0..{n}")));
        }
        if rotation[v].is_some() {
            return Err(syntax(line, format!("vertex {v} listed twice")));
        }
        let nbrs = rest
            .split_whitespace()
            .map(|t| {
                let w = parse_num(line, t, "neighbor")?;
                if w >= n {
                    return Err(syntax(line, format!("neighbor {w} out of range 0..{n}")));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rotation[v] = Some(nbrs);
    }
    if let Some(v) = rotation.iter().position(Option::is_none) {
        return Err(syntax(last_line, format!("vertex {v} has no rotation line")));
    }
    let rotation: Vec<Vec<VertexId>> = rotation.into_iter().map(Option::unwrap).collect();
    Ok(PlaneGraph::build_from_rotation(n, rotation)?)
}

pub fn write_coloring(g: &PlaneGraph, c: &TotalColoring) -> String {
    let show = |x: Option<Color>| x.map_or("-".to_string(), |c| c.to_string());
    let mut out = format!("{COLORING_HEADER} {}\n", c.palette_size());
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "v {v} {}", show(c.vertex(v)));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "e {u} {v} {}", show(c.edge(e)));
    }
    out
}

/// Parses a coloring of `g`. Colors are checked against the palette but not
/// for properness.
pub fn parse_coloring(g: &PlaneGraph, text: &str) -> Result<TotalColoring, FormatError> {
    let mut lines = content_lines(text);
    let (hl, head) = lines.next().ok_or(FormatError::MissingHeader)?;
    let k = header_count(hl, head, COLORING_HEADER)?;
    if k == 0 || k > MAX_PALETTE {
        return Err(syntax(hl, format!("palette size {k} outside 1..={MAX_PALETTE}")));
    }
    let mut c = TotalColoring::for_graph(g, k);
    let mut seen_v = vec![false; g.vertex_count()];
    let mut seen_e = vec![false; g.edge_count()];
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let color = |tok: &str| -> Result<Option<Color>, FormatError> {
            if tok == "-" {
                return Ok(None);
            }
            let x = parse_num(line, tok, "color")?;
            if x == 0 || x > k {
                return Err(syntax(line, format!("color {x} outside 1..={k}")));
            }
            Ok(Some(x as Color))
        };
        match toks.as_slice() {
            ["v", id, col] => {
                let v = parse_num(line, id, "vertex id")?;
                if v >= g.vertex_count() {
                    return Err(syntax(line, format!("unknown vertex {v}")));
                }
                if std::mem::replace(&mut seen_v[v], true) {
                    return Err(syntax(line, format!("vertex {v} colored twice")));
                }
                c.set_vertex(v, color(col)?);
            }
            ["e", a, b, col] => {
                let (u, v) = (parse_num(line, a, "vertex id")?, parse_num(line, b, "vertex id")?);
                let e = g
                    .edge_id(u, v)
                    .ok_or_else(|| syntax(line, format!("{u} {v} is not an edge")))?;
                if std::mem::replace(&mut seen_e[e], true) {
                    return Err(syntax(line, format!("edge {u} {v} colored twice")));
                }
                c.set_edge(e, color(col)?);
            }
            _ => return Err(syntax(line, "expected `v <id> <color>` or `e <u> <v> <color>`")),
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_errors_carry_line_numbers() {
        let text = "# comment\ntc7-graph v1 2\n0: 1\n1: x\n";
        assert_eq!(
            parse_graph(text),
            Err(FormatError::Syntax {
                line: 4,
                message: "invalid neighbor `x`".into()
            })
        );
        assert!(matches!(parse_graph("tc7-graph v1 2\n0: 1\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert_eq!(parse_graph(""), Err(FormatError::MissingHeader));
        assert!(matches!(parse_graph("tc7-graph v1 2\n0: 1\n1:\n"), Err(FormatError::Plane(_))));
    }

    #[test]
    fn coloring_round_trip() {
        let g = parse_graph("tc7-graph v1 3\n0: 1 2\n1: 2 0\n2: 0 1\n").unwrap();
        let mut c = TotalColoring::for_graph(&g, 5);
        c.set_vertex(0, Some(1));
        c.set_edge(2, Some(5));
        let text = write_coloring(&g, &c);
        assert_eq!(parse_coloring(&g, &text).unwrap(), c);
        assert!(matches!(
            parse_coloring(&g, "tc7-coloring v1 5\nv 0 6\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_coloring(&g, "tc7-coloring v1 5\ne 0 9 1\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }
}
