//! Line-oriented text formats.
//!
//! Colored graph:
//!
//! ```text
//! ecg 1
//! n <n> m <m> K <K>
//! e <u> <v> <c>      (m lines)
//! ```
//!
//! Digraph:
//!
//! ```text
//! dg 1
//! n <n> m <m>
//! a <u> <v>          (m lines)
//! ```
//!
//! `#` starts a comment running to the end of the line; blank lines are
//! ignored. All ids are 0-based decimal.

use super::{ColoredGraph, Digraph, GraphError};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing or unknown header (expected `ecg 1` or `dg 1`)")]
    UnknownHeader,
    #[error("header declares {declared} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Either kind of graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Colored(ColoredGraph),
    Directed(Digraph),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Colored(g) => g.n(),
            Instance::Directed(d) => d.n(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Instance::Colored(g) => write_colored(g),
            Instance::Directed(d) => write_digraph(d),
        }
    }
}

pub fn write_colored(g: &ColoredGraph) -> String {
    let mut out = format!("ecg 1\nn {} m {} K {}\n", g.n(), g.m(), g.num_colors());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.color).unwrap();
    }
    out
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("dg 1\nn {} m {}\n", d.n(), d.m());
    for &(u, v) in d.arcs() {
        writeln!(out, "a {u} {v}").unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn int(line: usize, tok: &str) -> Result<i64, FormatError> {
    tok.parse::<i64>()
        .map_err(|_| syntax(line, format!("`{tok}` is not an integer")))
}

/// Parses `key value key value ...` against the expected keys.
fn header(line: usize, tokens: &[&str], keys: &[&str]) -> Result<Vec<usize>, FormatError> {
    if tokens.len() != 2 * keys.len() {
        return Err(syntax(line, format!("expected `{}`", keys.iter().map(|k| format!("{k} <{k}>")).collect::<Vec<_>>().join(" "))));
    }
    keys.iter()
        .enumerate()
        .map(|(i, key)| {
            if tokens[2 * i] != *key {
                return Err(syntax(line, format!("expected key `{key}`, found `{}`", tokens[2 * i])));
            }
            let value = int(line, tokens[2 * i + 1])?;
            usize::try_from(value).map_err(|_| FormatError::Graph(GraphError::NegativeId { value }))
        })
        .collect()
}

pub fn parse_colored(text: &str) -> Result<ColoredGraph, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["ecg", "1"] => {}
        _ => return Err(FormatError::UnknownHeader),
    }
    let (line, tokens) = lines.next().ok_or_else(|| syntax(0, "missing size line"))?;
    let sizes = header(line, &tokens, &["n", "m", "K"])?;
    let mut edges = Vec::with_capacity(sizes[1]);
    for (line, tokens) in lines {
        if tokens.len() != 4 || tokens[0] != "e" {
            return Err(syntax(line, "expected `e <u> <v> <c>`"));
        }
        edges.push((int(line, tokens[1])?, int(line, tokens[2])?, int(line, tokens[3])?));
    }
    if edges.len() != sizes[1] {
        return Err(FormatError::CountMismatch {
            what: "edges",
            declared: sizes[1],
            found: edges.len(),
        });
    }
    let g = ColoredGraph::from_signed(sizes[0] as i64, &edges)?;
    if g.num_colors() != sizes[2] {
        return Err(FormatError::CountMismatch {
            what: "colors",
            declared: sizes[2],
            found: g.num_colors(),
        });
    }
    Ok(g)
}

pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["dg", "1"] => {}
        _ => return Err(FormatError::UnknownHeader),
    }
    let (line, tokens) = lines.next().ok_or_else(|| syntax(0, "missing size line"))?;
    let sizes = header(line, &tokens, &["n", "m"])?;
    let mut arcs = Vec::with_capacity(sizes[1]);
    for (line, tokens) in lines {
        if tokens.len() != 3 || tokens[0] != "a" {
            return Err(syntax(line, "expected `a <u> <v>`"));
        }
        arcs.push((int(line, tokens[1])?, int(line, tokens[2])?));
    }
    if arcs.len() != sizes[1] {
        return Err(FormatError::CountMismatch {
            what: "arcs",
            declared: sizes[1],
            found: arcs.len(),
        });
    }
    Ok(Digraph::from_signed(sizes[0] as i64, &arcs)?)
}

/// Dispatches on the header line.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    match content_lines(text).next() {
        Some((_, t)) if t.first() == Some(&"ecg") => parse_colored(text).map(Instance::Colored),
        Some((_, t)) if t.first() == Some(&"dg") => parse_digraph(text).map(Instance::Directed),
        _ => Err(FormatError::UnknownHeader),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# a triangle\necg 1\nn 3 m 3 K 3\ne 0 1 0\n\ne 1 2 1 # second\ne 2 0 2\n";
        let g = parse_colored(text).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(parse_colored(&write_colored(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_colored("dg 1\nn 2 m 0\n"), Err(FormatError::UnknownHeader));
        assert!(matches!(
            parse_colored("ecg 1\nn 3 m 2 K 1\ne 0 1 0\n"),
            Err(FormatError::CountMismatch { what: "edges", .. })
        ));
        assert!(matches!(
            parse_colored("ecg 1\nn 3 m 1 K 2\ne 0 1 0\n"),
            Err(FormatError::CountMismatch { what: "colors", .. })
        ));
        assert_eq!(
            parse_colored("ecg 1\nn 3 m 1 K 1\ne 0 -2 0\n"),
            Err(FormatError::Graph(GraphError::NegativeId { value: -2 }))
        );
        assert!(matches!(
            parse_colored("ecg 1\nn 3 m 1 K 1\ne 0 0 0\n"),
            Err(FormatError::Graph(GraphError::LoopEdge { .. }))
        ));
        assert!(matches!(
            parse_digraph("dg 1\nn 3 m 1\na 0 x\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn dispatches_on_header() {
        let d = parse_instance("dg 1\nn 3 m 3\na 0 1\na 1 2\na 2 0\n").unwrap();
        assert!(matches!(d, Instance::Directed(_)));
        assert_eq!(d.n(), 3);
        assert_eq!(parse_instance(&d.to_text()).unwrap(), d);
    }
}
