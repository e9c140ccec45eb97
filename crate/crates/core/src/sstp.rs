//! Line-oriented instance format.
//!
//! ```text
//! # comment
//! p sstp <n> <m> <t>
//! e <u> <v>        (m lines, 1 <= u < v <= n)
//! t <u>            (t lines)
//! ```
//!
//! Ids in files are 1-based; in memory they are 0-based.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::instance::{InstanceError, SteinerInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(usize),
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is not tied to a line.
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    err(line, ParseErrorKind::Syntax(msg.into()))
}

/// Meaningful lines with their 1-based numbers: blank and `#` lines dropped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_fields<const K: usize>(
    line: usize,
    rest: &mut std::str::SplitWhitespace<'_>,
) -> Result<[usize; K], ParseError> {
    let mut out = [0usize; K];
    for slot in out.iter_mut() {
        let tok = rest
            .next()
            .ok_or_else(|| syntax(line, format!("expected {K} integer fields")))?;
        *slot = tok
            .parse()
            .map_err(|_| syntax(line, format!("invalid integer '{tok}'")))?;
    }
    if rest.next().is_some() {
        return Err(syntax(line, "trailing tokens"));
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<SteinerInstance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(0, "missing header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("sstp") {
        return Err(syntax(hline, "expected header 'p sstp <n> <m> <t>'"));
    }
    let [n, m, t] = parse_fields::<3>(hline, &mut toks)?;

    let check = |line: usize, v: usize| -> Result<usize, ParseError> {
        if v == 0 || v > n {
            Err(err(line, ParseErrorKind::OutOfRange(v)))
        } else {
            Ok(v - 1)
        }
    };

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    let mut terminals = Vec::with_capacity(t);
    let mut seen_terminal = vec![false; n];
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("e") => {
                let [u, v] = parse_fields::<2>(line, &mut toks)?;
                let (u, v) = (check(line, u)?, check(line, v)?);
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop(u + 1)));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            Some("t") => {
                let [u] = parse_fields::<1>(line, &mut toks)?;
                let u = check(line, u)?;
                if seen_terminal[u] {
                    return Err(err(line, ParseErrorKind::DuplicateTerminal(u + 1)));
                }
                seen_terminal[u] = true;
                terminals.push(u);
            }
            Some(other) => return Err(syntax(line, format!("unknown line type '{other}'"))),
            None => unreachable!("blank lines are filtered"),
        }
    }
    if edges.len() != m {
        return Err(syntax(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    if terminals.len() != t {
        return Err(syntax(
            0,
            format!("header declares {t} terminals, found {}", terminals.len()),
        ));
    }

    let graph = Graph::from_edges(n, edges.iter().copied()).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => {
            let key = (u, v);
            let line = edges
                .iter()
                .zip(&edge_lines)
                .filter(|((a, b), _)| (*a.min(b), *a.max(b)) == key)
                .map(|(_, &l)| l)
                .nth(1)
                .unwrap_or(0);
            err(line, ParseErrorKind::DuplicateEdge(u + 1, v + 1))
        }
        GraphError::TooLarge(_) => syntax(hline, "vertex count too large"),
        other => syntax(0, other.to_string()),
    })?;
    SteinerInstance::new(graph, terminals).map_err(|e| match e {
        InstanceError::Disconnected => err(0, ParseErrorKind::Disconnected),
        other => syntax(0, other.to_string()),
    })
}

/// Canonical form: edges sorted lexicographically with `u < v`, terminals
/// ascending, no comments.
pub fn write_instance(inst: &SteinerInstance) -> String {
    let g = inst.graph();
    let mut out = String::with_capacity(16 * (g.m() + inst.terminals().len() + 1));
    writeln!(out, "p sstp {} {} {}", g.n(), g.m(), inst.terminals().len()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for &t in inst.terminals() {
        writeln!(out, "t {}", t + 1).unwrap();
    }
    out
}
