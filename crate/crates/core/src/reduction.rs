//! Exact cover by 3-sets and its reduction to Steiner trees on split graphs.
//!
//! File format (1-based elements):
//!
//! ```text
//! x3c <3q> <n>
//! c <a> <b> <c>    (n lines)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::instance::SteinerInstance;
use crate::sstp::{content_lines, parse_fields, ParseError, ParseErrorKind};

/// Largest collection `solve_x3c_bruteforce` accepts.
pub const MAX_BRUTE_TRIPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum X3CError {
    #[error("ground set size {0} is not a positive multiple of 3")]
    GroundSize(usize),
    #[error("triple {0:?} has repeated or out-of-range elements")]
    BadTriple([usize; 3]),
    #[error("element {0} lies in no triple")]
    Uncovered(usize),
    #[error("{0} triples exceed the brute-force limit of {MAX_BRUTE_TRIPLES}")]
    TooLarge(usize),
}

/// Ground set `0..ground_size` and a collection of 3-element subsets, each
/// stored sorted; duplicates are removed on construction, keeping first
/// occurrences in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    ground_size: usize,
    triples: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(ground_size: usize, triples: Vec<[usize; 3]>) -> Result<Self, X3CError> {
        if ground_size == 0 || !ground_size.is_multiple_of(3) {
            return Err(X3CError::GroundSize(ground_size));
        }
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(triples.len());
        for mut t in triples {
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] || t[2] >= ground_size {
                return Err(X3CError::BadTriple(t));
            }
            if seen.insert(t) {
                kept.push(t);
            }
        }
        Ok(X3CInstance {
            ground_size,
            triples: kept,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn q(&self) -> usize {
        self.ground_size / 3
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
}

pub fn parse_x3c(text: &str) -> Result<X3CInstance, ParseError> {
    let syntax = |line: usize, msg: String| ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg),
    };
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(0, "missing header".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("x3c") {
        return Err(syntax(hline, "expected header 'x3c <3q> <n>'".into()));
    }
    let [ground, n] = parse_fields::<2>(hline, &mut toks)?;
    let mut triples = Vec::with_capacity(n);
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        if toks.next() != Some("c") {
            return Err(syntax(line, "expected 'c <a> <b> <c>'".into()));
        }
        let t = parse_fields::<3>(line, &mut toks)?;
        if let Some(&bad) = t.iter().find(|&&e| e == 0 || e > ground) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::OutOfRange(bad),
            });
        }
        triples.push(t.map(|e| e - 1));
    }
    if triples.len() != n {
        return Err(syntax(
            0,
            format!("header declares {n} triples, found {}", triples.len()),
        ));
    }
    X3CInstance::new(ground, triples).map_err(|e| syntax(0, e.to_string()))
}

pub fn write_x3c(x: &X3CInstance) -> String {
    let mut out = format!("x3c {} {}\n", x.ground_size, x.triples.len());
    for t in &x.triples {
        writeln!(out, "c {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
    }
    out
}

/// Builds the split graph with the elements as independent vertices
/// `0..3q` and one clique vertex `3q + i` per triple `i`, adjacent to its
/// three elements. Terminals are the elements; the target size is `q`.
pub fn reduce_x3c(x: &X3CInstance) -> Result<(SteinerInstance, usize), X3CError> {
    let z = x.ground_size;
    let mut covered = vec![false; z];
    for t in &x.triples {
        for &e in t {
            covered[e] = true;
        }
    }
    if let Some(e) = covered.iter().position(|&c| !c) {
        return Err(X3CError::Uncovered(e));
    }
    let n = z + x.triples.len();
    let mut in_clique = vec![false; n];
    let mut cross = vec![Vec::new(); n];
    for (i, t) in x.triples.iter().enumerate() {
        let c = z + i;
        in_clique[c] = true;
        for &e in t {
            cross[c].push(e);
            cross[e].push(c);
        }
    }
    let g = Graph::from_split_parts(&in_clique, &cross);
    let inst = SteinerInstance::new(g, (0..z).collect()).expect("covered elements connect");
    Ok((inst, x.q()))
}

/// An exact cover as triple indices in increasing order, or `None`.
pub fn solve_x3c_bruteforce(x: &X3CInstance) -> Result<Option<Vec<usize>>, X3CError> {
    if x.triples.len() > MAX_BRUTE_TRIPLES {
        return Err(X3CError::TooLarge(x.triples.len()));
    }
    fn search(x: &X3CInstance, covered: u64, full: u64, chosen: &mut Vec<usize>) -> bool {
        if covered == full {
            return true;
        }
        let e = (!covered).trailing_zeros() as usize;
        for (i, t) in x.triples.iter().enumerate() {
            let mask = t.iter().fold(0u64, |m, &v| m | 1 << v);
            if mask >> e & 1 == 1 && mask & covered == 0 {
                chosen.push(i);
                if search(x, covered | mask, full, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    // 20 triples cover at most 60 elements, so the ground set fits a mask
    if x.ground_size > 3 * MAX_BRUTE_TRIPLES {
        return Ok(None);
    }
    let full = (1u64 << x.ground_size) - 1;
    let mut chosen = Vec::new();
    Ok(search(x, 0, full, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    }))
}
