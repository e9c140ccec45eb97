use thiserror::Error;

use crate::graph::{bfs_tree, is_connected, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("terminal {terminal} out of range for a graph with {n} vertices")]
    TerminalOutOfRange { terminal: usize, n: usize },
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(usize),
    #[error("graph is not connected")]
    Disconnected,
}

/// A connected graph together with a terminal set `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerInstance {
    graph: Graph,
    terminals: Vec<usize>,
}

impl SteinerInstance {
    /// Validates `terminals ⊆ V` (no repeats) and that the graph is connected.
    /// Terminals are stored sorted.
    pub fn new(graph: Graph, mut terminals: Vec<usize>) -> Result<Self, InstanceError> {
        let n = graph.n();
        if let Some(&t) = terminals.iter().find(|&&t| t >= n) {
            return Err(InstanceError::TerminalOutOfRange { terminal: t, n });
        }
        terminals.sort_unstable();
        if let Some(w) = terminals.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::DuplicateTerminal(w[0]));
        }
        if !graph.is_connected_graph() {
            return Err(InstanceError::Disconnected);
        }
        Ok(SteinerInstance { graph, terminals })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    pub fn into_parts(self) -> (Graph, Vec<usize>) {
        (self.graph, self.terminals)
    }
}

/// A Steiner set `S` (disjoint from `R`) and a spanning tree of `G[S ∪ R]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerResult {
    pub steiner_set: Vec<usize>,
    pub tree_edges: Vec<(usize, usize)>,
    pub optimal: bool,
}

impl SteinerResult {
    /// Builds the result for Steiner set `steiner` by running BFS on
    /// `G[S ∪ R]` in the instance graph.
    pub fn from_steiner_set(
        inst: &SteinerInstance,
        mut steiner: Vec<usize>,
        optimal: bool,
    ) -> Result<Self, GraphError> {
        steiner.sort_unstable();
        steiner.dedup();
        let mut span = steiner.clone();
        span.extend_from_slice(inst.terminals());
        let tree_edges = bfs_tree(inst.graph(), &span)?;
        Ok(SteinerResult {
            steiner_set: steiner,
            tree_edges,
            optimal,
        })
    }

    pub fn size(&self) -> usize {
        self.steiner_set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("candidate Steiner set contains terminal {0}")]
pub struct OverlapsTerminals(pub usize);

/// Certificate check: `s ∩ R = ∅` is required, and the answer is whether
/// `G[s ∪ R]` is connected.
pub fn verify_solution(inst: &SteinerInstance, s: &[usize]) -> Result<bool, OverlapsTerminals> {
    if let Some(&v) = s.iter().find(|&&v| inst.is_terminal(v)) {
        return Err(OverlapsTerminals(v));
    }
    if s.iter().any(|&v| v >= inst.graph().n()) {
        return Ok(false);
    }
    let mut span = s.to_vec();
    span.extend_from_slice(inst.terminals());
    Ok(is_connected(inst.graph(), &span))
}
