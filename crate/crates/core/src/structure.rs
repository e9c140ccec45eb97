//! Forbidden induced stars in split graphs, the claw-free and K_{1,4}-free
//! characterizations, and the labeled graph built over the independent side.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::split::SplitPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("star size must be at least 3, got {0}")]
    StarTooSmall(usize),
    #[error("expected a 3-split partition, found delta_i = {0}")]
    NotThreeSplit(usize),
    #[error("labeled graph needs delta_i <= 2, found {0}")]
    LevelTooHigh(usize),
    #[error("label {0} is shared by two edges")]
    LabelCollision(usize),
    #[error("edge {0}-{1} is not in the labeled graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is not an independent vertex with a clique neighbor")]
    NoNeighbor(usize),
}

/// An induced `K_{1,r}`: the center and its `r` pairwise non-adjacent leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Looks for an induced `K_{1,r}`. Centers lie in `C`; a star at `v` either
/// has `r` independent leaves, or `r-1` independent leaves plus one clique
/// vertex `w` non-adjacent to all of them. Centers are scanned in ascending
/// order and the first witness is returned.
pub fn find_induced_star(
    sp: &SplitPartition,
    r: usize,
) -> Result<Option<StarWitness>, StructureError> {
    if r < 3 {
        return Err(StructureError::StarTooSmall(r));
    }
    let mut common = vec![0usize; sp.host_n()];
    let mut touched = Vec::new();
    for &v in sp.clique() {
        let nbrs = sp.independent_neighbors(v);
        if nbrs.len() >= r {
            return Ok(Some(StarWitness {
                center: v,
                leaves: nbrs[..r].to_vec(),
            }));
        }
        if nbrs.len() + 1 < r || sp.clique().len() < 2 {
            continue;
        }
        // common[w] = |N^I(v) ∩ N(w)| for clique vertices w
        for &a in nbrs {
            for &w in sp.clique_neighbors(a) {
                if common[w] == 0 {
                    touched.push(w);
                }
                common[w] += 1;
            }
        }
        let found = sp
            .clique()
            .iter()
            .copied()
            .find(|&w| w != v && nbrs.len() - common[w] >= r - 1);
        let witness = found.map(|w| {
            let mut leaves: Vec<usize> = nbrs
                .iter()
                .copied()
                .filter(|&a| !sp.adjacent(a, w))
                .take(r - 1)
                .collect();
            leaves.push(w);
            StarWitness { center: v, leaves }
        });
        for w in touched.drain(..) {
            common[w] = 0;
        }
        if witness.is_some() {
            return Ok(witness);
        }
    }
    Ok(None)
}

/// Number of clique vertices adjacent to at least one vertex of `set ⊆ I`.
fn clique_coverage(sp: &SplitPartition, set: &[usize], mark: &mut [bool]) -> usize {
    let mut hit = Vec::new();
    for &a in set {
        for &w in sp.clique_neighbors(a) {
            if !mark[w] {
                mark[w] = true;
                hit.push(w);
            }
        }
    }
    for &w in &hit {
        mark[w] = false;
    }
    hit.len()
}

/// Claw-freeness through the partition: `Δ^I <= 1`, or `Δ^I = 2` and every
/// clique vertex shares an independent neighbor with every clique vertex of
/// independent degree 2.
pub fn check_claw_free_characterization(sp: &SplitPartition) -> bool {
    match sp.delta_i() {
        0 | 1 => true,
        2 => {
            let mut mark = vec![false; sp.host_n()];
            sp.clique()
                .iter()
                .filter(|&&u| sp.i_degree(u) == 2)
                .all(|&u| clique_coverage(sp, sp.independent_neighbors(u), &mut mark) == sp.clique().len())
        }
        _ => false,
    }
}

/// K_{1,4}-freeness of a 3-split partition: every `u ∈ V_3` shares an
/// independent neighbor with every other clique vertex.
pub fn check_k14_free_3split(sp: &SplitPartition) -> Result<bool, StructureError> {
    if sp.delta_i() != 3 {
        return Err(StructureError::NotThreeSplit(sp.delta_i()));
    }
    let mut mark = vec![false; sp.host_n()];
    Ok(sp
        .v3()
        .iter()
        .all(|&u| clique_coverage(sp, sp.independent_neighbors(u), &mut mark) == sp.clique().len()))
}

/// K_{1,4}-freeness for any partition: levels up to 2 are always free.
pub fn is_k14_free(sp: &SplitPartition) -> bool {
    match sp.delta_i() {
        0..=2 => true,
        3 => check_k14_free_3split(sp).unwrap_or(false),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LabeledEdge {
    pub a: usize,
    pub b: usize,
    pub label: usize,
}

/// Graph on independent vertices with an edge per pair sharing a clique
/// neighbor, labeled by the smallest such neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    vertices: Vec<usize>,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edges with `a < b`, sorted by `(a, b)`.
    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&LabeledEdge> {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.a, e.b).cmp(&(a, b)))
            .ok()
            .map(|i| &self.edges[i])
    }

    /// Plain graph on positions `0..vertices.len()`.
    pub fn to_graph(&self) -> Graph {
        let pos = |v: usize| self.vertices.binary_search(&v).expect("edge endpoint is a vertex");
        Graph::from_edges(
            self.vertices.len(),
            self.edges.iter().map(|e| (pos(e.a), pos(e.b))),
        )
        .expect("labeled graph is simple")
    }
}

pub fn build_labeled_graph(sp: &SplitPartition) -> Result<LabeledGraph, StructureError> {
    if sp.delta_i() > 2 {
        return Err(StructureError::LevelTooHigh(sp.delta_i()));
    }
    labeled_graph_avoiding(sp, &[])
}

/// Labeled graph of the sub-partition without the vertices flagged in
/// `removed` (an empty slice removes nothing), computed without copying the
/// partition.
pub(crate) fn labeled_graph_avoiding(
    sp: &SplitPartition,
    removed: &[bool],
) -> Result<LabeledGraph, StructureError> {
    let gone = |v: usize| removed.get(v).copied().unwrap_or(false);
    let mut edges = Vec::new();
    for &c in sp.clique() {
        if gone(c) {
            continue;
        }
        let mut nb = sp.independent_neighbors(c).iter().copied().filter(|&a| !gone(a));
        match (nb.next(), nb.next(), nb.next()) {
            (Some(a), Some(b), None) => edges.push(LabeledEdge { a, b, label: c }),
            (Some(_), Some(_), Some(_)) => {
                return Err(StructureError::LevelTooHigh(3 + nb.count()))
            }
            _ => {}
        }
    }
    edges.sort_unstable();
    edges.dedup_by(|later, first| (later.a, later.b) == (first.a, first.b));
    Ok(LabeledGraph {
        vertices: sp.independent().iter().copied().filter(|&a| !gone(a)).collect(),
        edges,
    })
}

/// The labels of `es`, one clique vertex per edge. Labels must be distinct.
pub fn corresponding_vertex_set(
    m: &LabeledGraph,
    es: &[LabeledEdge],
) -> Result<Vec<usize>, StructureError> {
    let mut labels = Vec::with_capacity(es.len());
    for e in es {
        if m.edge(e.a, e.b) != Some(e) {
            return Err(StructureError::NotAnEdge(e.a, e.b));
        }
        labels.push(e.label);
    }
    labels.sort_unstable();
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(StructureError::LabelCollision(w[0]));
    }
    Ok(labels)
}

/// One clique neighbor (the smallest id) per vertex of `vs ⊆ I`,
/// deduplicated and sorted.
pub fn corresponding_clique_set(
    sp: &SplitPartition,
    vs: &[usize],
) -> Result<Vec<usize>, StructureError> {
    let mut out = Vec::with_capacity(vs.len());
    for &u in vs {
        if !sp.is_independent(u) {
            return Err(StructureError::NoNeighbor(u));
        }
        let &w = sp
            .clique_neighbors(u)
            .first()
            .ok_or(StructureError::NoNeighbor(u))?;
        out.push(w);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
