//! Split-graph recognition and the clique/independent partition.
//!
//! Recognition uses the degree-sequence criterion: with degrees sorted
//! non-increasingly and `m = max{i : d_i >= i - 1}`, a graph is split iff
//! `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, in which case the top `m`
//! vertices form a maximum clique. Among all maximum cliques that leave an
//! independent remainder, the lexicographically smallest vertex set is chosen.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Clique,
    Independent,
    Absent,
}

/// Partition of a split graph (or of a vertex subset of one, with inherited
/// roles) into a clique `C` and an independent set `I`.
///
/// Besides the two sides it stores the cross adjacency: for `v ∈ C` the
/// sorted `N^I(v)`, for `a ∈ I` the sorted `N(a)` (which lies inside `C`).
/// Clique-internal edges are implicit, so restrictions are cheap even when
/// the clique is large.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    role: Vec<Role>,
    clique: Vec<usize>,
    independent: Vec<usize>,
    cross: Vec<Vec<usize>>,
    delta_i: usize,
    v3: Vec<usize>,
}

impl SplitPartition {
    /// Assembles a partition from roles and cross adjacency. `cross` lists
    /// are sorted here; symmetry is the caller's responsibility.
    pub(crate) fn from_roles(role: Vec<Role>, mut cross: Vec<Vec<usize>>) -> Self {
        let mut clique = Vec::new();
        let mut independent = Vec::new();
        for (v, r) in role.iter().enumerate() {
            match r {
                Role::Clique => clique.push(v),
                Role::Independent => independent.push(v),
                Role::Absent => cross[v].clear(),
            }
        }
        for list in cross.iter_mut() {
            list.sort_unstable();
        }
        let delta_i = clique.iter().map(|&v| cross[v].len()).max().unwrap_or(0);
        let v3 = clique.iter().copied().filter(|&v| cross[v].len() == 3).collect();
        SplitPartition {
            role,
            clique,
            independent,
            cross,
            delta_i,
            v3,
        }
    }

    /// Partition with the given clique, reading cross edges from `g`.
    /// Only neighbor lists of independent vertices are scanned.
    pub fn with_clique(g: &Graph, clique: &[usize]) -> Self {
        let n = g.n();
        let mut role = vec![Role::Independent; n];
        for &c in clique {
            role[c] = Role::Clique;
        }
        let mut cross = vec![Vec::new(); n];
        for a in 0..n {
            if role[a] == Role::Independent {
                for c in g.neighbors(a) {
                    cross[a].push(c);
                    cross[c].push(a);
                }
            }
        }
        SplitPartition::from_roles(role, cross)
    }

    /// Size of the host id space (ids of absent vertices included).
    pub fn host_n(&self) -> usize {
        self.role.len()
    }

    pub fn role(&self, v: usize) -> Role {
        self.role[v]
    }

    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    /// Present vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.host_n())
            .filter(|&v| self.role[v] != Role::Absent)
            .collect()
    }

    pub fn delta_i(&self) -> usize {
        self.delta_i
    }

    pub fn v3(&self) -> &[usize] {
        &self.v3
    }

    pub fn is_clique(&self, v: usize) -> bool {
        self.role[v] == Role::Clique
    }

    pub fn is_independent(&self, v: usize) -> bool {
        self.role[v] == Role::Independent
    }

    /// `N^I(v)` for a clique vertex.
    pub fn independent_neighbors(&self, v: usize) -> &[usize] {
        debug_assert!(self.is_clique(v));
        &self.cross[v]
    }

    /// `N(a)` for an independent vertex (all of it lies in the clique).
    pub fn clique_neighbors(&self, a: usize) -> &[usize] {
        debug_assert!(self.is_independent(a));
        &self.cross[a]
    }

    /// `d^I(v)` for a clique vertex.
    pub fn i_degree(&self, v: usize) -> usize {
        self.cross[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        match (self.role[u], self.role[v]) {
            (Role::Clique, Role::Clique) => true,
            (Role::Clique, Role::Independent) => self.cross[u].binary_search(&v).is_ok(),
            (Role::Independent, Role::Clique) => self.cross[v].binary_search(&u).is_ok(),
            _ => false,
        }
    }

    /// Induced sub-partition on the vertices for which `keep` holds, with
    /// roles inherited (not recomputed).
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> SplitPartition {
        let mut role = self.role.clone();
        for (v, r) in role.iter_mut().enumerate() {
            if *r != Role::Absent && !keep(v) {
                *r = Role::Absent;
            }
        }
        let cross = self
            .cross
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if role[v] == Role::Absent {
                    Vec::new()
                } else {
                    list.iter().copied().filter(|&w| role[w] != Role::Absent).collect()
                }
            })
            .collect();
        SplitPartition::from_roles(role, cross)
    }

    /// Restriction that drops the vertices in `remove`.
    pub fn without(&self, remove: &[usize]) -> SplitPartition {
        let mut gone = vec![false; self.host_n()];
        for &v in remove {
            gone[v] = true;
        }
        self.restrict(|v| !gone[v])
    }

    /// No independent vertex is adjacent to every clique vertex.
    pub fn is_maximal(&self) -> bool {
        self.independent
            .iter()
            .all(|&a| self.cross[a].len() < self.clique.len())
    }

    /// Checks every partition invariant against `g` directly: sides cover
    /// `V` disjointly, `C` is complete, `I` is edgeless, `C` is maximal and
    /// the cached cross adjacency, `Δ^I` and `V_3` agree with `g`.
    pub fn verify_against(&self, g: &Graph) -> Result<(), String> {
        if self.host_n() != g.n() {
            return Err("vertex count mismatch".into());
        }
        if self.role.contains(&Role::Absent) {
            return Err("partition of a full graph has absent vertices".into());
        }
        for (i, &u) in self.clique.iter().enumerate() {
            for &v in &self.clique[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(format!("clique vertices {u} and {v} are not adjacent"));
                }
            }
        }
        for (i, &a) in self.independent.iter().enumerate() {
            for &b in &self.independent[i + 1..] {
                if g.has_edge(a, b) {
                    return Err(format!("independent vertices {a} and {b} are adjacent"));
                }
            }
        }
        for v in 0..g.n() {
            let expected: Vec<usize> = g
                .neighbors(v)
                .filter(|&w| self.role[w] != self.role[v])
                .collect();
            if expected != self.cross[v] {
                return Err(format!("cross adjacency of {v} disagrees with the graph"));
            }
        }
        if !self.is_maximal() {
            return Err("clique is not maximal".into());
        }
        let delta = self.clique.iter().map(|&v| g.neighbors(v).filter(|&w| self.is_independent(w)).count()).max().unwrap_or(0);
        if delta != self.delta_i {
            return Err("delta_i disagrees with the graph".into());
        }
        let v3: Vec<usize> = self
            .clique
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).filter(|&w| self.is_independent(w)).count() == 3)
            .collect();
        if v3 != self.v3 {
            return Err("v3 disagrees with the graph".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObstructionKind {
    #[serde(rename = "2K2")]
    TwoK2,
    C4,
    C5,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::TwoK2 => "2K2",
            ObstructionKind::C4 => "C4",
            ObstructionKind::C5 => "C5",
        })
    }
}

/// An induced 2K2, C4 or C5. For the cycles, `vertices` lists them in cycle
/// order; for 2K2 the two edges are `vertices[0..2]` and `vertices[2..4]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not split: induced {} on {:?}", .obstruction.kind, .obstruction.vertices)]
pub struct NotSplit {
    pub obstruction: Obstruction,
}

/// Recognizes a split graph and returns its canonical partition: a maximum
/// (hence maximal) clique, lexicographically smallest among those whose
/// complement is independent.
pub fn split_partition(g: &Graph) -> Result<SplitPartition, NotSplit> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let m = order
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &v)| g.degree(v) >= i)
        .map(|(i, _)| i + 1)
        .unwrap_or(0);
    let head: usize = order[..m].iter().map(|&v| g.degree(v)).sum();
    let tail: usize = order[m..].iter().map(|&v| g.degree(v)).sum();
    if head != m * m.saturating_sub(1) + tail {
        return Err(NotSplit {
            obstruction: find_obstruction(g).expect("non-split graph has an obstruction"),
        });
    }

    let mut in_clique = vec![false; n];
    for &v in &order[..m] {
        in_clique[v] = true;
    }
    let mut clique_size = m;
    // Promote independent vertices adjacent to the whole clique. Two such
    // vertices are never adjacent, so promoting one can disqualify the other.
    for v in 0..n {
        if !in_clique[v] && g.degree(v) == clique_size {
            in_clique[v] = true;
            clique_size += 1;
        }
    }

    // Maximum cliques other than the current one swap a single clique vertex
    // `c` (with no independent neighbors) for an independent vertex `x`
    // adjacent to everything else in the clique.
    let mut has_i_neighbor = vec![false; n];
    for a in (0..n).filter(|&a| !in_clique[a]) {
        for c in g.neighbors(a) {
            has_i_neighbor[c] = true;
        }
    }
    let mut best: Option<(usize, usize)> = None;
    for x in (0..n).filter(|&x| !in_clique[x]) {
        if clique_size == 0 || g.degree(x) + 1 != clique_size {
            continue;
        }
        let missing = missing_clique_vertex(g, x, &in_clique);
        if has_i_neighbor[missing] {
            continue;
        }
        let cand = Some((missing, x));
        if compare_swaps(cand, best) == Ordering::Less {
            best = cand;
        }
    }
    if let Some((c, x)) = best {
        if compare_swaps(best, None) == Ordering::Less {
            in_clique[c] = false;
            in_clique[x] = true;
        }
    }
    let clique: Vec<usize> = (0..n).filter(|&v| in_clique[v]).collect();
    Ok(SplitPartition::with_clique(g, &clique))
}

fn missing_clique_vertex(g: &Graph, x: usize, in_clique: &[bool]) -> usize {
    let mut nbrs = g.neighbor_ids(x).iter().map(|&w| w as usize).peekable();
    for c in (0..g.n()).filter(|&c| in_clique[c]) {
        if nbrs.peek() == Some(&c) {
            nbrs.next();
        } else {
            return c;
        }
    }
    unreachable!("vertex of degree |C|-1 misses one clique vertex")
}

/// Lexicographic order of the clique sets `K - c + x` described by optional
/// swaps `(c, x)`; `None` is `K` itself.
fn compare_swaps(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> Ordering {
    let (ra, xa) = a.map_or((None, None), |(c, x)| (Some(c), Some(x)));
    let (rb, xb) = b.map_or((None, None), |(c, x)| (Some(c), Some(x)));
    // Elements only in A: its added vertex, and the vertex B removed.
    let only_a = [xa.filter(|_| xa != xb), rb.filter(|_| rb != ra)];
    let only_b = [xb.filter(|_| xb != xa), ra.filter(|_| ra != rb)];
    let min_a = only_a.iter().flatten().min();
    let min_b = only_b.iter().flatten().min();
    match (min_a, min_b) {
        (None, None) => Ordering::Equal,
        (Some(p), Some(q)) => p.cmp(q),
        // Equal-size sets always differ on both sides.
        _ => unreachable!("clique candidates have equal size"),
    }
}

/// First induced 2K2, C4 or C5 found, scanning in ascending id order.
pub fn find_obstruction(g: &Graph) -> Option<Obstruction> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if c == a || c == b || d == a || d == b {
                continue;
            }
            let ac = g.has_edge(a, c);
            let ad = g.has_edge(a, d);
            let bc = g.has_edge(b, c);
            let bd = g.has_edge(b, d);
            let (kind, vertices) = match (ac, ad, bc, bd) {
                (false, false, false, false) => (ObstructionKind::TwoK2, vec![a, b, c, d]),
                (true, false, false, true) => (ObstructionKind::C4, vec![a, b, d, c]),
                (false, true, true, false) => (ObstructionKind::C4, vec![a, b, c, d]),
                _ => continue,
            };
            return Some(Obstruction { kind, vertices });
        }
    }
    for a in 0..g.n() {
        for b in g.neighbors(a) {
            for c in g.neighbors(b) {
                if c == a || g.has_edge(a, c) {
                    continue;
                }
                for d in g.neighbors(c) {
                    if d == a || d == b || g.has_edge(a, d) || g.has_edge(b, d) {
                        continue;
                    }
                    for e in g.neighbors(d) {
                        if e != b
                            && e != c
                            && g.has_edge(a, e)
                            && !g.has_edge(b, e)
                            && !g.has_edge(c, e)
                        {
                            return Some(Obstruction {
                                kind: ObstructionKind::C5,
                                vertices: vec![a, b, c, d, e],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
