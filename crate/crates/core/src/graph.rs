//! Undirected simple graphs in compressed adjacency form.
//!
//! Vertex ids are `0..n`. Neighbor lists are stored sorted so that adjacency
//! queries are a binary search and traversals are deterministic.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {0} vertices, more than the supported maximum")]
    TooLarge(usize),
    #[error("vertex set is not connected")]
    Disconnected,
}

/// An undirected simple graph.
///
/// Invariants: no self-loops, no parallel edges, symmetric adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; the same unordered pair twice is rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * pairs.len()];
        // Sorted pairs fill each list in ascending order: for a vertex x the
        // smaller partners (pairs (y, x)) come before the larger ones.
        for &(a, b) in &pairs {
            targets[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for &(a, b) in &pairs {
            targets[fill[a as usize]] = b;
            fill[a as usize] += 1;
        }
        Ok(Graph { offsets, targets })
    }

    /// Builds a split graph from its clique and its clique/independent cross
    /// edges without materializing an edge list. `cross[v]` must be sorted;
    /// for a clique vertex it lists the independent neighbors, for an
    /// independent vertex the clique neighbors. Callers guarantee symmetry.
    pub(crate) fn from_split_parts(in_clique: &[bool], cross: &[Vec<usize>]) -> Self {
        let n = in_clique.len();
        debug_assert_eq!(cross.len(), n);
        let clique: Vec<u32> = (0..n).filter(|&v| in_clique[v]).map(|v| v as u32).collect();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for v in 0..n {
            let d = if in_clique[v] {
                clique.len() - 1 + cross[v].len()
            } else {
                cross[v].len()
            };
            offsets.push(offsets[v] + d);
        }
        let mut targets = Vec::with_capacity(offsets[n]);
        for v in 0..n {
            if in_clique[v] {
                let mut it = cross[v].iter().map(|&x| x as u32).peekable();
                for &c in &clique {
                    if c as usize == v {
                        continue;
                    }
                    while let Some(&x) = it.peek() {
                        if x < c {
                            targets.push(x);
                            it.next();
                        } else {
                            break;
                        }
                    }
                    targets.push(c);
                }
                targets.extend(it);
            } else {
                targets.extend(cross[v].iter().map(|&x| x as u32));
            }
        }
        debug_assert_eq!(targets.len(), offsets[n]);
        Graph { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbor_ids(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbor_ids(v).iter().map(|&w| w as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n() || v >= self.n() {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbor_ids(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbor_ids(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced on `subset`, relabeled to `0..subset.len()` in the
    /// order given. Returns the graph and the new-to-old id map.
    pub fn induced_subgraph(&self, subset: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in subset.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in subset.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(subset.len(), edges).expect("induced subgraph of a simple graph");
        (g, subset.to_vec())
    }

    pub fn is_connected_graph(&self) -> bool {
        let all: Vec<usize> = (0..self.n()).collect();
        is_connected(self, &all)
    }
}

fn membership(g: &Graph, subset: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; g.n()];
    for &v in subset {
        inside[v] = true;
    }
    inside
}

/// True iff the subgraph induced on `subset` is connected. The empty set and
/// singletons are connected.
pub fn is_connected(g: &Graph, subset: &[usize]) -> bool {
    let Some(&root) = subset.iter().min() else {
        return true;
    };
    let inside = membership(g, subset);
    let target = inside.iter().filter(|&&b| b).count();
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == target
}

/// Breadth-first spanning tree of the subgraph induced on `subset`, rooted at
/// the smallest id and exploring neighbors in ascending order. Edges are
/// reported as `(parent, child)` in discovery order.
pub fn bfs_tree(g: &Graph, subset: &[usize]) -> Result<Vec<(usize, usize)>, GraphError> {
    let Some(&root) = subset.iter().min() else {
        return Ok(Vec::new());
    };
    let inside = membership(g, subset);
    let target = inside.iter().filter(|&&b| b).count();
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut tree = Vec::with_capacity(target.saturating_sub(1));
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                tree.push((v, w));
                queue.push_back(w);
            }
        }
    }
    if tree.len() + 1 != target {
        return Err(GraphError::Disconnected);
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (4, 2), (1, 4)]).unwrap();
        assert_eq!(g.m(), 5);
        for v in 0..g.n() {
            assert!(g.neighbor_ids(v).windows(2).all(|w| w[0] < w[1]));
            for w in g.neighbors(v) {
                assert!(g.has_edge(w, v));
            }
        }
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.m());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 3), (1, 4), (2, 4)]);
    }

    #[test]
    fn split_parts_match_edge_list_construction() {
        // clique {1, 3, 4}; independent 0 ~ {1, 4}, 2 ~ {3}
        let in_clique = [false, true, false, true, true];
        let cross = vec![vec![1, 4], vec![0], vec![3], vec![2], vec![0]];
        let g = Graph::from_split_parts(&in_clique, &cross);
        let h = Graph::from_edges(5, [(1, 3), (1, 4), (3, 4), (0, 1), (0, 4), (2, 3)]).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn connectivity_of_subsets() {
        let g = p3();
        assert!(!is_connected(&g, &[0, 2]));
        assert!(is_connected(&g, &[0, 1, 2]));
        assert!(is_connected(&g, &[]));
        assert!(is_connected(&g, &[2]));
    }

    #[test]
    fn bfs_tree_on_path_and_triangle() {
        assert_eq!(bfs_tree(&p3(), &[0, 1, 2]).unwrap(), vec![(0, 1), (1, 2)]);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(bfs_tree(&tri, &[2, 1, 0]).unwrap(), vec![(0, 1), (0, 2)]);
        assert_eq!(bfs_tree(&p3(), &[0, 2]), Err(GraphError::Disconnected));
        assert!(bfs_tree(&p3(), &[]).unwrap().is_empty());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = p3();
        let (h, map) = g.induced_subgraph(&[2, 1]);
        assert_eq!(map, vec![2, 1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
