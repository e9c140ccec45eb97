//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm) and a bounded check for small matching numbers.

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, stored as `(u, v)` with `u < v`
/// sorted by `u`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        self.edges.iter().all(|&(u, v)| {
            let ok = g.has_edge(u, v) && !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            ok
        })
    }
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
    stamp: Vec<u32>,
    round: u32,
    in_blossom: Vec<bool>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
            stamp: vec![0; n],
            round: 0,
            in_blossom: vec![false; n],
        }
    }

    fn touch(&mut self, v: usize) {
        if !self.in_tree[v] && self.parent[v] == NONE {
            self.touched.push(v);
        }
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.in_tree[v] = false;
        }
        self.queue.clear();
    }

    fn next_round(&mut self) -> u32 {
        self.round = self.round.wrapping_add(1);
        if self.round == 0 {
            self.stamp.fill(0);
            self.round = 1;
        }
        self.round
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        let r = self.next_round();
        loop {
            a = self.base[a];
            self.stamp[a] = r;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.stamp[b] == r {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, marked: &mut Vec<usize>) {
        while self.base[v] != b {
            for x in [self.base[v], self.base[self.mate[v]]] {
                if !self.in_blossom[x] {
                    self.in_blossom[x] = true;
                    marked.push(x);
                }
            }
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches an augmenting path from the free vertex `root`; returns its
    /// free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.touch(root);
        self.in_tree[root] = true;
        self.queue.push_back(root);
        let mut marked = Vec::new();
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.mark_path(v, cur, to, &mut marked);
                    self.mark_path(to, cur, v, &mut marked);
                    for i in 0..self.touched.len() {
                        let x = self.touched[i];
                        if self.in_blossom[self.base[x]] {
                            self.base[x] = cur;
                            if !self.in_tree[x] {
                                self.in_tree[x] = true;
                                self.queue.push_back(x);
                            }
                        }
                    }
                    for x in marked.drain(..) {
                        self.in_blossom[x] = false;
                    }
                } else if self.parent[to] == NONE {
                    self.touch(to);
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.touch(m);
                    self.in_tree[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// Maximum cardinality matching. A greedy pass seeds the matching, then each
/// free vertex is searched once in ascending id order.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut b = Blossom::new(g);
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(w) = g.neighbors(v).find(|&w| b.mate[w] == NONE) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if b.mate[v] == NONE {
            let end = b.find_path(v);
            if let Some(end) = end {
                b.augment(end);
            }
            b.reset();
        }
    }
    let edges = (0..n)
        .filter(|&v| b.mate[v] != NONE && v < b.mate[v])
        .map(|v| (v, b.mate[v]))
        .collect();
    Matching { edges }
}

/// `min(α(g), k + 1)` without running the blossom algorithm.
///
/// A greedy maximal matching either already has `k + 1` edges or its
/// endpoints form a vertex cover of at most `2k` vertices. Every matching
/// edge has an endpoint in the cover, so an exhaustive search assigns each
/// cover vertex either no partner or one neighbor. Keeping only `2k + 1`
/// outside neighbors per cover vertex loses nothing.
pub fn matching_size_at_most(g: &Graph, k: usize) -> usize {
    let n = g.n();
    let mut taken = vec![false; n];
    let mut cover = Vec::new();
    for (u, v) in g.edges() {
        if !taken[u] && !taken[v] {
            taken[u] = true;
            taken[v] = true;
            cover.push(u);
            cover.push(v);
            if cover.len() / 2 > k {
                return k + 1;
            }
        }
    }
    cover.sort_unstable();
    let in_cover = taken;
    let options: Vec<Vec<usize>> = cover
        .iter()
        .map(|&c| {
            let mut outside = 0;
            g.neighbors(c)
                .filter(|&w| {
                    if in_cover[w] {
                        w > c
                    } else {
                        outside += 1;
                        outside <= 2 * k + 1
                    }
                })
                .collect()
        })
        .collect();

    fn search(
        i: usize,
        cover: &[usize],
        options: &[Vec<usize>],
        used: &mut [bool],
        size: usize,
        cap: usize,
        best: &mut usize,
    ) {
        if *best >= cap {
            return;
        }
        *best = (*best).max(size);
        if i == cover.len() || size + (cover.len() - i) <= *best {
            return;
        }
        let c = cover[i];
        if !used[c] {
            for &w in &options[i] {
                if !used[w] {
                    used[c] = true;
                    used[w] = true;
                    search(i + 1, cover, options, used, size + 1, cap, best);
                    used[c] = false;
                    used[w] = false;
                }
            }
        }
        search(i + 1, cover, options, used, size, cap, best);
    }

    let mut best = 0;
    let mut used = vec![false; n];
    search(0, &cover, &options, &mut used, 0, k + 1, &mut best);
    best.min(k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn paths_and_cycles() {
        assert_eq!(maximum_matching(&graph(3, &[(0, 1), (1, 2)])).size(), 1);
        let p4 = maximum_matching(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        assert_eq!(p4.edges, vec![(0, 1), (2, 3)]);
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(maximum_matching(&c5).size(), 2);
    }

    #[test]
    fn blossom_needed() {
        // triangle 0-1-2 with pendants 3~0 and 4~1 and a tail 2-5;
        // greedy from 0 picks 0-1, leaving 3 and 4 stuck behind it
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 3);
        assert!(m.is_valid_in(&g));
        // two triangles joined by a path: odd cycles on both ends
        let g = graph(
            8,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7), (1, 7)],
        );
        assert_eq!(maximum_matching(&g).size(), 4);
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(matching_size_at_most(&Graph::empty(4), 2), 0);
        assert_eq!(matching_size_at_most(&graph(2, &[(0, 1)]), 2), 1);
        let three = graph(6, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(matching_size_at_most(&three, 2), 3);
        // star: greedy cover is {0, 1}, matching number 1
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(matching_size_at_most(&star, 3), 1);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(matching_size_at_most(&p4, 3), 2);
        assert_eq!(matching_size_at_most(&p4, 1), 2);
        // greedy stops at 0-1; the cover search finds 0-2 and 1-3
        let hook = graph(4, &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(matching_size_at_most(&hook, 3), 2);
    }
}
