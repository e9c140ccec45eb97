//! Corpora and brute-force references shared by the integration tests.
//! Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use split_steiner::graph::Graph;
use split_steiner::instance::SteinerInstance;

/// Adjacency bitmasks for graphs with at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect()
}

pub fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = set & set.wrapping_neg();
    loop {
        let grow = bits(seen).iter().fold(seen, |s, &v| s | (adj[v] & set));
        if grow == seen {
            return seen == set;
        }
        seen = grow;
    }
}

/// Minimum number of non-terminal vertices connecting `terminals`, by
/// scanning every subset of the non-terminals.
pub fn min_steiner(g: &Graph, terminals: &[usize]) -> usize {
    let adj = masks(g);
    let r = terminals.iter().fold(0u64, |m, &t| m | 1 << t);
    let free: Vec<usize> = (0..g.n()).filter(|v| r >> v & 1 == 0).collect();
    let mut best = usize::MAX;
    for sub in 0u64..1 << free.len() {
        let size = sub.count_ones() as usize;
        if size >= best {
            continue;
        }
        let s = bits(sub).iter().fold(r, |m, &i| m | 1 << free[i]);
        if connected(&adj, s) {
            best = size;
        }
    }
    best
}

pub fn is_clique(adj: &[u64], set: u64) -> bool {
    bits(set).iter().all(|&v| adj[v] & set == set & !(1 << v))
}

pub fn is_independent(adj: &[u64], set: u64) -> bool {
    bits(set).iter().all(|&v| adj[v] & set == 0)
}

/// Split by definition: some vertex subset is a clique whose complement is
/// independent.
pub fn is_split_brute(g: &Graph) -> bool {
    let adj = masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    (0..=all).any(|k| is_clique(&adj, k) && is_independent(&adj, all & !k))
}

/// Largest clique size.
pub fn clique_number(g: &Graph) -> usize {
    let adj = masks(g);
    (0u64..1 << g.n())
        .filter(|&k| is_clique(&adj, k))
        .map(|k| k.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// An induced `K_{1,r}` exists: a center with `r` pairwise non-adjacent
/// neighbors.
pub fn has_induced_star(g: &Graph, r: usize) -> bool {
    let adj = masks(g);
    (0..g.n()).any(|c| {
        let nb = bits(adj[c]);
        subsets_of_size(nb.len(), r).any(|pick| {
            let leaves = pick.iter().fold(0u64, |m, &i| m | 1 << nb[i]);
            is_independent(&adj, leaves)
        })
    })
}

pub fn subsets_of_size(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n)
        .filter(move |m| m.count_ones() as usize == r)
        .map(bits)
}

/// Maximum matching size by trying every edge subset (small graphs only).
pub fn max_matching_brute(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    fn go(i: usize, edges: &[(usize, usize)], used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let (u, v) = edges[i];
        let skip = go(i + 1, edges, used);
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            skip.max(1 + go(i + 1, edges, used | 1 << u | 1 << v))
        } else {
            skip
        }
    }
    go(0, &edges, 0)
}

/// Split graph with clique `0..k` and independent vertices `k..` whose
/// neighborhoods (bitmasks over the clique) are `nbhds`.
pub fn split_from_masks(k: usize, nbhds: &[u64]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    for (i, &m) in nbhds.iter().enumerate() {
        for c in bits(m) {
            edges.push((c, k + i));
        }
    }
    Graph::from_edges(k + nbhds.len(), edges).unwrap()
}

/// Every connected split graph on `n` vertices up to relabeling: clique
/// `0..k` plus a non-decreasing sequence of non-empty neighborhoods.
/// Some graphs appear more than once (different clique choices).
pub fn connected_split_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for k in 1..=n {
        let top = 1u64 << k;
        let mut seq = vec![1u64; n - k];
        loop {
            out.push(split_from_masks(k, &seq));
            // next non-decreasing sequence over 1..top
            let Some(i) = (0..seq.len()).rev().find(|&i| seq[i] + 1 < top) else {
                break;
            };
            seq[i] += 1;
            for j in i + 1..seq.len() {
                seq[j] = seq[i];
            }
        }
    }
    out
}

/// All graphs on `n <= 6` vertices (labeled).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|m| Graph::from_edges(n, bits(m).into_iter().map(|i| pairs[i])).unwrap())
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random connected split graph, vertex ids shuffled.
pub fn random_split(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let k = rng.gen_range(1..=n);
    let nbhds: Vec<u64> = (k..n)
        .map(|_| loop {
            let m = rng.gen_range(1u64..1 << k);
            let keep = rng.gen_range(1..=k.min(4));
            // bias toward small neighborhoods so that low levels show up
            let trimmed = bits(m).into_iter().take(keep).fold(0u64, |a, c| a | 1 << c);
            if trimmed != 0 {
                break trimmed;
            }
        })
        .collect();
    let g = split_from_masks(k, &nbhds);
    relabel(rng, &g)
}

pub fn relabel(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

pub fn random_terminals(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let p = rng.gen_range(0.1..0.9);
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn instance(g: Graph, r: Vec<usize>) -> SteinerInstance {
    SteinerInstance::new(g, r).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
