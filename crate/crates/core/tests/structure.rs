mod common;

use common::*;
use split_steiner::graph::Graph;
use split_steiner::matching::{matching_size_at_most, maximum_matching};
use split_steiner::split::{find_obstruction, split_partition, ObstructionKind, SplitPartition};
use split_steiner::structure::{
    build_labeled_graph, check_claw_free_characterization, check_k14_free_3split,
    find_induced_star, is_k14_free, StarWitness,
};

fn induces(g: &Graph, kind: ObstructionKind, vs: &[usize]) -> bool {
    let e = |i: usize, j: usize| g.has_edge(vs[i], vs[j]);
    let pairs = |len: usize| (0..len).flat_map(move |i| (i + 1..len).map(move |j| (i, j)));
    match kind {
        ObstructionKind::TwoK2 => {
            vs.len() == 4 && pairs(4).all(|(i, j)| e(i, j) == ((i, j) == (0, 1) || (i, j) == (2, 3)))
        }
        ObstructionKind::C4 | ObstructionKind::C5 => {
            let len = vs.len();
            let want = if kind == ObstructionKind::C4 { 4 } else { 5 };
            len == want && pairs(len).all(|(i, j)| e(i, j) == (j == i + 1 || (i == 0 && j == len - 1)))
        }
    }
}

fn witness_ok(g: &Graph, w: &StarWitness, r: usize) -> bool {
    let adj = masks(g);
    let leaves = w.leaves.iter().fold(0u64, |m, &v| m | 1 << v);
    w.leaves.len() == r
        && leaves.count_ones() as usize == r
        && adj[w.center] & leaves == leaves
        && is_independent(&adj, leaves)
}

fn check_split_graph(g: &Graph, sp: &SplitPartition) {
    sp.verify_against(g).unwrap();
    for r in 3..=5 {
        let w = find_induced_star(sp, r).unwrap();
        assert_eq!(w.is_some(), has_induced_star(g, r), "r = {r} on {:?}", g.edges().collect::<Vec<_>>());
        if let Some(w) = w {
            assert!(witness_ok(g, &w, r), "bad witness {w:?}");
        }
    }
    let claw_free = !has_induced_star(g, 3);
    assert_eq!(check_claw_free_characterization(sp), claw_free);
    if claw_free && sp.delta_i() == 2 {
        assert!(sp.independent().len() <= 3);
    }
    let k14_free = !has_induced_star(g, 4);
    assert_eq!(is_k14_free(sp), k14_free);
    if sp.delta_i() == 3 {
        assert_eq!(check_k14_free_3split(sp), Ok(k14_free));
    } else {
        assert!(check_k14_free_3split(sp).is_err());
    }
}

#[test]
fn recognition_on_all_small_graphs() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let split = is_split_brute(&g);
            match split_partition(&g) {
                Ok(sp) => {
                    assert!(split);
                    assert_eq!(sp.clique().len(), clique_number(&g));
                    assert!(sp.is_maximal());
                    check_split_graph(&g, &sp);
                }
                Err(e) => {
                    assert!(!split);
                    assert!(induces(&g, e.obstruction.kind, &e.obstruction.vertices));
                }
            }
            assert_eq!(find_obstruction(&g).is_none(), split);
        }
    }
}

#[test]
fn recognition_on_random_graphs() {
    let mut rng = rng(21);
    for i in 0..3000 {
        let n = 7 + i % 2;
        let g = if i % 3 == 0 {
            random_split(&mut rng, n)
        } else {
            random_graph(&mut rng, n, 0.2 + 0.6 * (i % 7) as f64 / 7.0)
        };
        let split = is_split_brute(&g);
        match split_partition(&g) {
            Ok(sp) => {
                assert!(split);
                assert_eq!(sp.clique().len(), clique_number(&g));
                sp.verify_against(&g).unwrap();
            }
            Err(e) => {
                assert!(!split);
                assert!(induces(&g, e.obstruction.kind, &e.obstruction.vertices));
            }
        }
    }
}

#[test]
fn star_characterizations_on_exhaustive_corpus() {
    let mut three_split = 0;
    for n in 1..=9 {
        for g in connected_split_graphs(n) {
            let sp = split_partition(&g).unwrap();
            three_split += usize::from(sp.delta_i() == 3);
            check_split_graph(&g, &sp);
        }
    }
    assert!(three_split > 1000);
}

#[test]
fn star_characterizations_on_random_graphs() {
    let mut rng = rng(22);
    for i in 0..1000 {
        let n = 8 + i % 7;
        let g = random_split(&mut rng, n);
        let sp = split_partition(&g).unwrap();
        check_split_graph(&g, &sp);
    }
}

#[test]
fn maximum_matching_agrees_with_brute_force() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let m = maximum_matching(&g);
            assert!(m.is_valid_in(&g));
            assert_eq!(m.size(), max_matching_brute(&g));
        }
    }
    let mut rng = rng(23);
    for i in 0..2000 {
        let n = 7 + i % 6;
        let g = random_graph(&mut rng, n, 0.1 + 0.5 * (i % 5) as f64 / 5.0);
        let m = maximum_matching(&g);
        let best = max_matching_brute(&g);
        assert!(m.is_valid_in(&g));
        assert_eq!(m.size(), best, "{:?}", g.edges().collect::<Vec<_>>());
        for k in 0..=best + 1 {
            assert_eq!(matching_size_at_most(&g, k), best.min(k + 1));
        }
    }
}

#[test]
fn labeled_graph_edges_come_from_degree_two_clique_vertices() {
    let mut rng = rng(24);
    for _ in 0..500 {
        let g = random_split(&mut rng, 10);
        let sp = split_partition(&g).unwrap();
        let Ok(m) = build_labeled_graph(&sp) else {
            assert!(sp.delta_i() >= 3);
            continue;
        };
        for e in m.edges() {
            assert_eq!(sp.i_degree(e.label), 2);
            let mut nb = sp.independent_neighbors(e.label).to_vec();
            nb.sort_unstable();
            let mut ab = vec![e.a, e.b];
            ab.sort_unstable();
            assert_eq!(nb, ab);
            // smallest label among clique vertices with this pair
            assert!(sp
                .clique()
                .iter()
                .filter(|&&c| sp.i_degree(c) == 2 && sp.adjacent(c, e.a) && sp.adjacent(c, e.b))
                .all(|&c| c >= e.label));
        }
        assert_eq!(maximum_matching(&m.to_graph()).size(), max_matching_brute(&m.to_graph()));
    }
}
