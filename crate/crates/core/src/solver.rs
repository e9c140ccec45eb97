//! Minimum Steiner sets on K_{1,4}-free split graphs.
//!
//! The pipeline partitions the graph, prunes vertices whose role in an
//! optimum is forced, and dispatches on the independent degree `Δ^I` of what
//! remains. Every returned set lies in the clique.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{verify_solution, SteinerInstance, SteinerResult};
use crate::matching::maximum_matching;
use crate::oracle::{brute_force_steiner, OracleError, Universe};
use crate::split::{split_partition, NotSplit, SplitPartition};
use crate::structure::{
    check_claw_free_characterization, check_k14_free_3split, corresponding_clique_set,
    corresponding_vertex_set, find_induced_star, labeled_graph_avoiding, LabeledEdge,
    LabeledGraph, StarWitness, StructureError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "empty")]
    Empty,
    #[serde(rename = "1-split")]
    OneSplit,
    #[serde(rename = "2-split")]
    TwoSplit,
    #[serde(rename = "3-split")]
    ThreeSplit,
    #[serde(rename = "claw-free")]
    ClawFree,
    #[serde(rename = "exact-fallback")]
    ExactFallback,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Empty => "empty",
            Regime::OneSplit => "1-split",
            Regime::TwoSplit => "2-split",
            Regime::ThreeSplit => "3-split",
            Regime::ClawFree => "claw-free",
            Regime::ExactFallback => "exact-fallback",
        }
    }
}

/// Which path produced the answer, with the matching numbers it saw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveTrace {
    pub regime: Regime,
    pub alpha_m: Option<usize>,
    pub alpha_m2: Option<usize>,
    pub chosen_v3_vertex: Option<usize>,
}

impl SolveTrace {
    fn plain(regime: Regime) -> Self {
        SolveTrace {
            regime,
            alpha_m: None,
            alpha_m2: None,
            chosen_v3_vertex: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Solve graphs that contain an induced `K_{1,4}` with the oracle.
    pub exact_fallback: bool,
    /// Largest `|C ∖ R|` the fallback accepts.
    pub fallback_budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            exact_fallback: false,
            fallback_budget: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    NotSplit(#[from] NotSplit),
    #[error(
        "graph contains an induced K_1,4 centered at {} with leaves {:?}; \
         the problem is NP-hard here (use the exact fallback for small instances)",
        witness.center, witness.leaves
    )]
    NotK14Free { witness: StarWitness },
    #[error("exact fallback needs |C \\ R| <= {budget}, found {size}")]
    FallbackTooLarge {
        witness: StarWitness,
        size: usize,
        budget: usize,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<StructureError> for SolveError {
    fn from(e: StructureError) -> Self {
        SolveError::Precondition(e.to_string())
    }
}

/// The instance left after pruning, plus what was removed on the way.
///
/// `reduced` uses host ids. Its independent side is exactly the remaining
/// terminal set and its clique holds no terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrunedInstance {
    pub reduced: SplitPartition,
    pub terminals: Vec<usize>,
    /// Non-terminal independent vertices.
    pub removed_s1: Vec<usize>,
    /// Non-terminal clique vertices without a terminal independent neighbor.
    pub removed_s2: Vec<usize>,
    /// Terminal clique vertices together with their independent neighbors.
    pub removed_s3: Vec<usize>,
    /// Clique vertices left without independent neighbors by later rounds.
    pub removed_later: Vec<usize>,
    /// Terminals dropped because they saw the whole remaining clique.
    pub promoted: Vec<usize>,
    pub clique_terminal_anchor: Option<usize>,
    /// Smallest clique vertex at the last promotion; adjacent to every
    /// promoted terminal.
    pub promotion_anchor: Option<usize>,
}

/// Removes the forced parts of the instance, then keeps dropping clique
/// vertices without independent neighbors and terminals adjacent to the
/// entire clique until neither applies, so the reduced clique is maximal.
pub fn prune(inst: &SteinerInstance, sp: &SplitPartition) -> PrunedInstance {
    let n = sp.host_n();
    let is_terminal = |v: usize| inst.is_terminal(v);
    let removed_s1: Vec<usize> = sp
        .independent()
        .iter()
        .copied()
        .filter(|&a| !is_terminal(a))
        .collect();
    let removed_s2: Vec<usize> = sp
        .clique()
        .iter()
        .copied()
        .filter(|&c| !is_terminal(c))
        .filter(|&c| !sp.independent_neighbors(c).iter().any(|&a| is_terminal(a)))
        .collect();
    let mut in_s3 = vec![false; n];
    let mut clique_terminal_anchor = None;
    for &c in sp.clique().iter().filter(|&&c| is_terminal(c)) {
        clique_terminal_anchor.get_or_insert(c);
        in_s3[c] = true;
        for &a in sp.independent_neighbors(c) {
            in_s3[a] = true;
        }
    }
    let removed_s3: Vec<usize> = (0..n).filter(|&v| in_s3[v]).collect();

    let mut gone = in_s3;
    for &v in removed_s1.iter().chain(&removed_s2) {
        gone[v] = true;
    }
    let mut reduced = sp.restrict(|v| !gone[v]);

    let mut removed_later = Vec::new();
    let mut promoted = Vec::new();
    let mut promotion_anchor = None;
    loop {
        // idle clique vertices go first so that promotions are judged
        // against the clique that remains
        let idle: Vec<usize> = reduced
            .clique()
            .iter()
            .copied()
            .filter(|&c| reduced.i_degree(c) == 0)
            .collect();
        if !idle.is_empty() {
            reduced = reduced.without(&idle);
            removed_later.extend(idle);
            continue;
        }
        let Some(&c0) = reduced.clique().first() else {
            break;
        };
        let k = reduced.clique().len();
        let full: Vec<usize> = reduced
            .independent()
            .iter()
            .copied()
            .filter(|&a| reduced.clique_neighbors(a).len() == k)
            .collect();
        if full.is_empty() {
            break;
        }
        promotion_anchor = Some(c0);
        reduced = reduced.without(&full);
        promoted.extend(full);
    }
    removed_later.sort_unstable();
    promoted.sort_unstable();

    PrunedInstance {
        terminals: reduced.independent().to_vec(),
        reduced,
        removed_s1,
        removed_s2,
        removed_s3,
        removed_later,
        promoted,
        clique_terminal_anchor,
        promotion_anchor,
    }
}

/// One clique neighbor per terminal.
pub fn solve_1split(pi: &PrunedInstance) -> Result<Vec<usize>, SolveError> {
    let sp = &pi.reduced;
    if sp.delta_i() != 1 {
        return Err(SolveError::Precondition(format!(
            "1-split solver needs delta_i = 1, found {}",
            sp.delta_i()
        )));
    }
    Ok(corresponding_clique_set(sp, sp.independent())?)
}

/// Claw-free reduced instances: `Δ^I = 1` needs one vertex per terminal;
/// with `Δ^I = 2` a vertex seeing two terminals, plus one neighbor of the
/// third terminal if there is one.
pub fn solve_claw_free(pi: &PrunedInstance) -> Result<Vec<usize>, SolveError> {
    let sp = &pi.reduced;
    match sp.delta_i() {
        1 => solve_1split(pi),
        2 if check_claw_free_characterization(sp) => {
            let x = *sp
                .clique()
                .iter()
                .find(|&&c| sp.i_degree(c) == 2)
                .expect("delta_i = 2 has a witness");
            let seen = sp.independent_neighbors(x);
            let rest: Vec<usize> = sp
                .independent()
                .iter()
                .copied()
                .filter(|a| !seen.contains(a))
                .collect();
            if rest.len() > 1 {
                return Err(SolveError::Precondition(format!(
                    "claw-free 2-split instance with {} terminals",
                    sp.independent().len()
                )));
            }
            let mut s = vec![x];
            s.extend(corresponding_clique_set(sp, &rest)?);
            s.sort_unstable();
            Ok(s)
        }
        d => Err(SolveError::Precondition(format!(
            "claw-free solver needs a claw-free partition, found delta_i = {d}"
        ))),
    }
}

fn matched_edges(m: &LabeledGraph) -> Vec<LabeledEdge> {
    let vs = m.vertices();
    maximum_matching(&m.to_graph())
        .edges
        .iter()
        .map(|&(i, j)| *m.edge(vs[i], vs[j]).expect("matching uses labeled edges"))
        .collect()
}

/// Labels of a maximum matching in the labeled graph, plus one clique
/// neighbor for each unmatched terminal. Returns the set and `α(M)`.
pub fn solve_2split(pi: &PrunedInstance) -> Result<(Vec<usize>, usize), SolveError> {
    let sp = &pi.reduced;
    if sp.delta_i() != 2 {
        return Err(SolveError::Precondition(format!(
            "2-split solver needs delta_i = 2, found {}",
            sp.delta_i()
        )));
    }
    let m = labeled_graph_avoiding(sp, &[])?;
    let p = matched_edges(&m);
    let s1 = corresponding_vertex_set(&m, &p)?;
    Ok((complete_with_clique_set(sp, s1)?, p.len()))
}

/// `S¹ ∪` a clique neighbor for every terminal outside `N^I(S¹)`.
fn complete_with_clique_set(
    sp: &SplitPartition,
    mut s1: Vec<usize>,
) -> Result<Vec<usize>, SolveError> {
    let mut covered = vec![false; sp.host_n()];
    for &c in &s1 {
        for &a in sp.independent_neighbors(c) {
            covered[a] = true;
        }
    }
    let rest: Vec<usize> = sp
        .independent()
        .iter()
        .copied()
        .filter(|&a| !covered[a])
        .collect();
    s1.extend(corresponding_clique_set(sp, &rest)?);
    s1.sort_unstable();
    s1.dedup();
    Ok(s1)
}

/// K_{1,4}-free 3-split instances. Tries every `v ∈ V_3` with `N^I(v)`
/// removed and keeps the largest matching (smallest `v` on ties). When no
/// choice of `v` gives a matching edge, the labeled graph without `V_3` is
/// tried instead.
pub fn solve_3split(pi: &PrunedInstance) -> Result<(Vec<usize>, SolveTrace), SolveError> {
    let sp = &pi.reduced;
    if sp.delta_i() != 3 {
        return Err(SolveError::Precondition(format!(
            "3-split solver needs delta_i = 3, found {}",
            sp.delta_i()
        )));
    }
    if !check_k14_free_3split(sp)? {
        return Err(SolveError::Precondition(
            "3-split solver needs a K_1,4-free partition".into(),
        ));
    }
    let mut removed = vec![false; sp.host_n()];
    let mut best: Option<(usize, LabeledGraph, Vec<LabeledEdge>)> = None;
    for &v in sp.v3() {
        for &a in sp.independent_neighbors(v) {
            removed[a] = true;
        }
        let m = labeled_graph_avoiding(sp, &removed)?;
        let p = matched_edges(&m);
        if best.as_ref().is_none_or(|(_, _, bp)| p.len() > bp.len()) {
            best = Some((v, m, p));
        }
        for &a in sp.independent_neighbors(v) {
            removed[a] = false;
        }
    }
    let (v, m, p) = best.expect("3-split partition has V_3 vertices");
    let mut trace = SolveTrace::plain(Regime::ThreeSplit);
    trace.alpha_m = Some(p.len());

    let s1 = if p.is_empty() {
        for &u in sp.v3() {
            removed[u] = true;
        }
        let m2 = labeled_graph_avoiding(sp, &removed)?;
        let p2 = matched_edges(&m2);
        trace.alpha_m2 = Some(p2.len());
        if p2.len() >= 3 {
            corresponding_vertex_set(&m2, &p2)?
        } else {
            trace.chosen_v3_vertex = Some(sp.v3()[0]);
            vec![sp.v3()[0]]
        }
    } else {
        trace.chosen_v3_vertex = Some(v);
        let mut s1 = corresponding_vertex_set(&m, &p)?;
        s1.push(v);
        s1
    };
    Ok((complete_with_clique_set(sp, s1)?, trace))
}

fn dispatch(pi: &PrunedInstance) -> Result<(Vec<usize>, SolveTrace), SolveError> {
    let sp = &pi.reduced;
    match sp.delta_i() {
        0 => Ok((Vec::new(), SolveTrace::plain(Regime::Empty))),
        1 => Ok((solve_1split(pi)?, SolveTrace::plain(Regime::OneSplit))),
        2 if check_claw_free_characterization(sp) => {
            Ok((solve_claw_free(pi)?, SolveTrace::plain(Regime::ClawFree)))
        }
        2 => {
            let (s, alpha) = solve_2split(pi)?;
            let mut trace = SolveTrace::plain(Regime::TwoSplit);
            trace.alpha_m = Some(alpha);
            Ok((s, trace))
        }
        3 => solve_3split(pi),
        d => Err(SolveError::Precondition(format!(
            "reduced instance has delta_i = {d}"
        ))),
    }
}

/// Minimum Steiner set and a spanning tree of `G[S ∪ R]`.
pub fn solve(
    inst: &SteinerInstance,
    opts: &SolveOptions,
) -> Result<(SteinerResult, SolveTrace), SolveError> {
    let sp = split_partition(inst.graph())?;
    let (steiner, trace) = solve_with_partition(inst, &sp, opts)?;
    let feasible = verify_solution(inst, &steiner).map_err(|e| SolveError::Precondition(e.to_string()))?;
    if !feasible {
        return Err(SolveError::Precondition(
            "internal error: computed Steiner set is not feasible".into(),
        ));
    }
    let result = SteinerResult::from_steiner_set(inst, steiner, true)
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    Ok((result, trace))
}

/// The Steiner set alone, for a partition already computed from the graph.
pub fn solve_with_partition(
    inst: &SteinerInstance,
    sp: &SplitPartition,
    opts: &SolveOptions,
) -> Result<(Vec<usize>, SolveTrace), SolveError> {
    if inst.terminals().is_empty() {
        return Ok((Vec::new(), SolveTrace::plain(Regime::Empty)));
    }
    if let Some(witness) = find_induced_star(sp, 4)? {
        if !opts.exact_fallback {
            return Err(SolveError::NotK14Free { witness });
        }
        let size = sp.clique().iter().filter(|&&c| !inst.is_terminal(c)).count();
        if size > opts.fallback_budget {
            return Err(SolveError::FallbackTooLarge {
                witness,
                size,
                budget: opts.fallback_budget,
            });
        }
        let r = brute_force_steiner(inst, Universe::Clique, u64::MAX)?;
        return Ok((r.witness, SolveTrace::plain(Regime::ExactFallback)));
    }

    let pi = prune(inst, sp);
    let (mut steiner, trace) = dispatch(&pi)?;
    if steiner.is_empty() {
        // pieces that no reduced-instance vertex ties together
        let pieces = usize::from(pi.clique_terminal_anchor.is_some())
            + pi.promoted.len()
            + pi.terminals.len();
        if pieces > 1 {
            let connector = match pi.terminals.first() {
                Some(&t) => pi.reduced.clique_neighbors(t)[0],
                None => pi.promotion_anchor.expect("several pieces come from promotions"),
            };
            steiner.push(connector);
        }
    }
    Ok((steiner, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(n: usize, edges: &[(usize, usize)], r: &[usize]) -> SteinerInstance {
        SteinerInstance::new(Graph::from_edges(n, edges.iter().copied()).unwrap(), r.to_vec())
            .unwrap()
    }

    fn run(i: &SteinerInstance) -> (SteinerResult, SolveTrace) {
        solve(i, &SolveOptions::default()).unwrap()
    }

    const TRIANGLE_HOST: &[(usize, usize)] =
        &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 4), (1, 5)];
    const SEVEN: &[(usize, usize)] = &[
        (0, 1),
        (0, 2),
        (1, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 3),
        (1, 6),
        (2, 4),
        (2, 6),
    ];

    #[test]
    fn path_of_three() {
        let (r, t) = run(&inst(3, &[(0, 1), (1, 2)], &[0, 2]));
        assert_eq!(r.steiner_set, vec![1]);
        assert_eq!(r.tree_edges, vec![(0, 1), (1, 2)]);
        assert!(r.optimal);
        // c sees the whole reduced clique {b} and is dropped; b then connects
        // it to the clique terminal a
        assert_eq!(t.regime, Regime::Empty);
    }

    #[test]
    fn all_terminals() {
        let (r, t) = run(&inst(6, TRIANGLE_HOST, &[0, 1, 2, 3, 4, 5]));
        assert!(r.steiner_set.is_empty());
        assert_eq!(r.tree_edges.len(), 5);
        assert_eq!(t.regime, Regime::Empty);
    }

    #[test]
    fn no_terminals() {
        let (r, t) = run(&inst(3, &[(0, 1), (1, 2)], &[]));
        assert!(r.steiner_set.is_empty() && r.tree_edges.is_empty());
        assert_eq!(t.regime, Regime::Empty);
    }

    #[test]
    fn prune_clique_terminal() {
        // P3 a-b-c: C = {a, b}, I = {c}
        let i = inst(3, &[(0, 1), (1, 2)], &[0, 2]);
        let sp = split_partition(i.graph()).unwrap();
        assert_eq!(sp.clique(), &[0, 1]);
        let pi = prune(&i, &sp);
        assert!(pi.removed_s1.is_empty() && pi.removed_s2.is_empty());
        assert_eq!(pi.removed_s3, vec![0]);
        assert_eq!(pi.clique_terminal_anchor, Some(0));
        assert_eq!(pi.promoted, vec![2]);
        assert_eq!(pi.promotion_anchor, Some(1));
        assert_eq!(pi.removed_later, vec![1]);
        assert!(pi.terminals.is_empty() && pi.reduced.clique().is_empty());
    }

    #[test]
    fn prune_s1_then_s2() {
        // clique {0,1}; x=2 ~ 0 non-terminal; terminal 3 ~ 1
        let i = inst(4, &[(0, 1), (0, 2), (1, 3)], &[3]);
        let sp = split_partition(i.graph()).unwrap();
        assert_eq!(sp.clique(), &[0, 1]);
        let pi = prune(&i, &sp);
        assert_eq!(pi.removed_s1, vec![2]);
        assert_eq!(pi.removed_s2, vec![0]);
    }

    #[test]
    fn one_terminal_behind_clique_terminal() {
        // clique {0,1,2}; terminals 0 (clique) and 4 ~ {1}; 3 ~ {0}
        let i = inst(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 3)], &[0, 4]);
        let (r, _) = run(&i);
        assert_eq!(r.steiner_set, vec![1]);
    }

    #[test]
    fn promoted_pair_needs_a_connector() {
        // clique {0,1}; a=2 ~ {0}, b=3 ~ {0}, filler 4 ~ {1}
        let i = inst(5, &[(0, 1), (0, 2), (0, 3), (1, 4)], &[2, 3]);
        let (r, _) = run(&i);
        assert_eq!(r.steiner_set, vec![0]);
    }

    #[test]
    fn triangle_host_two_split() {
        let (r, t) = run(&inst(6, TRIANGLE_HOST, &[3, 4, 5]));
        // 2 is pruned, then 4 sees both of 0 and 1 and is dropped
        assert_eq!(r.steiner_set, vec![0, 1]);
        assert_eq!(t.regime, Regime::OneSplit);
    }

    #[test]
    fn claw_free_pair() {
        // clique {0,1,2}; 0 ~ {3,4}, 1 ~ {3}, 2 ~ {4}
        let i = inst(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 3), (2, 4)], &[3, 4]);
        let (r, t) = run(&i);
        assert_eq!(r.steiner_set, vec![0]);
        assert_eq!(t.regime, Regime::ClawFree);
    }

    #[test]
    fn seven_vertex_three_split() {
        let (r, t) = run(&inst(7, SEVEN, &[3, 4, 5, 6]));
        assert_eq!(r.size(), 2);
        assert_eq!(t.regime, Regime::ThreeSplit);
        assert_eq!(t.alpha_m, Some(0));
        assert_eq!(t.chosen_v3_vertex, Some(0));
        assert!(r.steiner_set.contains(&0));
    }

    #[test]
    fn k14_needs_fallback() {
        // clique {0,1}; 0 ~ {2,3,4}, 1 ~ {5}: 0 with leaves 2,3,4 and 1
        let i = inst(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5)], &[2, 3, 4, 5]);
        let err = solve(&i, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, SolveError::NotK14Free { ref witness } if witness.center == 0));
        let opts = SolveOptions {
            exact_fallback: true,
            ..SolveOptions::default()
        };
        let (r, t) = solve(&i, &opts).unwrap();
        assert_eq!(r.steiner_set, vec![0, 1]);
        assert_eq!(t.regime, Regime::ExactFallback);
    }

    #[test]
    fn not_split_is_reported() {
        let i = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 2]);
        assert!(matches!(
            solve(&i, &SolveOptions::default()),
            Err(SolveError::NotSplit(_))
        ));
    }
}
