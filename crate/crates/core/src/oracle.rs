//! Exhaustive minimum Steiner set search for small instances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::is_connected;
use crate::instance::SteinerInstance;
use crate::split::{split_partition, NotSplit};

/// Largest number of candidate vertices the oracle will enumerate over.
pub const MAX_UNIVERSE: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    /// Every non-terminal vertex is a candidate.
    All,
    /// Only non-terminal clique vertices of the split partition.
    Clique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub min_size: usize,
    pub witness: Vec<usize>,
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    NotSplit(#[from] NotSplit),
    #[error("{size} candidate vertices exceed the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("subset budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("no feasible Steiner set")]
    Infeasible,
}

/// Smallest `S ⊆ universe ∖ R` with `G[S ∪ R]` connected. Subsets are tried
/// by increasing size and, within a size, in lexicographic order, so the
/// witness is the lexicographically first minimum set.
pub fn brute_force_steiner(
    inst: &SteinerInstance,
    universe: Universe,
    budget: u64,
) -> Result<OracleResult, OracleError> {
    let g = inst.graph();
    let candidates: Vec<usize> = match universe {
        Universe::All => (0..g.n()).filter(|&v| !inst.is_terminal(v)).collect(),
        Universe::Clique => split_partition(g)?
            .clique()
            .iter()
            .copied()
            .filter(|&v| !inst.is_terminal(v))
            .collect(),
    };
    if candidates.len() > MAX_UNIVERSE {
        return Err(OracleError::UniverseTooLarge {
            size: candidates.len(),
            limit: MAX_UNIVERSE,
        });
    }

    let feasible: Box<dyn Fn(&[usize]) -> bool> = if g.n() <= 64 {
        let adj: Vec<u64> = (0..g.n())
            .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
            .collect();
        let base = inst.terminals().iter().fold(0u64, |m, &t| m | 1 << t);
        Box::new(move |s: &[usize]| {
            let set = s.iter().fold(base, |m, &v| m | 1 << v);
            mask_connected(&adj, set)
        })
    } else {
        Box::new(|s: &[usize]| {
            let mut span = s.to_vec();
            span.extend_from_slice(inst.terminals());
            is_connected(g, &span)
        })
    };

    let mut explored = 0u64;
    let k = candidates.len();
    for size in 0..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        let mut pick = vec![0usize; size];
        loop {
            if explored == budget {
                return Err(OracleError::BudgetExceeded(budget));
            }
            explored += 1;
            for (p, &i) in pick.iter_mut().zip(&idx) {
                *p = candidates[i];
            }
            if feasible(&pick) {
                return Ok(OracleResult {
                    min_size: size,
                    witness: pick,
                    explored,
                });
            }
            if !next_combination(&mut idx, k) {
                break;
            }
        }
    }
    Err(OracleError::Infeasible)
}

fn mask_connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let mut seen = set & set.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & set & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == set
}

/// Advances `idx` (strictly increasing, values `< k`) to the next
/// combination in lexicographic order.
fn next_combination(idx: &mut [usize], k: usize) -> bool {
    let r = idx.len();
    let Some(i) = (0..r).rev().find(|&i| idx[i] < k - r + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..r {
        idx[j] = idx[j - 1] + 1;
    }
    true
}
