//! Seeded random split graphs with a prescribed independent degree.
//!
//! Clique vertices get ids `0..clique_size`, independent vertices follow.
//! Terminals are the independent vertices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::instance::SteinerInstance;
use crate::split::{split_partition, SplitPartition};
use crate::structure::check_k14_free_3split;

const ATTEMPTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub clique_size: usize,
    pub independent_size: usize,
    /// Requested `Δ^I`, one of 1, 2, 3.
    pub level: usize,
    /// Only meaningful for level 3.
    pub k14_free: bool,
    pub seed: u64,
    /// In `[0, 1]`: how many optional edges are added beyond the minimum.
    pub density: f64,
}

impl GeneratorConfig {
    pub fn new(level: usize, clique_size: usize, independent_size: usize, seed: u64) -> Self {
        GeneratorConfig {
            clique_size,
            independent_size,
            level,
            k14_free: false,
            seed,
            density: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error("no valid graph found after {0} attempts")]
    Exhausted(usize),
}

pub fn gen_split(cfg: &GeneratorConfig) -> Result<SteinerInstance, GenError> {
    validate(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..ATTEMPTS {
        let nbhds = if cfg.level == 3 && cfg.k14_free {
            k14_free_attempt(cfg, &mut rng)
        } else {
            slot_attempt(cfg, &mut rng)
        };
        if let Some(nbhds) = nbhds {
            if let Some(inst) = assemble(cfg, &nbhds) {
                return Ok(inst);
            }
        }
    }
    Err(GenError::Exhausted(ATTEMPTS))
}

fn validate(cfg: &GeneratorConfig) -> Result<(), GenError> {
    let (k, i, l) = (cfg.clique_size, cfg.independent_size, cfg.level);
    let fail = |m: &str| Err(GenError::Infeasible(m.into()));
    if !(1..=3).contains(&l) {
        return fail("level must be 1, 2 or 3");
    }
    if !(0.0..=1.0).contains(&cfg.density) {
        return fail("density must lie in [0, 1]");
    }
    if k < 2 {
        return fail("the clique needs at least 2 vertices to stay maximal");
    }
    if i < l {
        return fail("fewer independent vertices than the level");
    }
    if l * k < i {
        return fail("independent set too large for the clique at this level");
    }
    if l == 3 && cfg.k14_free && i < 3 {
        return fail("a K_1,4-free 3-split graph needs 3 independent vertices");
    }
    Ok(())
}

/// Neighborhoods (as independent indices `0..i`) of the clique vertices.
type Nbhds = Vec<Vec<usize>>;

/// Each independent vertex takes one random slot among `level` per clique
/// vertex; leftover slots are filled with probability `density`.
fn slot_attempt(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Option<Nbhds> {
    let (k, i, l) = (cfg.clique_size, cfg.independent_size, cfg.level);
    let mut slots: Vec<usize> = (0..k * l).collect();
    slots.shuffle(rng);
    let mut nb: Nbhds = vec![Vec::new(); k];
    let mut deg = vec![0usize; i];
    for (a, &s) in slots.iter().take(i).enumerate() {
        nb[s / l].push(a);
        deg[a] += 1;
    }
    // optional edges never make an independent vertex universal
    for c in 0..k {
        while nb[c].len() < l && rng.gen_bool(cfg.density) {
            let a = rng.gen_range(0..i);
            if nb[c].contains(&a) || deg[a] + 1 == k {
                break;
            }
            nb[c].push(a);
            deg[a] += 1;
        }
    }
    if nb.iter().all(|n| n.len() < l) {
        let c = rng.gen_range(0..k);
        let mut pool: Vec<usize> = (0..i)
            .filter(|&a| !nb[c].contains(&a) && deg[a] + 1 < k)
            .collect();
        pool.shuffle(rng);
        let missing = l - nb[c].len();
        if pool.len() < missing {
            return None;
        }
        nb[c].extend(pool.into_iter().take(missing));
    }
    Some(nb)
}

/// A small family of core sets on independent vertices `0..s`: `big` cores
/// become (part of) 3-neighborhoods, `small` ones whole neighborhoods of
/// size at most 2. Big cores meet each other and every small core, and no
/// core vertex lies in all of them.
#[derive(Debug, Clone)]
struct Template {
    s: usize,
    big: Vec<Vec<usize>>,
    small: Vec<Vec<usize>>,
}

fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

fn random_subset(rng: &mut ChaCha8Rng, s: usize, size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..s).collect();
    pool.shuffle(rng);
    pool.truncate(size);
    pool.sort_unstable();
    pool
}

fn sample_template(rng: &mut ChaCha8Rng, max_s: usize, k: usize) -> Option<Template> {
    let s = rng.gen_range(3..=max_s.min(7));
    let want_big = rng.gen_range(1..=5usize.min(k));
    let want_small = rng.gen_range(0..=4usize.min(k - want_big));
    let mut big: Vec<Vec<usize>> = Vec::new();
    for _ in 0..want_big * 8 {
        if big.len() == want_big {
            break;
        }
        let size = rng.gen_range(2..=3);
        let c = random_subset(rng, s, size);
        if !big.contains(&c) && big.iter().all(|b| meets(b, &c)) {
            big.push(c);
        }
    }
    let mut small: Vec<Vec<usize>> = Vec::new();
    for _ in 0..want_small * 8 {
        if small.len() == want_small {
            break;
        }
        let size = rng.gen_range(1..=2);
        let c = random_subset(rng, s, size);
        if !small.contains(&c) && big.iter().all(|b| meets(b, &c)) {
            small.push(c);
        }
    }
    let used: Vec<usize> = (0..s)
        .filter(|x| big.iter().chain(&small).any(|c| c.contains(x)))
        .collect();
    let universal = used
        .iter()
        .any(|x| big.iter().chain(&small).all(|c| c.contains(x)));
    if universal || big.is_empty() {
        return None;
    }
    // compact ids to the vertices actually used
    let remap = |c: &Vec<usize>| -> Vec<usize> {
        c.iter().map(|x| used.binary_search(x).unwrap()).collect()
    };
    Some(Template {
        s: used.len(),
        big: big.iter().map(remap).collect(),
        small: small.iter().map(remap).collect(),
    })
}

/// Builds neighborhoods from a template. Every big core is padded to three
/// vertices with non-core fillers, so any two 3-neighborhoods and any
/// 3-neighborhood and smaller neighborhood share a core vertex.
fn k14_free_attempt(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Option<Nbhds> {
    let (k, i) = (cfg.clique_size, cfg.independent_size);
    let t = (0..64).find_map(|_| sample_template(rng, i, k))?;
    if t.s > i {
        return None;
    }
    let need = i - t.s;
    // core choice per clique vertex: every template core at least once
    let cores: Vec<(bool, usize)> = t
        .big
        .iter()
        .enumerate()
        .map(|(j, _)| (true, j))
        .chain(t.small.iter().enumerate().map(|(j, _)| (false, j)))
        .collect();
    if cores.len() > k {
        return None;
    }
    let slot_bearing: Vec<(bool, usize)> = cores
        .iter()
        .copied()
        .filter(|&(b, j)| if b { t.big[j].len() == 2 } else { t.small[j].len() == 1 })
        .collect();
    if need > 0 && slot_bearing.is_empty() {
        return None;
    }
    // extra clique vertices: enough slot-bearing cores to place every
    // missing independent vertex, the rest drawn freely
    let extra = k - cores.len();
    let forced = need.saturating_sub(cores.iter().filter(|c| slot_bearing.contains(c)).count());
    if forced > extra {
        return None;
    }
    let bearing = forced.max((extra as f64 * 0.6) as usize).min(if slot_bearing.is_empty() { 0 } else { extra });
    let mut choice = cores.clone();
    for j in 0..extra {
        let pick = if j < bearing {
            *slot_bearing.choose(rng).unwrap()
        } else {
            *cores.choose(rng).unwrap()
        };
        choice.push(pick);
    }
    choice.shuffle(rng);

    let mut nb: Nbhds = choice
        .iter()
        .map(|&(b, j)| if b { t.big[j].clone() } else { t.small[j].clone() })
        .collect();
    let slots: Vec<usize> = (0..k)
        .filter(|&c| {
            let (b, _) = choice[c];
            (b && nb[c].len() == 2) || (!b && nb[c].len() == 1)
        })
        .collect();
    if slots.len() < need {
        return None;
    }
    let mut order = slots.clone();
    order.shuffle(rng);
    let mut next = t.s;
    for &c in order.iter().take(need) {
        nb[c].push(next);
        next += 1;
    }
    let fillers: Vec<usize> = (t.s..i).collect();
    for &c in order.iter().skip(need) {
        let (b, _) = choice[c];
        let mandatory = b;
        if mandatory || rng.gen_bool(cfg.density) {
            let f = *fillers.choose(rng)?;
            nb[c].push(f);
        }
    }
    Some(nb)
}

/// Turns neighborhoods into an instance and checks the requested shape.
fn assemble(cfg: &GeneratorConfig, nbhds: &Nbhds) -> Option<SteinerInstance> {
    let (k, i) = (cfg.clique_size, cfg.independent_size);
    let n = k + i;
    let mut in_clique = vec![false; n];
    let mut cross = vec![Vec::new(); n];
    for (c, nb) in nbhds.iter().enumerate() {
        in_clique[c] = true;
        for &a in nb {
            cross[c].push(k + a);
            cross[k + a].push(c);
        }
    }
    for list in cross.iter_mut() {
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
    }
    if (k..n).any(|a| cross[a].is_empty() || cross[a].len() == k) {
        return None;
    }
    let g = Graph::from_split_parts(&in_clique, &cross);
    let sp: SplitPartition = split_partition(&g).ok()?;
    if sp.delta_i() != cfg.level || sp.clique().len() != k {
        return None;
    }
    if cfg.level == 3 && cfg.k14_free && !check_k14_free_3split(&sp).ok()? {
        return None;
    }
    SteinerInstance::new(g, (k..n).collect()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_and_determinism() {
        for level in 1..=3 {
            let cfg = GeneratorConfig::new(level, 6, 5, 7);
            let a = gen_split(&cfg).unwrap();
            let b = gen_split(&cfg).unwrap();
            assert_eq!(a, b);
            let sp = split_partition(a.graph()).unwrap();
            assert_eq!(sp.delta_i(), level);
            assert_eq!(a.terminals(), sp.independent());
        }
    }

    #[test]
    fn k14_free_level_three() {
        for seed in 0..30 {
            let cfg = GeneratorConfig {
                k14_free: true,
                ..GeneratorConfig::new(3, 8, 9, seed)
            };
            let inst = gen_split(&cfg).unwrap();
            let sp = split_partition(inst.graph()).unwrap();
            assert_eq!(sp.delta_i(), 3);
            assert_eq!(check_k14_free_3split(&sp), Ok(true));
            assert_eq!(sp.independent().len(), 9);
        }
    }

    #[test]
    fn infeasible_configs() {
        assert!(matches!(
            gen_split(&GeneratorConfig::new(4, 5, 5, 0)),
            Err(GenError::Infeasible(_))
        ));
        assert!(matches!(
            gen_split(&GeneratorConfig::new(1, 2, 3, 0)),
            Err(GenError::Infeasible(_))
        ));
        assert!(matches!(
            gen_split(&GeneratorConfig::new(2, 1, 2, 0)),
            Err(GenError::Infeasible(_))
        ));
    }
}
