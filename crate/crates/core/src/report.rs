//! JSON documents produced by the command-line tool. Vertex ids are 1-based
//! here, matching the instance files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::instance::{verify_solution, SteinerResult};
use crate::oracle::{OracleResult, Universe};
use crate::solver::{solve, Regime, SolveError, SolveOptions, SolveTrace};
use crate::split::{split_partition, Obstruction, ObstructionKind};
use crate::sstp::parse_instance;
use crate::structure::{check_claw_free_characterization, find_induced_star, is_k14_free, StarWitness};

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub size: usize,
    pub steiner_set: Vec<usize>,
    pub tree_edges: Vec<[usize; 2]>,
    pub regime: Regime,
    pub alpha_m: Option<usize>,
    pub alpha_m2: Option<usize>,
    pub chosen_v3_vertex: Option<usize>,
    pub optimal: bool,
}

impl SolveReport {
    pub fn new(result: &SteinerResult, trace: &SolveTrace) -> Self {
        SolveReport {
            size: result.size(),
            steiner_set: one_based(&result.steiner_set),
            tree_edges: result.tree_edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
            regime: trace.regime,
            alpha_m: trace.alpha_m,
            alpha_m2: trace.alpha_m2,
            chosen_v3_vertex: trace.chosen_v3_vertex.map(|v| v + 1),
            optimal: result.optimal,
        }
    }
}

/// Human-readable solver error with 1-based vertex ids.
pub fn describe_error(e: &SolveError) -> String {
    let ids = |vs: &[usize]| {
        vs.iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match e {
        SolveError::NotSplit(ns) => format!(
            "graph is not split: induced {} on vertices {}",
            ns.obstruction.kind,
            ids(&ns.obstruction.vertices)
        ),
        SolveError::NotK14Free { witness } => format!(
            "induced K_1,4 with center {} and leaves {}: NP-hard regime, exact fallback not enabled",
            witness.center + 1,
            ids(&witness.leaves)
        ),
        SolveError::FallbackTooLarge {
            witness,
            size,
            budget,
        } => format!(
            "induced K_1,4 with center {} and leaves {}: NP-hard regime, {size} candidate clique vertices exceed the fallback budget of {budget}",
            witness.center + 1,
            ids(&witness.leaves)
        ),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl From<&StarWitness> for StarReport {
    fn from(w: &StarWitness) -> Self {
        StarReport {
            center: w.center + 1,
            leaves: one_based(&w.leaves),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub kind: ObstructionKind,
    pub vertices: Vec<usize>,
}

impl From<&Obstruction> for ObstructionReport {
    fn from(o: &Obstruction) -> Self {
        ObstructionReport {
            kind: o.kind,
            vertices: one_based(&o.vertices),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

/// Structural classification of a graph. Fields beyond `split` are `null`
/// for graphs that are not split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub vertices: usize,
    pub edges: usize,
    pub split: bool,
    pub obstruction: Option<ObstructionReport>,
    pub partition: Option<PartitionReport>,
    pub delta_i: Option<usize>,
    pub v3: Option<Vec<usize>>,
    pub claw_free: Option<bool>,
    pub claw_witness: Option<StarReport>,
    pub k14_free: Option<bool>,
    pub k14_witness: Option<StarReport>,
    pub k15_free: Option<bool>,
    pub k15_witness: Option<StarReport>,
}

impl CheckReport {
    pub fn new(g: &Graph) -> Self {
        let mut report = CheckReport {
            vertices: g.n(),
            edges: g.m(),
            split: false,
            obstruction: None,
            partition: None,
            delta_i: None,
            v3: None,
            claw_free: None,
            claw_witness: None,
            k14_free: None,
            k14_witness: None,
            k15_free: None,
            k15_witness: None,
        };
        let sp = match split_partition(g) {
            Ok(sp) => sp,
            Err(e) => {
                report.obstruction = Some((&e.obstruction).into());
                return report;
            }
        };
        let star = |r: usize| find_induced_star(&sp, r).expect("r >= 3");
        let (claw, k14, k15) = (star(3), star(4), star(5));
        report.split = true;
        report.partition = Some(PartitionReport {
            clique: one_based(sp.clique()),
            independent: one_based(sp.independent()),
        });
        report.delta_i = Some(sp.delta_i());
        report.v3 = Some(one_based(sp.v3()));
        report.claw_free = Some(check_claw_free_characterization(&sp));
        report.claw_witness = claw.as_ref().map(Into::into);
        report.k14_free = Some(is_k14_free(&sp));
        report.k14_witness = k14.as_ref().map(Into::into);
        report.k15_free = Some(k15.is_none());
        report.k15_witness = k15.as_ref().map(Into::into);
        report
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub universe: Universe,
    pub min_size: usize,
    pub witness: Vec<usize>,
    pub explored: u64,
}

impl OracleReport {
    pub fn new(universe: Universe, r: &OracleResult) -> Self {
        OracleReport {
            universe,
            min_size: r.min_size,
            witness: one_based(&r.witness),
            explored: r.explored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub repeat: usize,
    /// Worker threads; 0 lets the thread pool decide.
    pub jobs: usize,
    pub solve: SolveOptions,
    /// Leave out wall-clock fields so reports are reproducible byte for byte.
    pub timing: bool,
}

/// One line of a benchmark report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terminals: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub instances: usize,
    pub solved: usize,
    pub verified: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub records: Vec<InstanceRecord>,
    pub aggregate: Aggregate,
}

impl RunReport {
    /// JSON lines: one record per instance, then `{"aggregate": ...}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        #[derive(Serialize)]
        struct Tail<'a> {
            aggregate: &'a Aggregate,
        }
        let tail = Tail {
            aggregate: &self.aggregate,
        };
        out.push_str(&serde_json::to_string(&tail).expect("serializable"));
        out.push('\n');
        out
    }
}

/// `*.sstp` files directly inside `dir`, sorted by file name.
pub fn instance_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "sstp"))
        .collect();
    files.sort();
    Ok(files)
}

fn bench_one(path: &Path, cfg: &BenchConfig) -> InstanceRecord {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut rec = InstanceRecord {
        file,
        vertices: None,
        edges: None,
        terminals: None,
        regime: None,
        size: None,
        verified: false,
        time_ms: None,
        error: None,
    };
    let inst = match std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()))
    {
        Ok(inst) => inst,
        Err(e) => {
            rec.error = Some(e);
            return rec;
        }
    };
    rec.vertices = Some(inst.graph().n());
    rec.edges = Some(inst.graph().m());
    rec.terminals = Some(inst.terminals().len());
    let mut best: Option<f64> = None;
    for _ in 0..cfg.repeat.max(1) {
        let start = Instant::now();
        let outcome = solve(&inst, &cfg.solve);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        best = Some(best.map_or(ms, |b: f64| b.min(ms)));
        match outcome {
            Ok((res, trace)) => {
                rec.regime = Some(trace.regime);
                rec.size = Some(res.size());
                rec.verified = verify_solution(&inst, &res.steiner_set) == Ok(true);
            }
            Err(e) => {
                rec.error = Some(describe_error(&e));
                break;
            }
        }
    }
    if cfg.timing {
        rec.time_ms = best.map(|t| (t * 1e3).round() / 1e3);
    }
    rec
}

/// Solves every instance file in `dir`, `repeat` times each, keeping the
/// fastest time. Records come back in file-name order whatever the
/// scheduling.
pub fn bench_dir(dir: &Path, cfg: &BenchConfig) -> std::io::Result<RunReport> {
    let files = instance_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(std::io::Error::other)?;
    let records: Vec<InstanceRecord> =
        pool.install(|| files.par_iter().map(|p| bench_one(p, cfg)).collect());
    let solved = records.iter().filter(|r| r.size.is_some()).count();
    let times: Vec<f64> = records.iter().filter_map(|r| r.time_ms).collect();
    let aggregate = Aggregate {
        instances: records.len(),
        solved,
        verified: records.iter().filter(|r| r.verified).count(),
        failed: records.len() - solved,
        total_time_ms: cfg
            .timing
            .then(|| (times.iter().fold(0.0, |a, t| a + t) * 1e3).round() / 1e3),
        max_time_ms: cfg.timing.then(|| times.iter().copied().fold(0.0, f64::max)),
    };
    Ok(RunReport { records, aggregate })
}
