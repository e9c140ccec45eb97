use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use split_steiner::generate::{gen_split, GeneratorConfig};
use split_steiner::instance::{verify_solution, SteinerInstance};
use split_steiner::oracle::{brute_force_steiner, Universe};
use split_steiner::reduction::{parse_x3c, reduce_x3c};
use split_steiner::report::{
    bench_dir, describe_error, BenchConfig, CheckReport, OracleReport, SolveReport,
};
use split_steiner::solver::{solve, SolveError, SolveOptions};
use split_steiner::sstp::{parse_instance, write_instance};

/// Minimum Steiner trees on split graphs.
#[derive(Parser)]
#[command(name = "split-steiner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Use exhaustive search when the graph has an induced K_1,4.
        #[arg(long)]
        exact_fallback: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify the graph of an instance.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Minimum Steiner set by exhaustive search.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = UniverseArg::Clique)]
        universe: UniverseArg,
        /// Maximum number of subsets to examine.
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// Turn an exact cover instance into a Steiner instance.
    ReduceX3c {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Generate a random split graph with terminals on the independent side.
    Gen {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        indep: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        k14_free: bool,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve every `.sstp` file of a directory and print JSON lines.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        exact_fallback: bool,
        /// Omit timings for byte-identical reports.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum UniverseArg {
    All,
    Clique,
}

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_SPLIT: u8 = 2;
const EXIT_HARD: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            input,
            exact_fallback,
            json,
        } => return cmd_solve(&input, exact_fallback, json),
        Command::Check { input } => cmd_check(&input),
        Command::Oracle {
            input,
            universe,
            budget,
        } => cmd_oracle(&input, universe, budget),
        Command::ReduceX3c { input, output } => cmd_reduce(&input, &output),
        Command::Gen {
            level,
            clique,
            indep,
            seed,
            k14_free,
            density,
            output,
        } => {
            let cfg = GeneratorConfig {
                clique_size: clique,
                independent_size: indep,
                level,
                k14_free,
                seed,
                density,
            };
            cmd_gen(&cfg, output.as_deref())
        }
        Command::Bench {
            dir,
            repeat,
            jobs,
            exact_fallback,
            no_timing,
        } => {
            let cfg = BenchConfig {
                repeat,
                jobs,
                solve: SolveOptions {
                    exact_fallback,
                    ..SolveOptions::default()
                },
                timing: !no_timing,
            };
            cmd_bench(&dir, &cfg)
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<SteinerInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn one_based(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_solve(input: &Path, exact_fallback: bool, json: bool) -> ExitCode {
    let inst = match read_instance(input) {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let opts = SolveOptions {
        exact_fallback,
        ..SolveOptions::default()
    };
    let (result, trace) = match solve(&inst, &opts) {
        Ok(ok) => ok,
        Err(e @ SolveError::NotSplit(_)) => {
            eprintln!("error: {}", describe_error(&e));
            return ExitCode::from(EXIT_NOT_SPLIT);
        }
        Err(e @ (SolveError::NotK14Free { .. } | SolveError::FallbackTooLarge { .. })) => {
            eprintln!("error: {}", describe_error(&e));
            if !exact_fallback {
                eprintln!("hint: rerun with --exact-fallback for small instances");
            }
            return ExitCode::from(EXIT_HARD);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    if verify_solution(&inst, &result.steiner_set) != Ok(true) {
        eprintln!("error: solution failed verification");
        return ExitCode::from(EXIT_INPUT);
    }
    let report = SolveReport::new(&result, &trace);
    if json {
        print_json(&report);
    } else {
        println!("regime: {}", trace.regime.as_str());
        println!("size: {}", report.size);
        println!("steiner set: {}", one_based(&result.steiner_set));
        let edges: Vec<String> = report
            .tree_edges
            .iter()
            .map(|[u, v]| format!("{u}-{v}"))
            .collect();
        println!("tree edges: {}", edges.join(" "));
    }
    ExitCode::SUCCESS
}

fn cmd_check(input: &Path) -> anyhow::Result<()> {
    let inst = read_instance(input)?;
    print_json(&CheckReport::new(inst.graph()));
    Ok(())
}

fn cmd_oracle(input: &Path, universe: UniverseArg, budget: u64) -> anyhow::Result<()> {
    let inst = read_instance(input)?;
    let universe = match universe {
        UniverseArg::All => Universe::All,
        UniverseArg::Clique => Universe::Clique,
    };
    let r = brute_force_steiner(&inst, universe, budget)?;
    print_json(&OracleReport::new(universe, &r));
    Ok(())
}

fn cmd_reduce(input: &Path, output: &Path) -> anyhow::Result<()> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let x = parse_x3c(&text).with_context(|| format!("parsing {}", input.display()))?;
    let (inst, k) = reduce_x3c(&x)?;
    let mut out = write_instance(&inst);
    out.push_str(&format!("# k = {k}\n"));
    fs::write(output, out).with_context(|| format!("writing {}", output.display()))?;
    Ok(())
}

fn cmd_gen(cfg: &GeneratorConfig, output: Option<&Path>) -> anyhow::Result<()> {
    let inst = gen_split(cfg)?;
    let text = write_instance(&inst);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_bench(dir: &Path, cfg: &BenchConfig) -> anyhow::Result<()> {
    if !dir.is_dir() {
        bail!("{} is not a directory", dir.display());
    }
    let report = bench_dir(dir, cfg).with_context(|| format!("reading {}", dir.display()))?;
    print!("{}", report.to_json_lines());
    Ok(())
}
