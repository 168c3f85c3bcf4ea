use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use kmout_core::coreset::verify_ring_bounds;
use kmout_core::extensions::{colorful_matroid_solve, colorful_solve, matroid_median_solve};
use kmout_core::solvers::{constrained_oracle, CenterConstraint};
use kmout_core::{
    coreset_snapshot, solve_with_outliers, ColorfulInstance, Coloring, CoresetParams, Matroid, MetricInstance,
    Objective, ReductionConfig, SolverHandle,
};
use kmout_bench::experiment::{run_suite, SuiteConfig};
use kmout_bench::format::{read_colors, read_instance, read_matroid, write_coreset_dump, write_instance, CoresetDump};
use kmout_bench::generate::{planted_instance, PlantedConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kmout", version, about = "k-median and (k, z)-clustering with outliers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a planted instance with Gaussian clusters and far outliers.
    Generate(GenerateArgs),
    /// Run the coreset reduction on an instance.
    Solve(SolveArgs),
    /// Brute-force optimum of a small instance.
    Oracle(OracleArgs),
    /// Run an experiment suite; exits nonzero when its thresholds fail.
    Experiment(ExperimentArgs),
    /// Print the coreset sampled in one round.
    CoresetDump(DumpArgs),
    /// Check the ring sums against their bounds.
    CheckRings(CheckArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON planted configuration; the flags below are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    clusters: usize,
    #[arg(long, default_value_t = 20)]
    points_per_cluster: usize,
    #[arg(long, default_value_t = 1.0)]
    spread: f64,
    #[arg(long, default_value_t = 2)]
    outliers: usize,
    #[arg(long, default_value_t = 4.0)]
    outlier_factor: f64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    facilities: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write one `point_id,cluster` line per point (`-` for outliers).
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    LocalSearch,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Per-color outlier budgets; the instance's `m` becomes their sum.
    #[arg(long)]
    colors: Option<PathBuf>,
    /// Centers must be independent in this matroid.
    #[arg(long)]
    matroid: Option<PathBuf>,
}

#[derive(Args)]
struct CoresetArgs {
    /// Explicit per-ring sample size; the theory size is used otherwise.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
}

impl CoresetArgs {
    fn params(&self) -> CoresetParams {
        let base = match self.s {
            Some(s) => CoresetParams::practical(s),
            None => CoresetParams::default(),
        };
        CoresetParams { epsilon: self.epsilon, lambda: self.lambda, tau: self.tau, ..base }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    coreset: CoresetArgs,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SolverArg::Exact)]
    solver: SolverArg,
    #[arg(long, default_value_t = 5)]
    rounds: usize,
    #[arg(long)]
    prune_symmetric: bool,
    /// Leave wall-clock time out of the report.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Largest number of center sets to enumerate.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    suite: PathBuf,
    /// Overrides the suite's seed.
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    colors: Option<PathBuf>,
    #[command(flatten)]
    coreset: CoresetArgs,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    round: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, &text)
}

fn load_instance(path: &Path) -> anyhow::Result<MetricInstance> {
    read_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

struct Problem {
    inst: MetricInstance,
    colors: Option<ColorfulInstance>,
    matroid: Option<Matroid>,
}

impl ProblemArgs {
    fn load(&self) -> anyhow::Result<Problem> {
        let inst = load_instance(&self.instance)?;
        let colors = match &self.colors {
            Some(p) => {
                let coloring: Coloring = read_colors(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
                Some(ColorfulInstance::new(&inst, coloring)?)
            }
            None => None,
        };
        let matroid = match &self.matroid {
            Some(p) => Some(read_matroid(&read(p)?).with_context(|| format!("parsing {}", p.display()))?),
            None => None,
        };
        Ok(Problem { inst, colors, matroid })
    }
}

#[derive(Serialize)]
struct Timed<T> {
    #[serde(flatten)]
    report: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

fn generate(args: GenerateArgs) -> anyhow::Result<()> {
    let config = match &args.config {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))?,
        None => PlantedConfig {
            clusters: args.clusters,
            points_per_cluster: args.points_per_cluster,
            spread: args.spread,
            outlier_count: args.outliers,
            outlier_distance_factor: args.outlier_factor,
            dimension: args.dim,
            seed: args.seed,
            facility_count: args.facilities,
            k: args.k,
            m: args.m,
            z: args.z,
            centers: None,
        },
    };
    let planted = planted_instance(&config)?;
    if let Some(path) = &args.labels {
        let text: String = planted
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                Some(c) => format!("{i},{c}\n"),
                None => format!("{i},-\n"),
            })
            .collect();
        emit(Some(path), &text)?;
    }
    emit(args.out.as_deref(), &write_instance(&planted.instance))
}

fn solve(args: SolveArgs) -> anyhow::Result<()> {
    let problem = args.problem.load()?;
    let solver = match args.solver {
        SolverArg::Exact => SolverHandle::exact(),
        SolverArg::LocalSearch => SolverHandle { seed: args.seed, ..SolverHandle::local_search() },
    };
    let config = ReductionConfig {
        coreset: args.coreset.params(),
        solver,
        rounds: args.rounds,
        seed: args.seed,
        prune_symmetric: args.prune_symmetric,
        ..ReductionConfig::default()
    };
    let start = Instant::now();
    let report = match (&problem.colors, &problem.matroid) {
        (None, None) => solve_with_outliers(&problem.inst, &config)?,
        (Some(c), None) => colorful_solve(c, &config)?,
        (None, Some(m)) => matroid_median_solve(&problem.inst, m, &config)?,
        (Some(c), Some(m)) => colorful_matroid_solve(c, m, &config)?,
    };
    let wall_ms = (!args.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    emit_json(args.out.as_deref(), &Timed { report, wall_ms })
}

fn oracle(args: OracleArgs) -> anyhow::Result<()> {
    let problem = args.problem.load()?;
    let inst = match &problem.colors {
        Some(c) => c.base(),
        None => &problem.inst,
    };
    let objective = match &problem.colors {
        Some(c) => Objective::Colorful(c.coloring()),
        None => Objective::Trimmed,
    };
    let constraint = match &problem.matroid {
        Some(m) => CenterConstraint::Matroid(m),
        None => CenterConstraint::Cardinality(inst.k()),
    };
    let solution = constrained_oracle(inst, objective, constraint, args.budget)?;
    emit_json(args.out.as_deref(), &solution)
}

fn experiment(args: ExperimentArgs) -> anyhow::Result<bool> {
    let mut suite: SuiteConfig =
        serde_json::from_str(&read(&args.suite)?).with_context(|| format!("parsing {}", args.suite.display()))?;
    suite.seed = args.seed;
    if args.no_timing {
        suite.record_timing = false;
    }
    let base = args.suite.parent().unwrap_or(Path::new("."));
    let report = run_suite(&suite, base)?;
    emit_json(args.out.as_deref(), &report)?;
    Ok(report.summary.passed)
}

fn coreset_dump(args: DumpArgs) -> anyhow::Result<()> {
    let inst = load_instance(&args.instance)?;
    let colorful = match &args.colors {
        Some(p) => Some(ColorfulInstance::new(&inst, read_colors(&read(p)?)?)?),
        None => None,
    };
    let config = ReductionConfig { coreset: args.coreset.params(), seed: args.seed, ..ReductionConfig::default() };
    let snapshot = match &colorful {
        Some(c) => coreset_snapshot(c.base(), Some(c.coloring()), &config, args.round)?,
        None => coreset_snapshot(&inst, None, &config, args.round)?,
    };
    emit(args.out.as_deref(), &write_coreset_dump(&CoresetDump::from_snapshot(&snapshot)))
}

fn check_rings(args: CheckArgs) -> anyhow::Result<bool> {
    let inst = load_instance(&args.instance)?;
    let config = ReductionConfig {
        coreset: CoresetParams { tau: args.tau, ..CoresetParams::practical(1) },
        ..ReductionConfig::default()
    };
    let snapshot = coreset_snapshot(&inst, None, &config, 0)?;
    let report = verify_ring_bounds(&snapshot.rings, inst.oracle())?;
    emit_json(None, &report)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a).map(|_| true),
        Command::Solve(a) => solve(a).map(|_| true),
        Command::Oracle(a) => oracle(a).map(|_| true),
        Command::Experiment(a) => experiment(a),
        Command::CoresetDump(a) => coreset_dump(a).map(|_| true),
        Command::CheckRings(a) => check_rings(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
