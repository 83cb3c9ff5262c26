//! `pmb`: run p-mean regret bandit experiments from the command line.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.
//! `PMB_THREADS` (positive integer) caps the number of worker threads.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmb_core::bounds::table1_bound;
use pmb_core::harness::{
    assumption_flags, planned_exploration, reproduce_table, run_experiment, with_threads, ExperimentConfig, TableSeeds,
    TableSpec, REFERENCE_K, REFERENCE_P_GRID, REFERENCE_REPLICATIONS,
};
use pmb_core::schedule::{exploration_period, ScheduleInput};
use pmb_core::{Algorithm, Estimator, FamilyKind, InstanceFamily};

use crate::output::{report_rows, sig6, table_rows, write_csv, write_json, OutputRow};

#[derive(Debug, Parser)]
#[command(name = "pmb", version, about = "p-mean regret experiments for stochastic bandits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one algorithm on one generated instance over a grid of p.
    Run(RunArgs),
    /// Reproduce the full results table (4 families x 3 algorithms x 6 p).
    Table(TableArgs),
    /// Print the exploration period, diagnostic checks and bound values.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Seeds {
    /// Base seed for the per-replication streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed the instance is drawn from.
    #[arg(long = "instance-seed", default_value_t = 0)]
    instance_seed: u64,
}

#[derive(Debug, Args)]
struct Sink {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value = "bernoulli", value_parser = parse_family)]
    family: FamilyKind,
    #[arg(long = "alg", default_value = "eucb", value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// Horizon; defaults to 100000 for bernoulli and 20000 otherwise.
    #[arg(long = "T")]
    horizon: Option<u64>,
    /// Replications.
    #[arg(long = "R", default_value_t = REFERENCE_REPLICATIONS)]
    replications: usize,
    /// Comma-separated p values, each <= 1.
    #[arg(long = "p", value_delimiter = ',', allow_negative_numbers = true,
          value_parser = parse_p, default_value = "1,0.5,0,-0.5,-1,-2")]
    p: Vec<f64>,
    /// Arms per instance.
    #[arg(long, default_value_t = REFERENCE_K)]
    k: usize,
    #[arg(long, default_value = "per-run-realized-reward", value_parser = parse_estimator)]
    estimator: Estimator,
    #[command(flatten)]
    seeds: Seeds,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long = "R", default_value_t = REFERENCE_REPLICATIONS)]
    replications: usize,
    #[arg(long, default_value_t = REFERENCE_K)]
    k: usize,
    #[arg(long, default_value = "per-run-realized-reward", value_parser = parse_estimator)]
    estimator: Estimator,
    #[command(flatten)]
    seeds: Seeds,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, default_value = "bernoulli", value_parser = parse_family)]
    family: FamilyKind,
    #[arg(long = "instance-seed", default_value_t = 0)]
    instance_seed: u64,
    #[arg(long = "T")]
    horizon: Option<u64>,
    #[arg(long = "p", default_value_t = 0.0, allow_negative_numbers = true, value_parser = parse_p)]
    p: f64,
    #[arg(long, default_value_t = REFERENCE_K)]
    k: usize,
    #[arg(long, value_enum, default_value_t = CheckFormat::Text)]
    format: CheckFormat,
}

fn parse_p(s: &str) -> Result<f64, String> {
    let p: f64 = s.trim().parse().map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if !p.is_finite() || p > 1.0 {
        return Err(format!("p must be a finite value <= 1, got {s}"));
    }
    Ok(p)
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: pmb_core::Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: pmb_core::Error| e.to_string())
}

fn parse_estimator(s: &str) -> Result<Estimator, String> {
    s.parse().map_err(|e: pmb_core::Error| e.to_string())
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<pmb_core::Error> for Failure {
    fn from(e: pmb_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("PMB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("PMB_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

fn in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads_from_env()? {
        Some(n) => Ok(with_threads(n, f)?),
        None => Ok(f()),
    }
}

fn emit(sink: &Sink, rows: &[OutputRow]) -> Result<(), Failure> {
    let writer: Box<dyn Write> = match &sink.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Runtime(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match sink.format {
        Format::Csv => write_csv(writer, rows)?,
        Format::Json => write_json(writer, rows)?,
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let family = InstanceFamily::new(args.family, args.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let config = ExperimentConfig {
        family,
        algorithm: args.algorithm,
        horizon: args.horizon.unwrap_or(args.family.reference_horizon()),
        replications: args.replications,
        p_grid: args.p,
        base_seed: args.seeds.seed,
        estimator: args.estimator,
        instance_seed: args.seeds.instance_seed,
    };
    let report = in_pool(|| run_experiment(&config))??;
    emit(&args.sink, &report_rows(&report))
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let seeds = TableSeeds {
        instance_seed: args.seeds.instance_seed,
        base_seed: args.seeds.seed,
    };
    let mut spec = TableSpec::reference(seeds, args.replications, args.estimator);
    spec.k = args.k;
    debug_assert_eq!(spec.p_grid, REFERENCE_P_GRID);
    let table = in_pool(|| reproduce_table(&spec))??;
    emit(&args.sink, &table_rows(&table))
}

fn cmd_check(args: CheckArgs) -> Result<(), Failure> {
    let family = InstanceFamily::new(args.family, args.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let horizon = args.horizon.unwrap_or(args.family.reference_horizon());
    let config = ExperimentConfig {
        family,
        algorithm: Algorithm::Eucb,
        horizon,
        replications: 1,
        p_grid: vec![args.p],
        base_seed: 0,
        estimator: Estimator::PerRunTrueMean,
        instance_seed: args.instance_seed,
    };
    config.validate()?;
    let instance = config.instance()?;
    let period = exploration_period(ScheduleInput::new(args.p, horizon, args.k)?);
    let ncb = planned_exploration(Algorithm::Ncb, args.p, horizon, args.k)?;
    let flags = assumption_flags(&instance, args.p, horizon, period.rounds);
    let bound = table1_bound(args.p, args.k, horizon)?;
    let nash = pmb_core::explicit_nash_bound(args.k, horizon)?;

    let mut out = BufWriter::new(io::stdout().lock());
    match args.format {
        CheckFormat::Json => {
            let doc = serde_json::json!({
                "family": args.family,
                "k": args.k,
                "T": horizon,
                "p": args.p,
                "instance_seed": args.instance_seed,
                "mu_star": instance.mu_star(),
                "mu_min": instance.min_mean(),
                "exploration_period": period,
                "ncb_exploration_period": ncb.rounds,
                "checks": flags,
                "table1_bound": bound,
                "explicit_nash_bound": nash,
            });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        CheckFormat::Text => {
            let lines = [
                ("family", args.family.to_string()),
                ("k", args.k.to_string()),
                ("T", horizon.to_string()),
                ("p", sig6(args.p)),
                ("instance_seed", args.instance_seed.to_string()),
                ("mu_star", sig6(instance.mu_star())),
                ("mu_min", sig6(instance.min_mean())),
                ("explore_period_raw", sig6(period.raw)),
                ("explore_period", period.rounds.to_string()),
                ("clamped", period.clamped.to_string()),
                ("ncb_explore_period", ncb.rounds.to_string()),
                ("min_reward.passed", flags.min_reward.passed.to_string()),
                ("min_reward.threshold", sig6(flags.min_reward.threshold)),
                ("min_reward.margin", sig6(flags.min_reward.margin)),
                ("exploration_period.passed", flags.exploration_period.passed.to_string()),
                ("exploration_period.threshold", sig6(flags.exploration_period.threshold)),
                ("exploration_period.margin", sig6(flags.exploration_period.margin)),
                ("remark_bound.passed", flags.remark_bound.passed.to_string()),
                ("remark_bound.threshold", sig6(flags.remark_bound.threshold)),
                ("remark_bound.margin", sig6(flags.remark_bound.margin)),
                ("negative_p_side_condition", flags.negative_p_side_condition.to_string()),
                ("table1_bound.branch", format!("{:?}", bound.branch).to_lowercase()),
                ("table1_bound.dominant_term", sig6(bound.dominant_term)),
                ("table1_bound.log_factor", sig6(bound.log_factor)),
                ("table1_bound.outside_validity", bound.outside_validity.to_string()),
                ("explicit_nash_bound", sig6(nash)),
            ];
            for (key, value) in lines {
                writeln!(out, "{key}={value}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Table(args) => cmd_table(args),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
