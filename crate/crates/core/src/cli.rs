//! Command-line front end: argument parsing and dispatch.
//!
//! Exit codes: 0 on success, 1 for usage and I/O errors, 2 for numeric
//! failures or violated invariants.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bounds::{build_report, sweep, upper_bound, violations, Grid, KRule};
use crate::dp::{solve, PolicyKind};
use crate::error::Error;
use crate::output::{self, Format, Versioned};
use crate::sim::{estimate_regret, SimConfig, SimPolicy};
use crate::walk::{decomposed_regret, expected_mistakes, forward_distribution, walk_rows};

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "multisecretary", version, about = "Exact and simulated regret for the multisecretary problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (default: all cores). Never changes results.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Dump the DP tables for every state up to n.
    Solve(SolveArgs),
    /// Regret of both policies and the bounds over a grid of n.
    Curve(GridArgs),
    /// Moments, covariance and mistake rate of the open-positions walk.
    Walk(StateArgs),
    /// Expected hiring mistakes per period along the walk.
    Mistakes(StateArgs),
    /// Monte Carlo regret estimate.
    Simulate(SimulateArgs),
    /// Curve plus growth fit and bound checks.
    Report(GridArgs),
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub n: usize,
    /// Positions: an integer, `half`, or `ratio:<rho>`.
    #[arg(long, default_value = "half")]
    pub k: String,
    /// `optimal` or `myopic`.
    #[arg(long, default_value = "optimal")]
    pub policy: String,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Include the value column v = v* − r.
    #[arg(long)]
    pub values: bool,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct GridArgs {
    /// `a:b:xS` geometric, `a:b:+d` arithmetic, or a comma list.
    #[arg(long, default_value = "16:4096:x2")]
    pub grid: String,
    /// `half`, an integer, or `ratio:<rho>`.
    #[arg(long, default_value = "half")]
    pub k: String,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "half")]
    pub k: String,
    /// `optimal`, `myopic` or `fixed:<theta>`.
    #[arg(long, default_value = "optimal")]
    pub policy: String,
    #[arg(long, default_value_t = 10_000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A parsed and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliInvocation {
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub task: Task,
}

/// Fully resolved work item.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Solve { n: usize, k: usize, policy: PolicyKind, values: bool },
    Curve { grid: Grid, k_rule: KRule },
    Walk { n: usize, k: usize, policy: PolicyKind },
    Mistakes { n: usize, k: usize, policy: PolicyKind },
    Simulate(SimConfig),
    Report { grid: Grid, k_rule: KRule },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Numeric(String),
    /// Help or version text requested explicitly; not a failure.
    #[error("{0}")]
    Info(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Info(_) => 0,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(msg) => CliError::Usage(msg),
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => CliError::Io(e.to_string()),
            Error::NoConvergence { .. } | Error::Invariant(_) => CliError::Numeric(e.to_string()),
        }
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("--{flag}: {msg}"))
}

fn table_policy(s: &str) -> Result<PolicyKind, CliError> {
    s.parse().map_err(|_| usage("policy", format!("{s:?} is not optimal or myopic")))
}

fn positions(rule: &str, n: usize) -> Result<usize, CliError> {
    if n < 1 {
        return Err(usage("n", "must be at least 1"));
    }
    let rule: KRule = rule.parse().map_err(|e: Error| usage("k", e))?;
    rule.positions(n).map_err(|e| usage("k", e))
}

/// Parse `argv` (including the program name) into a validated invocation.
pub fn parse_args<I, T>(argv: I) -> Result<CliInvocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Info(e.to_string())
        }
        _ => CliError::Usage(e.to_string().trim_start_matches("error: ").trim_end().to_string()),
    })?;
    if cli.threads == Some(0) {
        return Err(usage("threads", "must be positive"));
    }
    let is_curve = matches!(cli.command, Command::Curve(_));
    let task = match cli.command {
        Command::Solve(a) => Task::Solve {
            k: positions(&a.state.k, a.state.n)?,
            n: a.state.n,
            policy: table_policy(&a.state.policy)?,
            values: a.values,
        },
        Command::Walk(a) => Task::Walk { k: positions(&a.k, a.n)?, n: a.n, policy: table_policy(&a.policy)? },
        Command::Mistakes(a) => Task::Mistakes { k: positions(&a.k, a.n)?, n: a.n, policy: table_policy(&a.policy)? },
        Command::Curve(a) | Command::Report(a) => {
            let grid: Grid = a.grid.parse().map_err(|e: Error| usage("grid", e))?;
            let k_rule: KRule = a.k.parse().map_err(|e: Error| usage("k", e))?;
            for n in grid.values() {
                k_rule.positions(n).map_err(|e| usage("k", e))?;
            }
            if is_curve {
                Task::Curve { grid, k_rule }
            } else {
                Task::Report { grid, k_rule }
            }
        }
        Command::Simulate(a) => {
            if a.replicates == 0 {
                return Err(usage("replicates", "must be at least 1"));
            }
            let policy: SimPolicy = a.policy.parse().map_err(|e: Error| usage("policy", e))?;
            Task::Simulate(SimConfig {
                k: positions(&a.k, a.n)?,
                n: a.n,
                policy,
                replicates: a.replicates,
                seed: a.seed,
            })
        }
    };
    Ok(CliInvocation { threads: cli.threads, out: cli.out, format: cli.format, task })
}

/// Run an invocation, writing the payload to `--out` (or `stdout`) and a
/// one-line summary to `stderr`.
pub fn execute(inv: &CliInvocation, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = inv.threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder.build().map_err(|e| CliError::Io(e.to_string()))?;

    let mut payload = Vec::new();
    let summary = pool.install(|| dispatch(inv, &mut payload))?;

    match &inv.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(&payload)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        None => stdout.write_all(&payload).map_err(|e| CliError::Io(e.to_string()))?,
    }
    writeln!(stderr, "{}", summary.line).map_err(|e| CliError::Io(e.to_string()))?;
    match summary.violation {
        Some(v) => Err(CliError::Numeric(format!("invariant violated: {v}"))),
        None => Ok(()),
    }
}

struct Summary {
    line: String,
    violation: Option<String>,
}

fn dispatch(inv: &CliInvocation, out: &mut Vec<u8>) -> Result<Summary, CliError> {
    let json = inv.format == Format::Json;
    match &inv.task {
        Task::Solve { n, k, policy, values } => {
            let mut tables = solve(*policy, *n)?;
            if *values {
                tables = tables.with_values();
            }
            if json {
                output::write_json(&mut *out, &Versioned::new(&tables))?;
            } else {
                output::write_tables_csv(&mut *out, &tables)?;
            }
            let violation = tables.check_invariants().err().map(|e| e.to_string());
            Ok(Summary {
                line: format!(
                    "n={n} k={k} policy={policy} regret={} upper_bound={}",
                    tables.r.get(*n, *k),
                    upper_bound(*n)
                ),
                violation,
            })
        }
        Task::Curve { grid, k_rule } => {
            let curve = sweep(grid, *k_rule)?;
            if json {
                output::write_json(&mut *out, &Versioned::new(&curve))?;
            } else {
                output::write_curve_csv(&mut *out, &curve)?;
            }
            let v = violations(&curve);
            let line = match curve.entries.last() {
                Some(e) => format!(
                    "{} horizons; n={} k={} regret={} bounds=[{}, {}]",
                    curve.entries.len(),
                    e.n,
                    e.k,
                    e.regret_optimal,
                    e.lower_bound.map_or("n/a".into(), |l| l.to_string()),
                    e.upper_bound
                ),
                None => "empty grid".into(),
            };
            Ok(Summary { line, violation: (!v.is_empty()).then(|| v.join("; ")) })
        }
        Task::Report { grid, k_rule } => {
            let report = build_report(sweep(grid, *k_rule)?)?;
            if json {
                output::write_json(&mut *out, &report)?;
            } else {
                output::write_curve_csv(&mut *out, &report.curve)?;
            }
            Ok(Summary {
                line: format!(
                    "{} horizons; slope={} residual={} violations={}",
                    report.curve.entries.len(),
                    report.fitted_slope,
                    report.fit_residual,
                    report.violations.len()
                ),
                violation: (!report.violations.is_empty()).then(|| report.violations.join("; ")),
            })
        }
        Task::Walk { n, k, policy } => {
            let tables = solve(*policy, *n)?;
            let dist = forward_distribution(&tables, *n, *k)?;
            let rows = walk_rows(&dist, &tables)?;
            if json {
                output::write_json(&mut *out, &Versioned::new(&rows))?;
            } else {
                output::write_walk_csv(&mut *out, *n, *k, *policy, &rows)?;
            }
            let leak = dist
                .slices
                .iter()
                .map(|s| (s.total() - 1.0).abs())
                .fold(0.0, f64::max);
            let rebuilt = decomposed_regret(&dist, &tables)?;
            let regret = tables.r.get(*n, *k);
            let violation = if leak > 1e-12 {
                Some(format!("walk mass off by {leak:e}"))
            } else if (rebuilt - regret).abs() > 1e-9 {
                Some(format!("regret decomposition {rebuilt} differs from table {regret}"))
            } else {
                None
            };
            Ok(Summary { line: format!("n={n} k={k} policy={policy} regret={regret} decomposed={rebuilt}"), violation })
        }
        Task::Mistakes { n, k, policy } => {
            let tables = solve(*policy, *n)?;
            let dist = forward_distribution(&tables, *n, *k)?;
            let stats = expected_mistakes(&dist, &tables)?;
            if json {
                output::write_json(&mut *out, &Versioned::new(&stats))?;
            } else {
                output::write_mistakes_csv(&mut *out, *n, *k, &stats)?;
            }
            Ok(Summary {
                line: format!("n={n} k={k} policy={policy} expected_mistakes={}", stats.total),
                violation: None,
            })
        }
        Task::Simulate(config) => {
            let tables = match config.policy.table_kind() {
                Some(kind) => Some(solve(kind, config.n)?),
                None => None,
            };
            let summary = estimate_regret(config, tables.as_ref())?;
            if json {
                output::write_json(&mut *out, &summary)?;
            } else {
                output::write_record_csv(&mut *out, "simulation", &summary)?;
            }
            let dp = tables.as_ref().map(|t| t.r.get(config.n, config.k));
            Ok(Summary {
                line: format!(
                    "n={} k={} policy={} mean_regret={} std_error={}{}",
                    config.n,
                    config.k,
                    config.policy,
                    summary.mean_regret,
                    summary.std_error,
                    dp.map_or(String::new(), |r| format!(" dp_regret={r}"))
                ),
                violation: (summary.mean_regret < 0.0).then(|| "negative mean regret".to_string()),
            })
        }
    }
}

/// Parse, execute and map the outcome to an exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse_args(argv).and_then(|inv| execute(&inv, stdout, stderr));
    match result {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            let _ = write!(stdout, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
