use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psiset_core::scenarios::{plot_data, validate_ladder, write_atomic, Format, ProblemSpec, RunOptions};
use psiset_core::{list_builtins, load_scenario, run_scenario, Scenario, ScenarioError};
use rayon::prelude::*;

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "psiset", version, about = "Run set-optimization scenarios and emit machine-readable reports")]
struct Cli {
    /// Print log messages (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin scenarios.
    List,
    /// Run one builtin or scenario file.
    Run {
        /// Builtin name or path to a scenario JSON file.
        target: String,
        #[command(flatten)]
        opts: Overrides,
    },
    /// Run every builtin scenario.
    CheckAll {
        #[command(flatten)]
        opts: Overrides,
    },
    /// Min-set membership of every grid point, as CSV.
    EmitPlotData {
        target: String,
        #[command(flatten)]
        opts: Overrides,
    },
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Strictly decreasing positive ε values, comma separated.
    #[arg(long, value_delimiter = ',')]
    eps_ladder: Option<Vec<f64>>,
    /// Grid resolution of a builtin (points per unit length).
    #[arg(long)]
    grid: Option<usize>,
    /// Comparison tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write reports to this directory instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output format; without it both are written (JSON on stdout).
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

enum Failure {
    Usage(String),
    Scenario(ScenarioError),
    Checks,
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        Failure::Scenario(e)
    }
}

fn resolve(target: &str) -> Result<Scenario, ScenarioError> {
    let path = Path::new(target);
    if path.extension().is_some_and(|e| e == "json") || path.exists() {
        load_scenario(path)
    } else {
        Scenario::builtin(target)
    }
}

fn apply(mut sc: Scenario, o: &Overrides) -> Result<Scenario, Failure> {
    if let Some(ladder) = &o.eps_ladder {
        validate_ladder(ladder).map_err(|e| Failure::Usage(format!("--eps-ladder: {e}")))?;
        sc.eps_ladder = ladder.clone();
    }
    if let Some(g) = o.grid {
        match &mut sc.problem {
            ProblemSpec::Builtin { grid, .. } if g > 0 => *grid = Some(g),
            ProblemSpec::Builtin { .. } => return Err(Failure::Usage("--grid must be positive".into())),
            _ => return Err(Failure::Usage("--grid applies to builtin scenarios only".into())),
        }
    }
    if let Some(t) = o.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::Usage("--tol must be a nonnegative number".into()));
        }
        sc.tol = Some(t);
    }
    if o.seed.is_some() {
        sc.seed = o.seed;
    }
    Ok(sc)
}

fn run_options(o: &Overrides) -> RunOptions {
    RunOptions { out_dir: o.out_dir.clone(), formats: o.format.map(|f| vec![f.into()]) }
}

fn summarize(out: &psiset_core::scenarios::RunOutcome) {
    let failed = out.failures().count();
    eprintln!("{}: {} ({} checks, {failed} failed)", out.name, if failed == 0 { "PASS" } else { "FAIL" }, out.checks.len());
    for c in out.failures() {
        eprintln!("  FAIL {}: {}", c.name, c.detail);
    }
}

fn cmd_list() -> Result<(), Failure> {
    let mut stdout = std::io::stdout().lock();
    for e in list_builtins() {
        let _ = writeln!(stdout, "{:<24} {}  [{}]", e.name, e.summary, e.source);
    }
    Ok(())
}

fn cmd_run(target: &str, o: &Overrides) -> Result<(), Failure> {
    let sc = apply(resolve(target)?, o)?;
    let out = run_scenario(&sc, &run_options(o))?;
    summarize(&out);
    if out.files.is_empty() && o.out_dir.is_none() {
        let body = match o.format {
            Some(OutFormat::Csv) => &out.csv,
            _ => &out.json,
        };
        print!("{body}");
    }
    for f in &out.files {
        log::info!("wrote {}", f.display());
    }
    if out.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_check_all(o: &Overrides) -> Result<(), Failure> {
    let scenarios = list_builtins().into_iter().map(|e| apply(Scenario::builtin(e.name)?, o)).collect::<Result<Vec<_>, Failure>>()?;
    let opts = run_options(o);
    let results: Vec<Result<_, ScenarioError>> = scenarios.par_iter().map(|sc| run_scenario(sc, &opts)).collect();
    let mut failed = false;
    for (sc, r) in scenarios.iter().zip(results) {
        let out = r?;
        failed |= !out.passed();
        println!("{:<24} {}", sc.name, if out.passed() { "PASS" } else { "FAIL" });
        if !out.passed() {
            summarize(&out);
        }
    }
    if failed {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn cmd_plot(target: &str, o: &Overrides) -> Result<(), Failure> {
    if matches!(o.format, Some(OutFormat::Json)) {
        return Err(Failure::Usage("plot data is CSV only".into()));
    }
    let sc = apply(resolve(target)?, o)?;
    let body = plot_data(&sc)?;
    match &o.out_dir {
        Some(dir) => write_atomic(&dir.join(format!("{}.plot.csv", sc.name)), body.as_bytes())?,
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).format_timestamp(None).init();
    let result = match &cli.command {
        Command::List => cmd_list(),
        Command::Run { target, opts } => cmd_run(target, opts),
        Command::CheckAll { opts } => cmd_check_all(opts),
        Command::EmitPlotData { target, opts } => cmd_plot(target, opts),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Checks) => ExitCode::from(EXIT_CHECK),
        Err(Failure::Scenario(e)) => {
            eprintln!("error: {e}");
            // Computation failures inside a run are definition-level failures.
            ExitCode::from(if matches!(e, ScenarioError::Check(_)) { EXIT_CHECK } else { EXIT_INPUT })
        }
    }
}
