//! `thinfree`: run the thin obstacle pipelines and persist their reports.

mod config;
mod render;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{FileConfig, Settings};

#[derive(Parser, Debug)]
#[command(name = "thinfree", version, about = "Thin obstacle problems with prescribed free-boundary geometry")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Half-width of the box.
    #[arg(long = "L", global = true)]
    half_width: Option<f64>,
    /// Grid spacing.
    #[arg(long = "h", global = true)]
    spacing: Option<f64>,
    /// Over-relaxation factor in (0, 2).
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// PSOR stopping tolerance on the largest update.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Contact threshold.
    #[arg(long, global = true)]
    tauc: Option<f64>,
    /// Output directory (default: $THINFREE_OUT/<run name>).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomised suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// `key = value` settings file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Red-black sweeps on this many threads instead of lexicographic ones.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Also write the full grid as CSV and a binary checkpoint.
    #[arg(long, global = true)]
    dump_grid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Compact,
    Positivity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named example.
    Example { name: String },
    /// Solve for a user polynomial.
    Solve {
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Thin-space dimension.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Approximate the point cloud in a CSV file (`x,y` per line) by a contact set.
    Approx {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Contact set squeezed between {f <= -delta} and {f <= 0}.
    Subsets {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        delta: Option<f64>,
        /// Comma-separated exponents k.
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<u32>>,
    },
    /// Run the randomised property suites.
    Verify {
        #[arg(long)]
        oracle: Option<usize>,
        #[arg(long)]
        comparison: Option<usize>,
    },
}

fn settings(cli: &Cli) -> anyhow::Result<Settings> {
    let g = &cli.global;
    let mut flags = Settings {
        half_width: g.half_width,
        spacing: g.spacing,
        omega: g.omega,
        tol: g.tol,
        tau_c: g.tauc,
        out: g.out.clone(),
        seed: g.seed,
        workers: g.workers,
        dump_grid: g.dump_grid,
        ..Settings::default()
    };
    match &cli.command {
        Command::Solve { n, .. } => flags.n = *n,
        Command::Approx { eps, .. } => flags.eps = *eps,
        Command::Subsets { delta, ladder, .. } => {
            flags.delta = *delta;
            flags.ladder = ladder.clone();
        }
        _ => {}
    }
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    Settings::merge(flags, &file)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let settings = match settings(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let job = match run::Job::from_command(&cli.command, &settings) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match run::execute(&job, &settings) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
