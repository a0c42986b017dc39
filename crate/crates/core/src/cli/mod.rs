//! Command-line front end: `fw poly | norms | acf | phase | series | check`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{FwError, Result};
use crate::lemniscatic::FocusOrder;

mod check;
mod commands;
mod config;
pub mod output;

pub use check::{run_suites, CheckOutcome, Suite};
pub use commands::{cmd_acf, cmd_check, cmd_norms, cmd_phase, cmd_poly, cmd_series};
pub use config::{parse_complex, FunctionSelector, JobConfig};

#[derive(Debug, Parser)]
#[command(
    name = "fw",
    version,
    about = "Faber-Walsh polynomials, series and convergence factors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of b_0, ..., b_K as CSV (k, power, re, im).
    Poly(PolyArgs),
    /// Norm-decay table (k, norm, normalized, acf_pow_k).
    Norms(NormsArgs),
    /// Asymptotic convergence factors at a point, on a real profile or a grid.
    Acf(AcfArgs),
    /// Phase portrait of b_k as a binary PPM image.
    Phase(PhaseArgs),
    /// Faber-Walsh series coefficients and sup-norm errors of partial sums.
    Series(SeriesArgs),
    /// Runs the built-in invariant suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Set descriptor (JSON).
    #[arg(long)]
    pub set: PathBuf,
    /// Which focus opens the focus sequence.
    #[arg(long, value_enum, default_value_t = FocusOrder::DescendingReal)]
    pub seq_order: FocusOrder,
    /// Initial node count of the adaptive quadrature (or sampling density for norms).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum PolyMethod {
    #[default]
    Recursion,
    Contour,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, visible_alias = "kmax")]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t)]
    pub method: PolyMethod,
    /// Also write the polynomials as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, visible_alias = "degree")]
    pub kmax: usize,
    /// `re,im`
    #[arg(long, allow_hyphen_values = true)]
    pub z0: String,
}

#[derive(Debug, Args)]
pub struct AcfArgs {
    #[command(flatten)]
    pub set: SetArgs,
    /// Single point `re,im`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["grid", "profile"])]
    pub z0: Option<String>,
    /// Complex rectangle `x0,x1,y0,y1,nx,ny`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "profile")]
    pub grid: Option<String>,
    /// Real segment `x0,x1,n`.
    #[arg(long, allow_hyphen_values = true)]
    pub profile: Option<String>,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, visible_alias = "kmax")]
    pub degree: usize,
    /// Window `x0,x1,y0,y1,nx,ny`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, visible_alias = "degree")]
    pub kmax: usize,
    /// `exp`, `rational:re,im` for 1/(z - z*), or `poly:c0,c1,...`.
    #[arg(long, allow_hyphen_values = true)]
    pub function: String,
    /// Level of the integration contour (rational functions only).
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Run a single suite.
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}

/// Exit status for an error: 3 for numerical non-convergence, 2 otherwise.
pub fn exit_code(err: &FwError) -> i32 {
    if err.is_numerical() {
        3
    } else {
        2
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Poly(a) => cmd_poly(&a),
        Command::Norms(a) => cmd_norms(&a),
        Command::Acf(a) => cmd_acf(&a),
        Command::Phase(a) => cmd_phase(&a),
        Command::Series(a) => cmd_series(&a),
        Command::Check(a) => cmd_check(&a),
    }
}

/// Worker count from `FW_THREADS`; `None` leaves the rayon default.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("FW_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(FwError::invalid(format!(
                "FW_THREADS = '{v}' is not a positive integer"
            ))),
        },
    }
}

/// Parses the process arguments, runs the command in a pool capped by
/// `FW_THREADS` and returns the exit status.
pub fn main_exit_code() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = threads_from_env().and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| FwError::invalid(format!("thread pool: {e}")))?;
        pool.install(|| run(cli))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fw: {e}");
            exit_code(&e)
        }
    }
}
