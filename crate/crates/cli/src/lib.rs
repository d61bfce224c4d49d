//! `shortwell`: batch front end for the perturbation-series library.
//!
//! Every subcommand computes its whole result in memory, renders it as JSON
//! or CSV and only then writes it, so a failing run leaves no output behind.
//! Exit codes: 0 success, 2 usage error, 3 numerical failure.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use shortwell_core::{Error, ModelKind};

pub const SUBCOMMANDS: [&str; 7] = ["series", "tmethod", "lmethod", "exact", "branch", "sum", "scan"];

#[derive(Debug, Parser)]
#[command(name = "shortwell", version, about = "Perturbation series for bound states of short-range 1D wells")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for the flags; explicit
    /// flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesMethod {
    /// Exact rational series from the recast quantization condition.
    Implicit,
    /// Square well with an attached delta of strength --beta (binary64).
    Beta,
    /// Delta well in a periodic box of length --L (exact rationals).
    Lseries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    /// [L/M] Padé; --degrees L,M.
    Pade,
    /// Quadratic Padé; --degrees p,q,r.
    Qpade,
    /// Two-point Padé in sqrt(lambda); --degrees p_small,q_large.
    Tppade,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state energy series coefficients.
    #[command(args_override_self = true)]
    Series {
        /// poschl_teller | square | delta | exponential
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long, value_enum, default_value_t = SeriesMethod::Implicit)]
        method: SeriesMethod,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        beta: Option<f64>,
        /// Periodic box length.
        #[arg(long = "L")]
        length: Option<f64>,
    },
    /// w-coefficients of -(-e)^(1/2) by quadrature, with the energy series.
    #[command(args_override_self = true)]
    Tmethod {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        /// Highest w order, at most 4.
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Periodic-box RSPT coefficients and, with --lambda, diagonalization.
    #[command(args_override_self = true)]
    Lmethod {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long = "L")]
        length: f64,
        #[arg(long, default_value_t = shortwell_core::lmethod::DEFAULT_NMAX)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        lambda: Option<f64>,
        /// Add the Richardson limit over nmax, 2 nmax, 4 nmax.
        #[arg(long)]
        extrapolate: bool,
    },
    /// Exact eigenvalue from the quantization condition.
    #[command(args_override_self = true)]
    Exact {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long = "L")]
        length: Option<f64>,
    },
    /// Branch point (epsilon_c, lambda_c) limiting the series.
    #[command(args_override_self = true)]
    Branch {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
    },
    /// Approximant built from a series document written by `series`.
    #[command(args_override_self = true)]
    Sum {
        #[arg(long, value_enum)]
        kind: SumKind,
        /// Comma-separated degrees.
        #[arg(long)]
        degrees: String,
        /// Evaluation point lambda.
        #[arg(long)]
        at: f64,
        #[arg(long)]
        series_file: PathBuf,
        /// Large-lambda terms a0,a1,... of a0 u² + a1 u + ... for tppade;
        /// defaults to the model's known terms.
        #[arg(long, allow_hyphen_values = true)]
        large: Option<String>,
    },
    /// Comparison table of methods over a lambda grid.
    #[command(args_override_self = true)]
    Scan {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        lambda_min: f64,
        #[arg(long)]
        lambda_max: f64,
        /// Number of intervals; the grid has steps + 1 points.
        #[arg(long)]
        steps: usize,
        /// Comma-separated subset of exact,series,pade,qpade,tppade.
        #[arg(long, default_value = "exact,series,pade")]
        methods: String,
        /// Series order feeding the approximants.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Also write a gnuplot script plotting the CSV given by --output.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

/// Why a run stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use Error::*;
        match e {
            InvalidInput(_) | InvalidScaling(_) | NotAvailable(_) | NoClosedForm(_) | WellExceedsBox(_)
            | DegenerateLevels | UnsupportedOrder(_) | NoSuchBoundState(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match config::expand(argv) {
        Ok(a) => a,
        Err(m) => {
            let _ = writeln!(stderr, "usage error: {m}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "{f}");
            f.code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let out = commands::compute(cli)?;
    if let Some(plot) = &out.plot {
        // the script names the CSV, so both must land on disk
        let csv = cli.output.as_ref().filter(|_| cli.format == Format::Csv).ok_or_else(|| {
            Failure::Usage("--plot needs --format csv and --output".into())
        })?;
        write_atomic(csv, &out.text)?;
        let script = shortwell_core::io::gnuplot_script(&csv.to_string_lossy(), plot);
        return write_atomic(cli_plot_path(cli)?, &script);
    }
    match &cli.output {
        Some(path) => write_atomic(path, &out.text),
        None => stdout.write_all(out.text.as_bytes()).map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn cli_plot_path(cli: &Cli) -> Result<&Path, Failure> {
    match &cli.command {
        Command::Scan { plot: Some(p), .. } => Ok(p),
        _ => Err(Failure::Usage("--plot applies to scan only".into())),
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
