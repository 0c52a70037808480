//! Command-line surface for the triangular-well solver: solve wells,
//! regenerate and compare the embedded reference table, locate critical
//! depths, dump wavefunctions, and expose the oracle and Airy evaluators.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use triwell::eigen;
use triwell::oracle::{oracle_spectrum, OracleConfig};
use triwell::report;
use triwell::wavefn;
use triwell::{Convention, DimensionlessWell, Error};

use output::{write_document, Document};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Eq1,
    Halfwidth2,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Eq1 => Convention::Eq1,
            ConventionArg::Halfwidth2 => Convention::Halfwidth2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    #[value(name = "json-like")]
    JsonLike,
}

#[derive(Parser)]
#[command(
    name = "triwell",
    version,
    about = "Bound states of a finite-range triangular potential well",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Geometric reading of the well
    #[arg(long, global = true, value_enum, default_value = "eq1")]
    convention: ConventionArg,

    /// Root refinement tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Output format for tabular documents
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Output path (standard output when omitted); files are written
    /// atomically via a temporary sibling
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the bound spectrum of one well
    Solve {
        /// Well depth in units of hbar^2/(2 m a^2)
        #[arg(long, allow_hyphen_values = true)]
        vbar0: f64,
    },
    /// Emit the embedded reference table; with --compare, recompute every
    /// row under both conventions and run the oracle on each
    Table1 {
        #[arg(long)]
        compare: bool,
    },
    /// Sample one normalized eigenfunction on a uniform grid
    Wavefunction {
        #[arg(long, allow_hyphen_values = true)]
        vbar0: f64,
        /// State index (0 = ground state)
        #[arg(long)]
        state: usize,
        /// Number of samples
        #[arg(long, default_value_t = 1001)]
        grid: usize,
    },
    /// Depths at which new bound states detach, for both conventions
    Critical {
        #[arg(long, default_value_t = 2)]
        max_n: usize,
    },
    /// Finite-difference oracle spectrum (diagnostic)
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        vbar0: f64,
        #[arg(long, default_value_t = 8.0)]
        half_domain: f64,
        #[arg(long, default_value_t = 4001)]
        grid_points: usize,
        #[arg(long, default_value_t = 3)]
        refine_levels: usize,
    },
    /// Airy function values at one argument (diagnostic)
    Airy {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for violated preconditions and unusable arguments, 1 for runtime
/// solver failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonFinite
        | Error::AiryOverflow { .. }
        | Error::OutOfRange { .. }
        | Error::InvalidWell(_)
        | Error::OutsideWindow { .. }
        | Error::BadTolerance(_)
        | Error::InvalidConfig(_) => 2,
        Error::NoSuchState { .. }
        | Error::NoConvergence { .. }
        | Error::RatioPole { .. }
        | Error::OracleUnstable { .. }
        | Error::NotARoot { .. }
        | Error::TableTampered => 1,
    }
}

fn run(cli: &Cli) -> triwell::Result<()> {
    let convention: Convention = cli.convention.into();
    match &cli.command {
        Command::Solve { vbar0 } => {
            let well = DimensionlessWell::new(*vbar0, convention)?;
            let spectrum = eigen::solve_spectrum(&well, cli.tol)?;
            emit(cli, output::spectrum_document(&spectrum))
        }
        Command::Table1 { compare } => {
            if !compare {
                let rows = report::table1_rows()?;
                return emit(cli, output::table1_document(&rows));
            }
            let rep = report::compare_table1(cli.tol)?;
            let summary = report::render_report_summary(&rep);
            emit(cli, output::report_document(&rep))?;
            // the human-readable summary goes wherever the CSV did not
            if cli.output.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            Ok(())
        }
        Command::Wavefunction { vbar0, state, grid } => {
            let well = DimensionlessWell::new(*vbar0, convention)?;
            let spectrum = eigen::solve_spectrum(&well, cli.tol)?;
            let Some(target) = spectrum.states.get(*state) else {
                return Err(Error::NoSuchState {
                    n: *state,
                    count: spectrum.states.len(),
                });
            };
            let psi = wavefn::build_state(&well, target)?;
            emit(cli, output::wavefunction_document(&psi, *grid))
        }
        Command::Critical { max_n } => {
            if *max_n < 1 || *max_n > eigen::CRITICAL_N_MAX {
                return Err(Error::InvalidConfig(format!(
                    "max_n must lie in 1..={}, got {max_n}",
                    eigen::CRITICAL_N_MAX
                )));
            }
            let mut rows = Vec::with_capacity(*max_n);
            for n in 1..=*max_n {
                rows.push(output::CriticalRow {
                    n,
                    eq1: eigen::critical_depth(Convention::Eq1, n, cli.tol)?,
                    halfwidth2: eigen::critical_depth(Convention::Halfwidth2, n, cli.tol)?,
                    reference_onset: report::REFERENCE_ONSETS.get(n - 1).copied(),
                });
            }
            emit(cli, output::critical_document(&rows))
        }
        Command::Oracle {
            vbar0,
            half_domain,
            grid_points,
            refine_levels,
        } => {
            let well = DimensionlessWell::new(*vbar0, convention)?;
            let config = OracleConfig {
                half_domain: *half_domain,
                grid_points: *grid_points,
                refine_levels: *refine_levels,
            };
            let spectrum = oracle_spectrum(&well, &config)?;
            emit(cli, output::oracle_document(&spectrum))
        }
        Command::Airy { x } => {
            if !x.is_finite() {
                return Err(Error::NonFinite);
            }
            if x.abs() > triwell::airy::SCALED_MAX_ABS_X {
                return Err(Error::OutOfRange {
                    x: x.abs(),
                    max: triwell::airy::SCALED_MAX_ABS_X,
                });
            }
            let plain = triwell::airy_eval(*x)?;
            let scaled = triwell::airy_eval_scaled(*x)?;
            emit(cli, output::airy_document(&plain, &scaled))
        }
    }
}

fn emit(cli: &Cli, doc: Document) -> triwell::Result<()> {
    let rendered = match cli.format {
        Format::Csv => doc.csv,
        Format::JsonLike => doc.json,
    };
    write_document(cli.output.as_deref(), &rendered)
}
