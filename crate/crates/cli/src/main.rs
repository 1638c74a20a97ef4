use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use certipoly_cli::commands::*;
use certipoly_cli::{CliError, SystemFile};

/// Certified polynomial system solving and control pipelines.
#[derive(Parser)]
#[command(name = "certipoly", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isolating boxes of a zero-dimensional system.
    Solve {
        file: PathBuf,
        /// Output binary precision.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Rational univariate representation.
    Rur { file: PathBuf },
    /// Discriminant variety of a parametric system.
    Dv { file: PathBuf },
    /// Open cells of parameter space adapted to the given polynomials.
    Cad { file: PathBuf },
    /// Structural stability of the denominator D.
    Stability {
        file: PathBuf,
        /// Classify every open cell of parameter space.
        #[arg(long)]
        parametric: bool,
        /// Write `u1 u2 ... verdict` lines here (with --parametric).
        #[arg(long, requires = "parametric")]
        plot: Option<PathBuf>,
    },
    /// Enclosure of the H-infinity norm of a transfer matrix.
    Hinf {
        file: PathBuf,
        #[arg(long)]
        starting_precision: Option<u32>,
    },
    /// Certify and tighten one solution near a point.
    Refine {
        file: PathBuf,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        point: String,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Parameter identification from an ODE model and data.
    Identify { file: PathBuf },
}

fn load(path: &PathBuf) -> Result<SystemFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    SystemFile::parse(&text)
}

fn emit<T: Serialize>(v: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{s}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Internal(e.to_string())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Solve { file, precision } => emit(&cmd_solve(&load(&file)?, precision)?),
        Cmd::Rur { file } => emit(&cmd_rur(&load(&file)?)?),
        Cmd::Dv { file } => emit(&cmd_dv(&load(&file)?)?),
        Cmd::Cad { file } => emit(&cmd_cad(&load(&file)?)?),
        Cmd::Stability { file, parametric, plot } => {
            let sf = load(&file)?;
            if !parametric {
                return emit(&cmd_stability(&sf)?);
            }
            let (out, verdict) = cmd_stability_parametric(&sf)?;
            if let Some(path) = plot {
                std::fs::write(&path, plot_data(&verdict))
                    .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
            }
            emit(&out)
        }
        Cmd::Hinf { file, starting_precision } => emit(&cmd_hinf(&load(&file)?, starting_precision)?),
        Cmd::Refine { file, point, precision } => {
            let sf = load(&file)?;
            emit(&cmd_refine(&sf, &parse_point(&point)?, precision)?)
        }
        Cmd::Identify { file } => emit(&cmd_identify(&load(&file)?)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("certipoly: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
