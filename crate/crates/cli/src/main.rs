use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schwarzian_lab::commands::{cmd_bound, cmd_extremal, cmd_norm, cmd_sweep, GridFlags, NormKind};
use schwarzian_lab::verify::{all_passed, run_all, seed_from_env, verify_report, Hooks};
use schwarzian_lab::{CliError, Report};

/// Schwarzian and pre-Schwarzian bounds, norms and extremal functions for
/// the Robertson classes on the unit disk.
#[derive(Debug, Parser)]
#[command(name = "schwarzian-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form norm bounds, branch radius and pointwise bound.
    Bound {
        /// Angle in radians or as pi/k, -pi/k.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Radius at which to evaluate the pointwise bound.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
    },
    /// Numerical hyperbolic sup-norm of a specified function.
    Norm {
        /// e.g. "f0(alpha=pi/3)", "fz0p(alpha=0, z0=0.5)", "robertson(alpha=0.2, p=-1, b=0.4)",
        /// "series(coeffs=[0, 1, 0.5+0.1i])", "identity".
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        kind: NormKind,
        #[arg(long)]
        radii: Option<usize>,
        #[arg(long)]
        angles: Option<usize>,
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Extremal construction at a real point z0.
    Extremal {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        z0: f64,
    },
    /// Bounds and numerical norms of f0 over a range of angles, as CSV.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        alpha_min: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha_max: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance suite; exit status 1 if any criterion fails.
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let report = match cli.command {
        Command::Bound { alpha, z } => cmd_bound(&alpha, z)?,
        Command::Norm {
            spec,
            kind,
            radii,
            angles,
            rmax,
        } => cmd_norm(
            &spec,
            kind,
            GridFlags {
                radii,
                angles,
                rmax,
            },
        )?,
        Command::Extremal { alpha, z0 } => cmd_extremal(&alpha, z0)?,
        Command::Sweep {
            alpha_min,
            alpha_max,
            steps,
            out,
        } => cmd_sweep(&alpha_min, &alpha_max, steps, &out)?,
        Command::Verify { out } => {
            let seed = seed_from_env().map_err(CliError::Usage)?;
            let outcomes = run_all(seed, Hooks::default());
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let out_text = out.as_ref().map(|p| p.display().to_string());
            emit(
                &verify_report(&outcomes, seed, out_text.as_deref()),
                out.as_ref(),
            )?;
            return Ok(if all_passed(&outcomes) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    };
    emit(&report, None)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
