//! `hardy`: command-line front end for the `hardy-locality` crate.
//!
//! Exit codes: 0 success, 1 verification failure or rejected derivation,
//! 2 bad input (numbers, domain, parse errors, missing files), 3 usage error.

mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use hardy_locality::cfl::Semantics;
use hardy_locality::correlations::DEFAULT_EPS;

use commands::{CliError, CmdResult, Format, EXIT_INPUT, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Hardy-state correlations and counterfactual locality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
}

#[derive(Args)]
struct ThetaArg {
    /// State parameter in radians, in (-pi/2, pi/2).
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Joint outcome table for one left and one right setting.
    Probs {
        #[command(flatten)]
        theta: ThetaArg,
        /// LEFT,RIGHT with LEFT in {Lz, Lx} and RIGHT in {Rz, Rtheta}.
        #[arg(long)]
        settings: String,
        #[command(flatten)]
        common: Common,
    },
    /// Chain links, decomposition residuals and the forced zero cells.
    Correlations {
        #[command(flatten)]
        theta: ThetaArg,
        /// Tolerance for a link to count as certain.
        #[arg(long, default_value_t = DEFAULT_EPS, allow_negative_numbers = true)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// The three certain links and the conditional they fail to compose to.
    Chain {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long, default_value_t = DEFAULT_EPS, allow_negative_numbers = true)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Local hidden-variable assignments consistent with the zero cells.
    HvEnum {
        /// State parameter in radians, in (0, pi/2).
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = DEFAULT_EPS, allow_negative_numbers = true)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Check a derivation file, or a builtin script by name (stapp-A, stapp-B).
    Check {
        path: String,
        #[arg(long, value_enum, default_value = "operational")]
        semantics: SemanticsArg,
        /// Replace the angle given in the file header.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded Monte Carlo sample of joint outcomes.
    Sample {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long)]
        settings: String,
        /// Number of samples, at least 1.
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Chain conditional and Hardy-event probability over a grid of angles.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, allow_negative_numbers = true)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SemanticsArg {
    Realist,
    Operational,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Realist => Semantics::Realist,
            SemanticsArg::Operational => Semantics::Operational,
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Probs {
            theta,
            settings,
            common,
        } => {
            let s = commands::parse_settings(&settings)?;
            commands::probs(commands::theta(theta.theta)?, s, common.format)
        }
        Command::Correlations { theta, eps, common } => commands::chain(
            commands::theta(theta.theta)?,
            check_eps(eps)?,
            true,
            common.format,
        ),
        Command::Chain { theta, eps, common } => commands::chain(
            commands::theta(theta.theta)?,
            check_eps(eps)?,
            false,
            common.format,
        ),
        Command::HvEnum { theta, eps, common } => {
            let t = commands::theta(theta)?.require_positive()?;
            commands::hv_enum(t, check_eps(eps)?, common.format)
        }
        Command::Check {
            path,
            semantics,
            theta,
            common,
        } => {
            let t = theta.map(commands::theta).transpose()?;
            commands::check(&path, semantics.into(), t, common.format)
        }
        Command::Sample {
            theta,
            settings,
            n,
            seed,
            common,
        } => {
            let s = commands::parse_settings(&settings)?;
            let t = commands::theta(theta.theta)?;
            commands::sample(t, s, n, seed, common.format)
        }
        Command::Sweep {
            theta_min,
            theta_max,
            steps,
            common,
        } => commands::sweep(theta_min, theta_max, steps, common.format),
    }
}

fn check_eps(eps: f64) -> Result<f64, CliError> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(eps)
    } else {
        Err(CliError::input(format!(
            "--eps must be a non-negative number, got {eps}"
        )))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::ValueValidation => EXIT_INPUT,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
