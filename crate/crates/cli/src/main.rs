//! `riesz`: run verification suites, parameter sweeps and domain diagnostics.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use riesz_core::suite::{self, ProjectionParams, RandomParams};
use riesz_core::{domain, report, Error, SequenceSpec, VerificationReport, DEFAULT_TOL};

#[derive(Parser, Debug)]
#[command(name = "riesz", version, about = "Riesz-basis operator verification")]
struct Cli {
    /// Residual tolerance for every check.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for generators and test vectors.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full check battery against one model.
    Verify {
        suite: Suite,
        #[command(flatten)]
        model: ModelArgs,
        /// Three-level parameter in [0, 2pi).
        #[arg(long)]
        t: Option<f64>,
        /// Support size of u for the projection model.
        #[arg(long, default_value_t = 3)]
        support: usize,
    },
    /// Run a suite over a parameter grid and emit one report per point.
    Sweep {
        suite: SweepSuite,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Smallest support size of u.
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Largest support size of u.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Decide whether sum |alpha_n c_n|^2 is finite.
    Domain {
        #[arg(long)]
        alpha: SequenceSpec,
        #[arg(long)]
        coeff: SequenceSpec,
        #[arg(long, default_value_t = domain::DEFAULT_N_MAX)]
        n_max: usize,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, default_value_t = 8)]
    dim: usize,
    /// Eigenvalue sequence, e.g. `poly:1` or `list:0,1,2.5`.
    #[arg(long, default_value = "poly:1")]
    alpha: SequenceSpec,
    /// Ladder weights; ladder checks run only when given.
    #[arg(long)]
    gamma: Option<SequenceSpec>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    ThreeLevel,
    Projection,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepSuite {
    ThreeLevel,
    Projection,
}

/// A run either produced output with a pass/fail status or failed before
/// producing any.
enum Outcome {
    Done { text: String, passed: bool },
    Usage(String),
}

fn run(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Ok(Outcome::Usage(format!("--tol must be positive, got {tol}")));
    }
    let result = match &cli.command {
        Command::Verify {
            suite,
            model,
            t,
            support,
        } => verify(*suite, model, *t, *support, cli.seed, tol),
        Command::Sweep {
            suite,
            model,
            t_min,
            t_max,
            steps,
            n_min,
            n_max,
        } => match suite {
            SweepSuite::ThreeLevel => suite::sweep_three_level(*t_min, *t_max, *steps, cli.seed, tol),
            SweepSuite::Projection => {
                let base = ProjectionParams {
                    dim: model.dim,
                    support: *n_min,
                    seed: cli.seed,
                    alpha: model.alpha.clone(),
                    gamma: model.gamma.clone(),
                };
                suite::sweep_projection(&base, *n_min, n_max.unwrap_or(model.dim), tol)
            }
        }
        .map(|reports| Outcome::Done {
            passed: reports.iter().all(VerificationReport::all_passed),
            text: report::reports_to_json(&reports),
        }),
        Command::Domain { alpha, coeff, n_max } => suite::run_domain(alpha, coeff, *n_max).map(|r| Outcome::Done {
            text: r.to_json(),
            passed: true,
        }),
    };
    match result {
        Ok(outcome) => Ok(outcome),
        Err(
            e @ (Error::InvalidParameter(_)
            | Error::InvalidModel(_)
            | Error::InvalidSequence { .. }
            | Error::SequenceTooShort { .. }
            | Error::NotReal),
        ) => Ok(Outcome::Usage(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn verify(
    suite: Suite,
    model: &ModelArgs,
    t: Option<f64>,
    support: usize,
    seed: u64,
    tol: f64,
) -> riesz_core::Result<Outcome> {
    let report = match suite {
        Suite::ThreeLevel => {
            let t = t.ok_or_else(|| Error::InvalidParameter("three-level requires --t".into()))?;
            suite::run_three_level(t, seed, tol)?
        }
        Suite::Projection => suite::run_projection(
            &ProjectionParams {
                dim: model.dim,
                support,
                seed,
                alpha: model.alpha.clone(),
                gamma: model.gamma.clone(),
            },
            tol,
        )?,
        Suite::Random => suite::run_random(
            &RandomParams {
                dim: model.dim,
                seed,
                alpha: model.alpha.clone(),
                gamma: model.gamma.clone(),
            },
            tol,
        )?,
    };
    Ok(Outcome::Done {
        passed: report.all_passed(),
        text: report.to_json(),
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display())),
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|outcome| match outcome {
        Outcome::Done { text, passed } => emit(&text, cli.out.as_ref()).map(|()| passed),
        Outcome::Usage(msg) => Cli::command()
            .error(clap::error::ErrorKind::ValueValidation, msg)
            .exit(),
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
