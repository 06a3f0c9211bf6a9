//! `isochrone`: classification, orbit tables, trajectories and verification reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 no bound orbit.
//! Log level comes from `ISOCHRONE_LOG` (default `warn`); logs go to stderr.

mod commands;
mod config;
mod exit;
mod output;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Grid, RunConfig};
use exit::Failure;

#[derive(Parser)]
#[command(
    name = "isochrone",
    version,
    about = "Isochrone potentials in the Henon variable"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Class, delta, vertex, domain and Greek parameters of a potential
    Classify,
    /// Orbit elements over a (xi, lambda) grid
    Elements,
    /// Trajectory samples of one orbit
    Orbit,
    /// Closed forms against the numerical oracle, plus the theorem checks
    Verify,
    /// Birkhoff invariants over a lambda grid
    Table,
}

#[derive(Args, Default)]
struct Opts {
    /// Latin parameters a,b,c,d,e
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        value_name = "a,b,c,d,e"
    )]
    latin: Option<String>,
    #[arg(long, global = true, value_name = "mu=")]
    kepler: Option<String>,
    #[arg(long, global = true, value_name = "omega=")]
    harmonic: Option<String>,
    #[arg(long, global = true, value_name = "mu=,beta=")]
    henon: Option<String>,
    #[arg(long, global = true, value_name = "mu=,beta=")]
    bounded: Option<String>,
    #[arg(long, global = true, value_name = "mu=,beta=")]
    hollowed: Option<String>,
    /// Plummer sphere, a non-isochrone control (mu defaults to 1)
    #[arg(long, global = true, value_name = "b=[,mu=]")]
    plummer: Option<String>,
    /// Gauge term eps + lam/(2r^2) added to a parabola potential
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        value_name = "eps=,lam="
    )]
    gauge: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    xi: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        value_name = "lo:hi:n"
    )]
    xi_grid: Option<Grid>,
    #[arg(long, global = true, value_name = "lo:hi:n")]
    lambda_grid: Option<Grid>,
    /// Number of trajectory samples, including both ends
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Time span of the trajectory in radial periods
    #[arg(long, global = true)]
    periods: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON file with the same keys as the flags; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative tolerance of the oracle comparisons in `verify`
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Add the constant-Q (Bertrand) fit to `verify`
    #[arg(long, global = true)]
    bertrand: bool,
    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl Opts {
    fn run_config(&self) -> Result<RunConfig, Failure> {
        let flags = RunConfig {
            latin: self.latin.clone(),
            kepler: self.kepler.clone(),
            harmonic: self.harmonic.clone(),
            henon: self.henon.clone(),
            bounded: self.bounded.clone(),
            hollowed: self.hollowed.clone(),
            plummer: self.plummer.clone(),
            gauge: self.gauge.clone(),
            xi: self.xi,
            lambda: self.lambda,
            xi_grid: self.xi_grid,
            lambda_grid: self.lambda_grid,
            samples: self.samples,
            periods: self.periods,
            format: self.format,
            tol: self.tol,
            bertrand: self.bertrand.then_some(true),
        };
        Ok(match &self.config {
            Some(path) => RunConfig::from_file(path)?.overridden_by(flags),
            None => flags,
        })
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let cfg = cli.opts.run_config()?;
    let (text, code) = match cli.command {
        Command::Classify => (commands::classify(&cfg)?, exit::OK),
        Command::Elements => (commands::elements(&cfg)?, exit::OK),
        Command::Orbit => (commands::orbit(&cfg)?, exit::OK),
        Command::Table => (commands::table(&cfg)?, exit::OK),
        Command::Verify => {
            let (text, pass) = verify::verify(&cfg)?;
            (text, if pass { exit::OK } else { exit::VERIFY_FAILED })
        }
    };
    match &cli.opts.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ISOCHRONE_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
