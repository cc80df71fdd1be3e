//! `ecsim`: figure tables, exciton thresholds and the oracle validation report.
//!
//! Exit status: 0 on success, 1 when a validation suite fails, 2 on bad
//! arguments, unreadable config or unwritable output.

mod config;
mod output;

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;

use cavity_ecs::scenarios::{self, Grid, Table};
use cavity_ecs::validation::{run_validation, ValidationOptions};
use cavity_ecs::witnesses::{threshold, ExcitonMetric};
use cavity_ecs::SystemConfig;
use clap::{Args, Parser, Subcommand};

use config::{Params, Settings};
use output::{write_report, write_table, Format};

#[derive(Parser)]
#[command(name = "ecsim", version, about = "Entangled coherent exciton states in a cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// B and F of the N+1 qubit state against time (defaults N=3, |α|²=3, [0, 2π] × 1000).
    Fig1(Params),
    /// τ against time for several N (defaults N=2,3,5, |α|²=0.9, θ=π).
    Fig2(Params),
    /// B, F and τ of the exciton state against |α| (defaults N=5, |α| ∈ [0, 4], θ=π/2 for τ).
    Fig3(Params),
    /// Dissipative F against time (defaults N=2,3,4, |α|²=3, g=1, Γ=0.5, t ∈ [0, 10]).
    Fig4(Params),
    /// Every witness for one configuration (--g sets the collective coupling G).
    Sweep(Params),
    /// |α| at which the exciton B and F cross zero.
    Thresholds(Params),
    /// Run the oracle-equivalence suites.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    params: Params,
    /// Offset added to every closed-form value before comparison.
    #[arg(long, default_value_t = 0.0)]
    perturb: f64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Validation,
}

impl From<cavity_ecs::Error> for Failure {
    fn from(e: cavity_ecs::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn single_n(s: &Settings, default: usize) -> Result<usize, Failure> {
    match s.n.as_deref() {
        None => Ok(default),
        Some([n]) => Ok(*n),
        Some(ns) => Err(Failure::Usage(format!("this command takes a single --n, got {ns:?}"))),
    }
}

fn grid(s: &Settings, start: f64, stop: f64, points: usize) -> Result<Grid, Failure> {
    let mut g = s.grid.unwrap_or(Grid { start, stop, points });
    if let Some(tmax) = s.tmax {
        g.stop = tmax;
    }
    Ok(Grid::new(g.start, g.stop, g.points)?)
}

fn reject_theta(s: &Settings, cmd: &str) -> Result<(), Failure> {
    match s.theta {
        Some(_) => Err(Failure::Usage(format!("{cmd} fixes the cat phase; --theta is not accepted"))),
        None => Ok(()),
    }
}

fn table_for(cmd: &Command, s: &Settings) -> Result<Table, Failure> {
    Ok(match cmd {
        Command::Fig1(_) => {
            reject_theta(s, "fig1")?;
            scenarios::fig1(single_n(s, 3)?, s.alpha2.unwrap_or(3.0), grid(s, 0.0, 2.0 * PI, 1000)?)?
        }
        Command::Fig2(_) => scenarios::fig2(
            s.n.as_deref().unwrap_or(&[2, 3, 5]),
            s.alpha2.unwrap_or(0.9),
            s.theta.unwrap_or(PI),
            grid(s, 0.0, 2.0 * PI, 1000)?,
        )?,
        Command::Fig3(_) => scenarios::fig3(single_n(s, 5)?, s.theta.unwrap_or(FRAC_PI_2), grid(s, 0.0, 4.0, 401)?)?,
        Command::Fig4(_) => {
            reject_theta(s, "fig4")?;
            scenarios::fig4(
                s.n.as_deref().unwrap_or(&[2, 3, 4]),
                s.alpha2.unwrap_or(3.0),
                s.g.unwrap_or(1.0),
                s.gamma_rate.unwrap_or(0.5),
                grid(s, 0.0, 10.0, 1000)?,
            )?
        }
        Command::Sweep(_) => {
            let alpha2 = s.alpha2.unwrap_or(1.0);
            let cfg =
                SystemConfig::equal_couplings_real(single_n(s, 3)?, s.g.unwrap_or(1.0), alpha2, s.theta.unwrap_or(PI))?;
            let mut table = scenarios::sweep_table(&cfg, grid(s, 0.0, 2.0 * PI, 500)?)?;
            // echo the requested value, not |sqrt(alpha2)|²
            for (k, v) in table.params.iter_mut() {
                if k == "alpha2" {
                    *v = alpha2.to_string();
                }
            }
            table
        }
        Command::Thresholds(_) => {
            let n = single_n(s, 5)?;
            let bell = threshold(ExcitonMetric::Bell, n, 1e-3, 10.0, 1e-10)?;
            let fid = threshold(ExcitonMetric::Fidelity, n, 1e-3, 10.0, 1e-10)?;
            Table {
                columns: vec!["n".into(), "bell_root".into(), "fidelity_root".into()],
                params: vec![("n".into(), n.to_string()), ("tol".into(), "1e-10".into())],
                rows: vec![vec![n as f64, bell, fid]],
            }
        }
        Command::Validate(_) => unreachable!(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let params = match &cli.command {
        Command::Fig1(p) | Command::Fig2(p) | Command::Fig3(p) | Command::Fig4(p) => p,
        Command::Sweep(p) | Command::Thresholds(p) => p,
        Command::Validate(v) => &v.params,
    };
    let settings = params.resolve().map_err(Failure::Usage)?;
    let format = settings.format.unwrap_or(Format::Csv);

    if let Command::Validate(v) = &cli.command {
        let opts = ValidationOptions { seed: v.seed, perturbation: v.perturb, ..Default::default() };
        let report = run_validation(&opts)?;
        write_report(&report, format, settings.out.as_deref()).map_err(Failure::Usage)?;
        return if report.passed() { Ok(()) } else { Err(Failure::Validation) };
    }

    let table = table_for(&cli.command, &settings)?;
    write_table(&table, format, settings.out.as_deref()).map_err(Failure::Usage)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => {
            eprintln!("ecsim: validation failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ecsim: {msg}");
            ExitCode::from(2)
        }
    }
}
