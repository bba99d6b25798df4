//! `circgeo`: deterministic runner for geodesic experiments on `Diff S¹` and the
//! Virasoro-Bott group.
//!
//! Exit codes: 0 ok, 1 internal error or failed check, 2 bad config,
//! 3 blow-up, 4 singular inertia mode.

mod checks;
mod config;
mod error;
mod presets;
mod run;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::ExperimentConfig;
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "circgeo", version, about = "Geodesic flows on the circle diffeomorphism group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one experiment and write trajectory.csv and metadata.json.
    Run {
        /// TOML experiment config.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        /// Built-in config name (see `presets`).
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the oracle suite; exits 1 if any check fails.
    Check {
        /// Only run checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run every point of a parameter grid (list-valued config keys).
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List built-in presets, or print one as TOML.
    Presets { name: Option<String> },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Run { config, preset, out } => {
            let cfg = match (config, preset) {
                (Some(path), _) => ExperimentConfig::load(&path)?,
                (None, Some(name)) => presets::config(&name)?,
                (None, None) => return Err(CliError::Config("need --config or --preset".into())),
            };
            let outcome = run::execute(&cfg);
            run::write_outputs(&out, &cfg, &outcome)?;
            for o in &outcome.oracles {
                println!(
                    "{:<36} {:.3e} (tolerance {:.0e}) {}",
                    o.name,
                    o.value,
                    o.tolerance,
                    if o.pass { "ok" } else { "EXCEEDED" }
                );
            }
            if let Some(e) = &outcome.error {
                eprintln!("circgeo: {e}");
            }
            Ok(outcome.exit_code())
        }
        Command::Check { filter } => {
            let results = checks::run_checks(filter.as_deref());
            if results.is_empty() {
                return Err(CliError::Config(format!("no check matches {filter:?}")));
            }
            let mut failed = 0;
            for r in &results {
                println!("{:<4} {:<26} {}", if r.pass { "ok" } else { "FAIL" }, r.name, r.detail);
                failed += usize::from(!r.pass);
            }
            println!("{} checks, {failed} failed", results.len());
            Ok(i32::from(failed > 0))
        }
        Command::Sweep { config, out } => sweep::sweep(&config, &out),
        Command::Presets { name: Some(name) } => {
            print!("{}", presets::find(&name)?.toml.trim_start());
            Ok(0)
        }
        Command::Presets { name: None } => {
            for p in presets::PRESETS {
                println!("{:<16} {}", p.name, p.summary);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("circgeo: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
