//! Running one experiment and writing its outputs.

use std::fs;
use std::path::Path;

use circle_geodesics::oracles::burgers_characteristics;
use circle_geodesics::{diagnostics, integrate_partial, Error, GeodesicState, Problem, Report, Trajectory};
use serde::Serialize;
use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::{library_exit_code, CliError};

pub const CSV_NAME: &str = "trajectory.csv";
pub const JSON_NAME: &str = "metadata.json";

/// A named numerical check attached to a run.
#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl OracleResult {
    fn new(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            pass: value < tolerance,
        }
    }
}

pub struct RunOutcome {
    pub trajectory: Option<Trajectory<f64>>,
    pub report: Option<Report<f64>>,
    pub error: Option<Error>,
    pub oracles: Vec<OracleResult>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, library_exit_code)
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            0 => "ok",
            2 => "invalid-input",
            3 => "blow-up",
            4 => "singular-mode",
            _ => "internal-error",
        }
    }
}

fn burgers_oracle(traj: &Trajectory<f64>) -> Option<OracleResult> {
    let u0 = &traj.states.first()?.u;
    let uf = &traj.states.last()?.u;
    let t = traj.final_time();
    let m = 256;
    let mut err = 0.0f64;
    for j in 0..m {
        let th = std::f64::consts::TAU * j as f64 / m as f64;
        err = err.max((uf.eval(th) - burgers_characteristics(u0, t, th)?).abs());
    }
    Some(OracleResult::new("burgers-characteristics-sup-error", err, 1e-6))
}

fn oracles(traj: &Trajectory<f64>, report: &Report<f64>) -> Vec<OracleResult> {
    let mut out = Vec::new();
    match traj.problem {
        Problem::RiemannL2 => out.extend(burgers_oracle(traj)),
        Problem::KaehlerRiemann(_) => out.push(OracleResult::new("eta0-drift", report.max_eta0_drift, 1e-10)),
        Problem::WeilPetersson => {
            if let Some(d) = report.lambda0_drift {
                out.push(OracleResult::new("lambda0-drift", d, 1e-12));
            }
            if let Some(r) = report.max_mob_residual {
                out.push(OracleResult::new("w-dot-closed-form-residual", r, 1e-10));
            }
        }
        _ => {}
    }
    out
}

/// Integrates the configured problem; never fails, errors are carried in the outcome.
pub fn execute(cfg: &ExperimentConfig) -> RunOutcome {
    let problem = cfg.problem();
    let initial = match cfg.initial_state(&problem) {
        Ok(s) => s,
        Err(CliError::Library(e)) => return failed(e),
        Err(e) => return failed(Error::InvalidArgument(e.to_string())),
    };
    let (traj, error) = integrate_partial(&problem, &initial, cfg.t_end, cfg.dt, &cfg.options());
    if matches!(error, Some(ref e) if library_exit_code(e) != 3) {
        return RunOutcome {
            trajectory: None,
            report: None,
            error,
            oracles: Vec::new(),
        };
    }
    let report = diagnostics(&traj);
    let (report, error) = match report {
        Ok(r) => (Some(r), error),
        Err(e) => (None, error.or(Some(e))),
    };
    let oracles = match (&report, &error) {
        (Some(r), None) => oracles(&traj, r),
        _ => Vec::new(),
    };
    RunOutcome {
        trajectory: Some(traj),
        report,
        error,
        oracles,
    }
}

fn failed(e: Error) -> RunOutcome {
    RunOutcome {
        trajectory: None,
        report: None,
        error: Some(e),
        oracles: Vec::new(),
    }
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn write_csv(path: &Path, traj: &Trajectory<f64>, report: &Report<f64>, every: usize) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    let first: &GeodesicState<f64> = &traj.states[0];
    let mut header = vec!["t", "n", "re", "im", "energy", "eta0", "eta1_re", "eta1_im"];
    header.extend_from_slice(first.multiplier.component_names());
    w.write_record(&header)?;
    for (k, (s, d)) in traj.states.iter().zip(&report.samples).enumerate() {
        if k % every != 0 && k + 1 != traj.states.len() {
            continue;
        }
        let tail: Vec<String> = [d.energy, d.eta0, d.eta1.re, d.eta1.im]
            .into_iter()
            .chain(s.multiplier.components())
            .map(fmt)
            .collect();
        for (n, c) in s.u.coeffs().iter().enumerate() {
            let mut row = vec![fmt(d.time), n.to_string(), fmt(c.re), fmt(c.im)];
            row.extend(tail.iter().cloned());
            w.write_record(&row)?;
        }
    }
    w.flush().map_err(CliError::io(path))?;
    Ok(())
}

/// Writes `trajectory.csv` (when anything was integrated) and `metadata.json`.
pub fn write_outputs(dir: &Path, cfg: &ExperimentConfig, outcome: &RunOutcome) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    if let (Some(traj), Some(report)) = (&outcome.trajectory, &outcome.report) {
        write_csv(&dir.join(CSV_NAME), traj, report, cfg.output_every)?;
    }
    let summary = outcome.report.as_ref().map(|r| {
        json!({
            "max_relative_energy_drift": r.max_relative_energy_drift,
            "max_eta0_drift": r.max_eta0_drift,
            "max_subspace_leak": r.max_subspace_leak,
            "energy_functional": r.energy_functional,
            "lambda0_drift": r.lambda0_drift,
            "max_mob_residual": r.max_mob_residual,
        })
    });
    let failure_time = match &outcome.error {
        Some(Error::BlowUp { last_valid_time, .. }) => Some(*last_valid_time),
        _ => None,
    };
    let meta = json!({
        "circgeo_version": env!("CARGO_PKG_VERSION"),
        "problem": cfg.problem().name(),
        "config": cfg,
        "status": outcome.status(),
        "exit_code": outcome.exit_code(),
        "error": outcome.error.as_ref().map(|e| e.to_string()),
        "failure_time": failure_time,
        "samples": outcome.trajectory.as_ref().map_or(0, |t| t.states.len()),
        "final_time": outcome.trajectory.as_ref().map(|t| t.final_time()),
        "summary": summary,
        "oracles": outcome.oracles,
    });
    let path = dir.join(JSON_NAME);
    fs::write(&path, serde_json::to_string_pretty(&meta)? + "\n").map_err(CliError::io(&path))?;
    Ok(())
}
