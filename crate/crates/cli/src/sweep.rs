//! Cartesian parameter sweeps.
//!
//! A sweep config is an experiment config in which any key other than `modes`
//! may hold a list of values. Every combination becomes its own run, written to
//! `point-NNNN/` under the output directory, and `sweep.json` indexes them.

use std::path::Path;

use rayon::prelude::*;
use serde_json::json;
use toml::{Table, Value};

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::run::{execute, write_outputs};

/// Environment variable holding the worker-thread count for sweeps.
pub const THREADS_ENV: &str = "CIRCGEO_THREADS";

/// Expands list-valued keys into the Cartesian product of single-valued tables,
/// in key order with the last key varying fastest.
pub fn expand(table: &Table) -> Result<Vec<Table>, CliError> {
    let mut points = vec![Table::new()];
    for (key, value) in table {
        let choices = match value {
            Value::Array(items) if key != "modes" => {
                if items.is_empty() {
                    return Err(CliError::Config(format!("sweep key {key:?} has an empty list")));
                }
                items.clone()
            }
            v => vec![v.clone()],
        };
        points = points
            .into_iter()
            .flat_map(|p| {
                choices.iter().map(move |c| {
                    let mut q = p.clone();
                    q.insert(key.clone(), c.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs every point and returns the largest exit code among them.
pub fn sweep(config_path: &Path, out: &Path) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(config_path).map_err(CliError::io(config_path))?;
    let table: Table = toml::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
    let configs: Vec<(Table, ExperimentConfig)> = expand(&table)?
        .into_iter()
        .map(|t| {
            let cfg = ExperimentConfig::from_toml(&toml::to_string(&t).map_err(|e| CliError::Internal(e.to_string()))?)?;
            Ok((t, cfg))
        })
        .collect::<Result<_, CliError>>()?;
    std::fs::create_dir_all(out).map_err(CliError::io(out))?;
    let codes: Vec<i32> = pool()?.install(|| {
        configs
            .par_iter()
            .enumerate()
            .map(|(i, (_, cfg))| {
                let outcome = execute(cfg);
                write_outputs(&out.join(point_dir(i)), cfg, &outcome)?;
                Ok(outcome.exit_code())
            })
            .collect::<Result<_, CliError>>()
    })?;
    let index: Vec<_> = configs
        .iter()
        .zip(&codes)
        .enumerate()
        .map(|(i, ((t, _), code))| json!({ "dir": point_dir(i), "parameters": t, "exit_code": code }))
        .collect();
    let path = out.join("sweep.json");
    std::fs::write(&path, serde_json::to_string_pretty(&index)? + "\n").map_err(CliError::io(&path))?;
    Ok(codes.into_iter().max().unwrap_or(0))
}

fn point_dir(i: usize) -> String {
    format!("point-{i:04}")
}
