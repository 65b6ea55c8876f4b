use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use momineq::simulation::{CellResult, ErrorDist};
use serde::{Deserialize, Serialize};

use crate::Command;

/// One CSV row per (cell, test); shared by `simulate` and `reproduce`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultRow {
    pub n: usize,
    pub p: usize,
    pub rho: f64,
    pub design: String,
    pub dist: String,
    pub test: String,
    pub sel: bool,
    pub rejection_rate: f64,
    pub n_errors: usize,
    pub n_infinite: usize,
    pub reference_value: Option<f64>,
}

pub fn rows_for(
    cell: &CellResult,
    reference: impl Fn(momineq::TestLabel) -> Option<f64>,
) -> Vec<ResultRow> {
    let cfg = &cell.config;
    let dist = match cfg.error_dist {
        ErrorDist::StudentT4Scaled => "t4".to_string(),
        d => d.to_string(),
    };
    cell.tests
        .iter()
        .map(|t| ResultRow {
            n: cfg.n,
            p: cfg.p,
            rho: cfg.rho,
            design: cfg.design.to_string(),
            dist: dist.clone(),
            test: t.label.base(),
            sel: t.label.select,
            rejection_rate: t.rejection_rate,
            n_errors: t.n_errors,
            n_infinite: t.n_infinite,
            reference_value: reference(t.label),
        })
        .collect()
}

pub fn write_rows(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
}

/// Everything needed to re-run a command and reproduce its outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    #[serde(flatten)]
    pub command: Command,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub outputs: Vec<PathBuf>,
    /// Mean seconds per rep and test, keyed as `cell/test`. Informational only.
    #[serde(default)]
    pub timings: Vec<(String, f64)>,
}

pub fn now_unix() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

impl RunManifest {
    pub fn new(command: Command, started_unix: f64) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            started_unix,
            finished_unix: now_unix(),
            outputs: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("{} is not a run manifest", path.display()))
    }
}
