//! Experiment configuration read from JSON. Every key is optional; command
//! line flags take precedence.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    Grover,
    Bipartite,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub p_max: Option<usize>,
    pub dim: Option<usize>,
    pub omega: Option<Vec<f64>>,
    pub dims: Option<Vec<usize>>,
    pub resolution: Option<f64>,
    pub qubits: Option<usize>,
    pub marked: Option<usize>,
    pub mode: Option<CountMode>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub t: Option<u32>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// First present value wins: flag, then config, then default.
pub fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}
