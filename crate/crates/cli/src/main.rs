//! `walkcount`: batch front end for the counting and walk experiments.
//!
//! Exit status is 0 when every embedded check passes, 1 when one fails and
//! 2 for usage or configuration errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

use commands::Report;
use config::{pick, CountMode, ExperimentConfig};

#[derive(Parser, Debug)]
#[command(name = "walkcount", version, about = "Quantum counting and coined-walk experiments")]
struct Cli {
    /// Base seed; trial i uses stream i.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the QFT circuit with the analytic DFT for p = 1..p_max.
    QftVerify {
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Amplitudes of Fourier states |F_P(omega)>.
    FourierFig {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        omega: Option<Vec<f64>>,
    },
    /// f(w) curves with their grid minimum.
    FwMin {
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Grover search on N = 2^qubits with the first `marked` elements marked.
    Grover {
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long)]
        marked: Option<usize>,
    },
    /// Monte Carlo counting, Grover or bipartite.
    Count {
        #[arg(long, value_enum)]
        mode: Option<CountMode>,
        #[arg(long)]
        qubits: Option<usize>,
        /// Bipartite part size.
        #[arg(long)]
        n: Option<usize>,
        /// Marked elements (per part in bipartite mode).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Bipartite counting on K_{n,n} with k marked vertices per part.
    WalkCount {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Eigenvalues of the reduced walk operator and their |D> weights.
    Spectrum {
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
    },
    /// Numeric check of the f(w) minimum and the inequalities behind it.
    AppendixA {
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long)]
        resolution: Option<f64>,
    },
}

const DEFAULT_SEED: u64 = 1;
const DEFAULT_TRIALS: usize = 2000;

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>)> {
    let cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let seed = pick(cli.seed, cfg.seed, DEFAULT_SEED);
    let trials = pick(cli.trials, cfg.trials, DEFAULT_TRIALS);
    let out = cli.out.clone().or(cfg.out.clone());
    let report = match cli.command {
        Command::QftVerify { p_max } => commands::qft_verify(pick(p_max, cfg.p_max, 6))?,
        Command::FourierFig { dim, omega } => {
            commands::fourier_fig(pick(dim, cfg.dim, 8), &pick(omega, cfg.omega, vec![1.5]))?
        }
        Command::FwMin { dims, resolution } => commands::fw_min(
            &pick(dims, cfg.dims, vec![3, 30]),
            pick(resolution, cfg.resolution, 1e-3),
        )?,
        Command::Grover { qubits, marked } => commands::grover(
            pick(qubits, cfg.qubits, 4),
            pick(marked, cfg.marked, 1),
            trials,
            seed,
        )?,
        Command::Count {
            mode,
            qubits,
            n,
            k,
            p,
            t,
        } => match pick(mode, cfg.mode, CountMode::Grover) {
            CountMode::Grover => commands::grover_count(
                pick(qubits, cfg.qubits, 4),
                pick(k, cfg.k, 4),
                pick(p, cfg.p, 5),
                trials,
                seed,
            )?,
            CountMode::Bipartite => commands::walk_count(
                pick(n, cfg.n, 4),
                pick(k, cfg.k, 1),
                pick(p, cfg.p, 5),
                pick(t, cfg.t, 3),
                trials,
                seed,
            )?,
        },
        Command::WalkCount { n, k, p, t } => commands::walk_count(
            pick(n, cfg.n, 4),
            pick(k, cfg.k, 1),
            pick(p, cfg.p, 5),
            pick(t, cfg.t, 3),
            trials,
            seed,
        )?,
        Command::Spectrum { n1, n2, k1, k2 } => {
            let n1 = pick(n1, cfg.n1, 40);
            let n2 = pick(n2, cfg.n2, n1);
            let k1 = pick(k1, cfg.k1, 2);
            let k2 = pick(k2, cfg.k2, 1);
            commands::spectrum(n1, k1, n2, k2)?
        }
        Command::AppendixA { dims, resolution } => commands::appendix_a(
            &pick(dims, cfg.dims, (1..=64).collect()),
            pick(resolution, cfg.resolution, 1e-4),
        )?,
    };
    Ok((report, out))
}

fn emit(report: &Report, out: Option<PathBuf>) -> Result<()> {
    let summary = serde_json::to_string_pretty(&report.summary)?;
    match out {
        Some(path) => {
            if path.as_os_str().is_empty() {
                bail!("empty output path");
            }
            std::fs::write(&path, &report.csv)?;
            println!("{summary}");
        }
        None => {
            print!("{}", report.csv);
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(report, out)| {
        emit(&report, out)?;
        Ok(report.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
