//! Binomial acceptance statistics for seeded Monte Carlo runs.

use serde::Serialize;

/// `σ = √(p0 (1 − p0) / n)` for a success probability `p0` over `n` trials.
pub fn binomial_sigma(p0: f64, trials: usize) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    (p0 * (1.0 - p0) / trials as f64).sqrt()
}

/// Aggregate of a Monte Carlo run checked against a lower bound `p0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    /// Guaranteed success probability the run is tested against.
    pub target: f64,
    pub sigma: f64,
    /// `target − 3σ`
    pub threshold: f64,
    pub mean_estimate: f64,
    pub std_estimate: f64,
    pub mean_queries: f64,
    pub pass: bool,
}

impl TrialStats {
    /// `estimates` and `queries` are per trial, in trial order.
    pub fn from_trials(successes: &[bool], estimates: &[f64], queries: &[u64], target: f64) -> Self {
        let trials = successes.len();
        let hits = successes.iter().filter(|&&s| s).count();
        let n = trials.max(1) as f64;
        let frequency = hits as f64 / n;
        let mean = estimates.iter().sum::<f64>() / n;
        let var = estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let mean_queries = queries.iter().map(|&q| q as f64).sum::<f64>() / n;
        let sigma = binomial_sigma(target, trials);
        let threshold = target - 3.0 * sigma;
        Self {
            trials,
            successes: hits,
            frequency,
            target,
            sigma,
            threshold,
            mean_estimate: mean,
            std_estimate: var.sqrt(),
            mean_queries,
            pass: trials > 0 && frequency >= threshold,
        }
    }
}
