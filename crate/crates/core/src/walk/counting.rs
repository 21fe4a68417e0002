//! Counting marked vertices of `K_{n,n}` by phase estimation of the search
//! walk on the edge superposition `|D>`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::eight_over_pi_sq;
use crate::grover::CountEstimate;
use crate::output::{fmt_f64, CsvBuilder};
use crate::qcircuit::PhaseEstimator;
use crate::rng::SimRng;
use crate::stats::TrialStats;

use super::{edge_superposition, search_operator, BipartiteMarking, WalkSpace};

/// The two normalizations of the counting error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorBounds {
    /// `2π√(k(N−k))/P + π²N/P`
    pub loose: f64,
    /// `2π√(k(N−k))/P + π²N/P²`
    pub tight: f64,
}

pub fn bipartite_error_bound(n: usize, k: usize, dim: usize) -> Result<ErrorBounds> {
    if k == 0 || k >= n {
        return Err(Error::UndefinedRotation { k, n });
    }
    let pi = std::f64::consts::PI;
    let (n, k, p) = (n as f64, k as f64, dim as f64);
    let first = 2.0 * pi * (k * (n - k)).sqrt() / p;
    Ok(ErrorBounds {
        loose: first + pi * pi * n / p,
        tight: first + pi * pi * n / (p * p),
    })
}

/// `(1 − 2^{−t}) 8/π²`
pub fn success_probability_bound(t: u32) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument("need at least one iteration".into()));
    }
    Ok((1.0 - 0.5f64.powi(t as i32)) * eight_over_pi_sq::<f64>())
}

/// Phase estimation of `U = U_w O` on `|D>`, built once and sampled per run.
#[derive(Clone, Debug)]
pub struct BipartiteCounter {
    n: usize,
    k: usize,
    precision_bits: usize,
    max_runs: u32,
    estimator: PhaseEstimator<f64>,
}

impl BipartiteCounter {
    /// Requires `n1 = n2` and `k1 = k2`.
    pub fn new(ws: &WalkSpace, bm: &BipartiteMarking, p: usize, t: u32) -> Result<Self> {
        if !bm.is_restricted() {
            return Err(Error::ScopeViolation {
                n1: bm.n1(),
                n2: bm.n2(),
                k1: bm.k1(),
                k2: bm.k2(),
            });
        }
        if t == 0 {
            return Err(Error::InvalidArgument("need at least one iteration".into()));
        }
        let u = search_operator::<f64>(ws, bm)?;
        let estimator = PhaseEstimator::new(&u, &edge_superposition(ws), p)?;
        Ok(Self {
            n: bm.vertex_count(),
            k: bm.marked_count(),
            precision_bits: p,
            max_runs: t,
            estimator,
        })
    }

    /// `N = 2n`
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `k = 2 k1`
    pub fn marked_count(&self) -> usize {
        self.k
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn max_runs(&self) -> u32 {
        self.max_runs
    }

    /// Exact distribution of `ω'` for one phase-estimation run.
    pub fn distribution(&self) -> &[f64] {
        self.estimator.distribution()
    }

    /// Runs the algorithm once. `probe(v)` answers whether vertex `v` is
    /// marked and is called at most once.
    pub fn run(&self, rng: &mut SimRng, probe: &mut dyn FnMut(usize) -> bool) -> CountEstimate {
        let dim = 1usize << self.precision_bits;
        let per_run = dim as u64 - 1;
        let mut last = 0;
        for run in 1..=self.max_runs as usize {
            let pe = self.estimator.sample(rng);
            last = pe.raw_outcome;
            if last != 0 && 2 * last != dim {
                let mut theta = std::f64::consts::TAU * pe.vartheta;
                if theta > std::f64::consts::PI {
                    theta = std::f64::consts::TAU - theta;
                }
                return CountEstimate {
                    k_est: (theta / 2.0).sin().powi(2) * self.n as f64,
                    theta_prime: theta,
                    queries: run as u64 * per_run,
                    success_bound: self.success_bound(),
                    raw_outcome: last,
                    runs: run,
                    probe: None,
                };
            }
        }
        let marked = probe(rng.below(self.n));
        CountEstimate {
            k_est: if marked { self.n as f64 } else { 0.0 },
            theta_prime: if marked { std::f64::consts::PI } else { 0.0 },
            queries: self.max_runs as u64 * per_run + 1,
            success_bound: self.success_bound(),
            raw_outcome: last,
            runs: self.max_runs as usize,
            probe: Some(marked),
        }
    }

    fn success_bound(&self) -> f64 {
        success_probability_bound(self.max_runs).expect("t >= 1")
    }

    /// Loose bound for `0 < k < N`, exactness otherwise.
    pub fn within_bound(&self, est: &CountEstimate) -> bool {
        match bipartite_error_bound(self.n, self.k, 1 << self.precision_bits) {
            Ok(b) => (est.k_est - self.k as f64).abs() <= b.loose,
            Err(_) => est.k_est == self.k as f64,
        }
    }
}

/// One run of the counting algorithm on `K_{n,n}`.
pub fn bipartite_count(
    ws: &WalkSpace,
    bm: &BipartiteMarking,
    p: usize,
    t: u32,
    rng: &mut SimRng,
    oracle_probe: &mut dyn FnMut(usize) -> bool,
) -> Result<CountEstimate> {
    Ok(BipartiteCounter::new(ws, bm, p, t)?.run(rng, oracle_probe))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkCountTrial {
    pub trial: u64,
    pub estimate: CountEstimate,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkCountRun {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub precision_bits: usize,
    pub max_runs: u32,
    /// Loose error bound, absent for `k ∈ {0, N}`.
    pub bound: Option<f64>,
    pub trials: Vec<WalkCountTrial>,
    pub stats: TrialStats,
}

impl WalkCountRun {
    /// Columns `trial, seed, runs, outcome, theta_prime, k_est, queries,
    /// probe, bound, pass`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = CsvBuilder::new(&[
            "trial",
            "seed",
            "runs",
            "outcome",
            "theta_prime",
            "k_est",
            "queries",
            "probe",
            "bound",
            "pass",
        ]);
        let bound = self.bound.map(fmt_f64).unwrap_or_default();
        for t in &self.trials {
            let e = &t.estimate;
            w.row(&[
                t.trial.to_string(),
                self.seed.to_string(),
                e.runs.to_string(),
                e.raw_outcome.to_string(),
                fmt_f64(e.theta_prime),
                fmt_f64(e.k_est),
                e.queries.to_string(),
                e.probe.map(|b| b.to_string()).unwrap_or_default(),
                bound.clone(),
                t.pass.to_string(),
            ]);
        }
        w.finish()
    }
}

/// Independent runs of the counting algorithm; trial `i` draws from stream
/// `i` of `seed` and probes `bm` directly.
pub fn monte_carlo_count(
    ws: &WalkSpace,
    bm: &BipartiteMarking,
    p: usize,
    t: u32,
    trials: usize,
    seed: u64,
) -> Result<WalkCountRun> {
    let counter = BipartiteCounter::new(ws, bm, p, t)?;
    let rows: Vec<WalkCountTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = SimRng::with_stream(seed, trial);
            let estimate = counter.run(&mut rng, &mut |v| bm.is_marked(v));
            let pass = counter.within_bound(&estimate);
            WalkCountTrial {
                trial,
                estimate,
                pass,
            }
        })
        .collect();
    let bound = bipartite_error_bound(counter.n, counter.k, 1 << p)
        .ok()
        .map(|b| b.loose);
    let target = if bound.is_some() {
        success_probability_bound(t)?
    } else {
        1.0
    };
    let stats = TrialStats::from_trials(
        &rows.iter().map(|r| r.pass).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.estimate.k_est).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.estimate.queries).collect::<Vec<_>>(),
        target,
    );
    Ok(WalkCountRun {
        seed,
        n: counter.n,
        k: counter.k,
        precision_bits: p,
        max_runs: t,
        bound,
        trials: rows,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bound_values() {
        let b = bipartite_error_bound(8, 2, 16).unwrap();
        let first = 2.0 * std::f64::consts::PI * 12f64.sqrt() / 16.0;
        assert_abs_diff_eq!(first, 1.360, epsilon = 1e-3);
        assert_abs_diff_eq!(b.loose - first, 4.935, epsilon = 1e-3);
        assert_abs_diff_eq!(b.tight - first, 0.308, epsilon = 1e-3);
        assert!(bipartite_error_bound(8, 8, 16).is_err());
    }

    #[test]
    fn success_bound_values() {
        assert_abs_diff_eq!(success_probability_bound(1).unwrap(), 4.0 / std::f64::consts::PI.powi(2), epsilon = 1e-15);
        assert_abs_diff_eq!(success_probability_bound(3).unwrap(), 0.7092, epsilon = 1e-4);
        assert!(success_probability_bound(0).is_err());
    }

    #[test]
    fn exact_cases_use_probe() {
        let ws = WalkSpace::complete_bipartite(4).unwrap();
        for (k, expected) in [(0usize, 0.0), (4, 8.0)] {
            let bm = BipartiteMarking::first(4, 4, k, k).unwrap();
            let counter = BipartiteCounter::new(&ws, &bm, 4, 2).unwrap();
            let mut rng = SimRng::new(5);
            let mut calls = 0;
            let e = counter.run(&mut rng, &mut |v| {
                calls += 1;
                bm.is_marked(v)
            });
            assert_eq!(calls, 1);
            assert_eq!(e.k_est, expected);
            assert_eq!(e.queries, 2 * 15 + 1);
            assert_eq!(e.probe, Some(k > 0));
        }
    }

    #[test]
    fn scope_enforced() {
        let ws = WalkSpace::complete_bipartite(4).unwrap();
        let bm = BipartiteMarking::first(4, 4, 1, 2).unwrap();
        assert!(matches!(
            BipartiteCounter::new(&ws, &bm, 3, 1),
            Err(Error::ScopeViolation { .. })
        ));
    }

    #[test]
    fn sigma_estimate_recovers_k() {
        // Σ = π/3 is exact for P = 6, which is not a power of two; check
        // the post-processing identity directly instead
        let k = (std::f64::consts::FRAC_PI_3 / 2.0).sin().powi(2) * 8.0;
        assert_abs_diff_eq!(k, 2.0, epsilon = 1e-14);
    }
}
