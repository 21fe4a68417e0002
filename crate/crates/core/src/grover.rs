//! Grover search and quantum counting by phase estimation of `U_G = G O_f`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::eight_over_pi_sq;
use crate::output::{fmt_f64, CsvBuilder};
use crate::qcircuit::{PhaseEstimate, PhaseEstimator};
use crate::qstate::{DenseUnitary, HilbertDims, StateVector};
use crate::rng::SimRng;
use crate::scalar::{re, Real, C};
use crate::stats::TrialStats;

/// Marked subset of the search domain `{0, ..., N − 1}`, `N = 2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSet {
    qubits: usize,
    marked: Vec<bool>,
    k: usize,
}

impl MarkedSet {
    /// Duplicate indices are collapsed.
    pub fn new(qubits: usize, indices: &[usize]) -> Result<Self> {
        if qubits == 0 || qubits > 24 {
            return Err(Error::InvalidArgument(format!(
                "domain needs 1..=24 qubits, got {qubits}"
            )));
        }
        let n = 1usize << qubits;
        let mut marked = vec![false; n];
        for &x in indices {
            if x >= n {
                return Err(Error::InvalidArgument(format!(
                    "marked index {x} outside [0, {n})"
                )));
            }
            marked[x] = true;
        }
        let k = marked.iter().filter(|&&m| m).count();
        Ok(Self { qubits, marked, k })
    }

    /// Marks `{0, ..., k − 1}`.
    pub fn first(qubits: usize, k: usize) -> Result<Self> {
        Self::new(qubits, &(0..k).collect::<Vec<_>>())
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// `N`
    pub fn domain_size(&self) -> usize {
        self.marked.len()
    }

    /// `k`
    pub fn count(&self) -> usize {
        self.k
    }

    pub fn contains(&self, x: usize) -> bool {
        self.marked.get(x).copied().unwrap_or(false)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.marked.len()).filter(|&x| self.marked[x]).collect()
    }
}

/// Rotation angle `θ` with `sin θ = √(k/N)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverAngles<T: Real> {
    pub theta: T,
    pub sin_theta: T,
    pub cos_theta: T,
}

impl<T: Real> GroverAngles<T> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidArgument(format!("need 0 <= k <= N, got N = {n}, k = {k}")));
        }
        let sin_theta = (T::count(k) / T::count(n)).sqrt();
        let cos_theta = (T::count(n - k) / T::count(n)).sqrt();
        Ok(Self {
            theta: sin_theta.asin(),
            sin_theta,
            cos_theta,
        })
    }

    pub fn of(m: &MarkedSet) -> Self {
        Self::new(m.domain_size(), m.count()).expect("marked set is consistent")
    }
}

/// `t = ⌊(π/4) √(N/k)⌋`, defined for `0 < k < N`.
pub fn search_iterations(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k >= n {
        return Err(Error::UndefinedRotation { k, n });
    }
    Ok((std::f64::consts::FRAC_PI_4 * (n as f64 / k as f64).sqrt()).floor() as usize)
}

/// `O_f = diag((−1)^{f(x)})` on dims `[N]`.
pub fn phase_oracle<T: Real>(m: &MarkedSet) -> DenseUnitary<T> {
    let diag: Vec<C<T>> = (0..m.domain_size())
        .map(|x| re(if m.contains(x) { -T::one() } else { T::one() }))
        .collect();
    DenseUnitary::diagonal(HilbertDims::single(m.domain_size()).expect("N >= 2"), &diag)
        .expect("diagonal of unit entries")
}

/// `|x>|b> -> |x>|b ⊕ f(x)>` on dims `[N, 2]`.
pub fn bit_oracle<T: Real>(m: &MarkedSet) -> DenseUnitary<T> {
    let n = m.domain_size();
    let image: Vec<usize> = (0..2 * n)
        .map(|i| if m.contains(i / 2) { i ^ 1 } else { i })
        .collect();
    DenseUnitary::permutation(HilbertDims::new(vec![n, 2]).expect("N >= 2"), &image)
        .expect("bit flip is a permutation")
}

/// `G = 2|ψ><ψ| − I` on `n` qubits, flattened to dims `[2^n]`.
pub fn diffusion<T: Real>(qubits: usize) -> Result<DenseUnitary<T>> {
    if qubits == 0 {
        return Err(Error::InvalidArgument("diffusion needs n >= 1".into()));
    }
    let n = 1usize << qubits;
    let off = T::lit(2.0) / T::count(n);
    Ok(DenseUnitary::from_fn_unchecked(
        HilbertDims::single(n)?,
        |r, c| re(if r == c { off - T::one() } else { off }),
    ))
}

/// `U_G = G O_f`
pub fn grover_step<T: Real>(m: &MarkedSet) -> DenseUnitary<T> {
    let g = diffusion::<T>(m.qubits()).expect("qubits >= 1");
    DenseUnitary::from_fn_unchecked(g.dims().clone(), |r, c| {
        if m.contains(c) {
            -g.entry(r, c)
        } else {
            g.entry(r, c)
        }
    })
}

/// Uniform superposition `|ψ> = H^{⊗n}|0>`, flattened to dims `[2^n]`.
pub fn uniform_start<T: Real>(m: &MarkedSet) -> StateVector<T> {
    StateVector::uniform(HilbertDims::single(m.domain_size()).expect("N >= 2"))
}

/// `(|x_0>, |x_1>)`: uniform superpositions of unmarked and marked elements.
pub fn rotation_plane<T: Real>(m: &MarkedSet) -> Result<(StateVector<T>, StateVector<T>)> {
    let n = m.domain_size();
    let k = m.count();
    if k == 0 || k == n {
        return Err(Error::UndefinedRotation { k, n });
    }
    let dims = HilbertDims::single(n)?;
    let a0 = re(T::one() / T::count(n - k).sqrt());
    let a1 = re(T::one() / T::count(k).sqrt());
    let zero = re(T::zero());
    let x0 = (0..n).map(|x| if m.contains(x) { zero } else { a0 }).collect();
    let x1 = (0..n).map(|x| if m.contains(x) { a1 } else { zero }).collect();
    Ok((
        StateVector::from_raw(dims.clone(), x0)?,
        StateVector::from_raw(dims, x1)?,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<T: Real> {
    pub outcome: usize,
    pub success: bool,
    pub iterations: usize,
    /// Exact probability that the measurement lands in the marked set.
    pub success_probability: T,
}

/// State after `t` Grover iterations from the uniform start, applied in
/// place as a sign flip followed by inversion about the mean.
pub fn grover_state<T: Real>(m: &MarkedSet, t: usize) -> StateVector<T> {
    let start = uniform_start::<T>(m);
    let dims = start.dims().clone();
    let mut amps = start.into_amplitudes();
    let n = T::count(amps.len());
    for _ in 0..t {
        for (x, a) in amps.iter_mut().enumerate() {
            if m.contains(x) {
                *a = -*a;
            }
        }
        let mean = amps.iter().sum::<C<T>>() / n;
        for a in amps.iter_mut() {
            *a = mean + mean - *a;
        }
    }
    StateVector::from_raw(dims, amps).expect("length N")
}

/// Runs `⌊(π/4)√(N/k)⌋` iterations and measures.
pub fn grover_search<T: Real>(m: &MarkedSet, rng: &mut SimRng) -> Result<SearchResult<T>> {
    let iterations = search_iterations(m.domain_size(), m.count())?;
    let state = grover_state::<T>(m, iterations);
    let dist = state.outcome_distribution(0)?;
    let success_probability = m.indices().iter().map(|&x| dist[x]).sum();
    let outcome = state.measure(0, rng)?.outcome;
    Ok(SearchResult {
        outcome,
        success: m.contains(outcome),
        iterations,
        success_probability,
    })
}

/// Result of one run of a counting algorithm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountEstimate {
    /// Estimate `k'` of the number of marked elements, unrounded.
    pub k_est: f64,
    /// Post-processed angle the estimate was computed from.
    pub theta_prime: f64,
    /// Oracle queries spent, quantum and classical.
    pub queries: u64,
    /// Guaranteed probability that `k'` is within the error bound.
    pub success_bound: f64,
    /// Last measured first-register value `ω'`.
    pub raw_outcome: usize,
    /// Number of phase-estimation runs performed.
    pub runs: usize,
    /// Outcome of the classical probe, when one was made.
    pub probe: Option<bool>,
}

/// `|k' − k| ≤ 2π√(k(N−k))/P + π²N/P²`, for `0 < k < N`.
pub fn count_error_bound(n: usize, k: usize, dim: usize) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::UndefinedRotation { k, n });
    }
    let pi = std::f64::consts::PI;
    let (n, k, p) = (n as f64, k as f64, dim as f64);
    Ok(2.0 * pi * (k * (n - k)).sqrt() / p + pi * pi * n / (p * p))
}

/// `|sin²θ' − sin²θ| ≤ 2π sinθ cosθ / P + π²/P`, for `0 < θ < π/2`.
pub fn sin_sq_error_bound(theta: f64, dim: usize) -> Result<f64> {
    let pi = std::f64::consts::PI;
    if !(theta > 0.0 && theta < pi / 2.0) {
        return Err(Error::InvalidArgument(format!("theta = {theta} outside (0, pi/2)")));
    }
    let p = dim as f64;
    Ok(2.0 * pi * theta.sin() * theta.cos() / p + pi * pi / p)
}

/// `θ' = πϑ`, reflected to `π − θ'` when above `π/2`.
pub fn counting_angle(vartheta: f64) -> f64 {
    let theta = std::f64::consts::PI * vartheta;
    if theta > std::f64::consts::FRAC_PI_2 {
        std::f64::consts::PI - theta
    } else {
        theta
    }
}

/// Phase estimation of `U_G` on the uniform state, built once and sampled
/// per run.
#[derive(Clone, Debug)]
pub struct GroverCounter {
    n: usize,
    k: usize,
    precision_bits: usize,
    estimator: PhaseEstimator<f64>,
}

impl GroverCounter {
    pub fn new(m: &MarkedSet, p: usize) -> Result<Self> {
        let estimator = PhaseEstimator::new(&grover_step(m), &uniform_start(m), p)?;
        Ok(Self {
            n: m.domain_size(),
            k: m.count(),
            precision_bits: p,
            estimator,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    pub fn marked_count(&self) -> usize {
        self.k
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    /// Exact distribution of `ω'`.
    pub fn distribution(&self) -> &[f64] {
        self.estimator.distribution()
    }

    /// Post-processing applied to a measured `ω'`.
    pub fn estimate_from(&self, pe: PhaseEstimate<f64>) -> CountEstimate {
        let theta_prime = counting_angle(pe.vartheta);
        CountEstimate {
            k_est: theta_prime.sin().powi(2) * self.n as f64,
            theta_prime,
            queries: (1u64 << self.precision_bits) - 1,
            success_bound: eight_over_pi_sq(),
            raw_outcome: pe.raw_outcome,
            runs: 1,
            probe: None,
        }
    }

    pub fn estimate_for_outcome(&self, outcome: usize) -> CountEstimate {
        let p = 1usize << self.precision_bits;
        self.estimate_from(PhaseEstimate {
            raw_outcome: outcome,
            vartheta: outcome as f64 / p as f64,
            precision_bits: self.precision_bits,
        })
    }

    pub fn sample(&self, rng: &mut SimRng) -> CountEstimate {
        self.estimate_from(self.estimator.sample(rng))
    }

    /// Whether `k'` meets the guarantee: within [`count_error_bound`] for
    /// `0 < k < N`, exact otherwise.
    pub fn within_bound(&self, est: &CountEstimate) -> bool {
        match count_error_bound(self.n, self.k, 1 << self.precision_bits) {
            Ok(b) => (est.k_est - self.k as f64).abs() <= b,
            Err(_) => (est.k_est - self.k as f64).abs() <= 1e-9,
        }
    }
}

/// One phase-estimation run of the counting algorithm.
pub fn quantum_count(m: &MarkedSet, p: usize, rng: &mut SimRng) -> Result<CountEstimate> {
    Ok(GroverCounter::new(m, p)?.sample(rng))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountTrial {
    pub trial: u64,
    pub estimate: CountEstimate,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRun {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub precision_bits: usize,
    pub trials: Vec<CountTrial>,
    pub stats: TrialStats,
}

impl CountRun {
    /// Columns `trial, seed, outcome, theta_prime, k_est, bound, pass`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = CsvBuilder::new(&["trial", "seed", "outcome", "theta_prime", "k_est", "bound", "pass"]);
        for t in &self.trials {
            w.row(&[
                t.trial.to_string(),
                self.seed.to_string(),
                t.estimate.raw_outcome.to_string(),
                fmt_f64(t.estimate.theta_prime),
                fmt_f64(t.estimate.k_est),
                fmt_f64(t.bound),
                t.pass.to_string(),
            ]);
        }
        w.finish()
    }
}

/// Independent counting runs; trial `i` draws from stream `i` of `seed`.
pub fn count_trials(m: &MarkedSet, p: usize, trials: usize, seed: u64) -> Result<CountRun> {
    let counter = GroverCounter::new(m, p)?;
    let bound = count_error_bound(m.domain_size(), m.count(), 1 << p).unwrap_or(0.0);
    let rows: Vec<CountTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let estimate = counter.sample(&mut SimRng::with_stream(seed, trial));
            let pass = counter.within_bound(&estimate);
            CountTrial {
                trial,
                estimate,
                bound,
                pass,
            }
        })
        .collect();
    let exact = m.count() == 0 || m.count() == m.domain_size();
    let target = if exact { 1.0 } else { eight_over_pi_sq() };
    let stats = TrialStats::from_trials(
        &rows.iter().map(|r| r.pass).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.estimate.k_est).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.estimate.queries).collect::<Vec<_>>(),
        target,
    );
    Ok(CountRun {
        seed,
        n: m.domain_size(),
        k: m.count(),
        precision_bits: p,
        trials: rows,
        stats,
    })
}
