//! Closed-form analytics of Fourier states `|F_P(ω)>` and of the
//! measurement statistics of `QFT⁻¹|F_P(ω)>`.
//!
//! Two normalizations of the boundary-probability function appear here:
//! [`f_of_w`] is the probability itself (with the `1/P²` factor) while
//! [`f_pi`] is the shifted, even form on `θ ∈ (−π/2, π/2)` with that factor
//! removed, `f_π(θ) = P² f(θ/π + 1/2)`. The lower bound `2 csc²(π/2P)` is
//! stated for `f_π`.

use crate::error::{Error, Result};
use crate::qstate::{HilbertDims, StateVector};
use crate::scalar::{cis, Real, Tolerances};

/// `8/π²`, the guaranteed probability of landing on a neighbouring outcome.
pub fn eight_over_pi_sq<T: Real>() -> T {
    T::lit(8.0) / (T::PI() * T::PI())
}

fn check_omega<T: Real>(dim: usize, omega: T) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("Fourier dimension must be >= 1".into()));
    }
    if !(omega >= T::zero() && omega <= T::count(dim)) {
        return Err(Error::InvalidArgument(format!(
            "omega = {omega} outside [0, {dim}]"
        )));
    }
    Ok(())
}

/// `|F_P(ω)> = P^{-1/2} Σ_l e^{2πiωl/P} |l>` for real `ω ∈ [0, P]`.
pub fn fourier_state<T: Real>(dim: usize, omega: T) -> Result<StateVector<T>> {
    check_omega(dim, omega)?;
    let p = T::count(dim);
    let scale = T::one() / p.sqrt();
    // ω = P is the same state as ω = 0
    let omega = if omega == p { T::zero() } else { omega };
    let amps = (0..dim)
        .map(|l| cis(T::TAU() * omega * T::count(l) / p) * scale)
        .collect();
    StateVector::from_raw(HilbertDims::single(dim)?, amps)
}

/// `sinc(x) = sin(x)/x`, `sinc(0) = 1`.
fn sinc<T: Real>(x: T) -> T {
    if x == T::zero() {
        T::one()
    } else {
        x.sin() / x
    }
}

/// `|<F_P(ω)|F_P(ω')>|² = sin²(πΔ) / (P² sin²(πΔ/P))` with `Δ = ω' − ω`.
///
/// Only `Δ mod P` matters. When the denominator vanishes the value is the
/// limit, evaluated through a ratio of `sinc` terms.
pub fn overlap_sq<T: Real>(dim: usize, omega: T, omega_prime: T) -> T {
    let p = T::count(dim);
    let delta = omega_prime - omega;
    // distinct integer labels are orthogonal Fourier basis states
    if delta.fract() == T::zero() && (delta / p).fract() != T::zero() {
        return T::zero();
    }
    let r = delta - p * (delta / p).round();
    let x = T::PI() * r;
    let s = (x / p).sin();
    if s.abs() < T::lit(Tolerances::DEFAULT.singular_sine) {
        let ratio = sinc(x) / sinc(x / p);
        ratio * ratio
    } else {
        let n = x.sin();
        (n * n) / (p * p * s * s)
    }
}

/// Probability that measuring `QFT⁻¹|F_P(ω)>` returns `⌊ω⌋` or `⌈ω⌉`
/// (outcome `P` is outcome `0`). Equals 1 for integer `ω`.
pub fn boundary_prob<T: Real>(dim: usize, omega: T) -> Result<T> {
    check_omega(dim, omega)?;
    if omega.fract() == T::zero() {
        return Ok(T::one());
    }
    let lo = omega.floor();
    let hi = omega.ceil();
    let lo_outcome = lo.as_f64() as usize % dim;
    let hi_outcome = hi.as_f64() as usize % dim;
    let mut total = overlap_sq(dim, lo, omega);
    if hi_outcome != lo_outcome {
        total += overlap_sq(dim, hi, omega);
    }
    Ok(total)
}

fn boundary_term<T: Real>(p: T, w: T) -> T {
    let x = T::PI() * w;
    let n = x.sin();
    let d = (x / p).sin();
    (n * n) / (p * p * d * d)
}

/// `f(w) = sin²(πw)/(P² sin²(πw/P)) + sin²(π(1−w))/(P² sin²(π(1−w)/P))`
/// for `0 < w < 1`.
pub fn f_of_w<T: Real>(dim: usize, w: T) -> Result<T> {
    if dim == 0 || !(w > T::zero() && w < T::one()) {
        return Err(Error::InvalidArgument(format!(
            "f(w) needs P >= 1 and 0 < w < 1, got P = {dim}, w = {w}"
        )));
    }
    let p = T::count(dim);
    Ok(boundary_term(p, w) + boundary_term(p, T::one() - w))
}

/// `f_π(θ) = cos²θ (csc²(π/2P + θ/P) + csc²(π/2P − θ/P))` on `(−π/2, π/2)`.
pub fn f_pi<T: Real>(dim: usize, theta: T) -> T {
    let p = T::count(dim);
    let a = T::FRAC_PI_2() / p;
    let c = theta.cos();
    let s1 = (a + theta / p).sin();
    let s2 = (a - theta / p).sin();
    c * c * (T::one() / (s1 * s1) + T::one() / (s2 * s2))
}

/// `2 csc²(π/2P)`, the value of `f_π` at its minimum `θ = 0`.
pub fn f_pi_bound<T: Real>(dim: usize) -> T {
    let s = (T::FRAC_PI_2() / T::count(dim)).sin();
    T::lit(2.0) / (s * s)
}

/// Which Appendix-style property a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppendixCheck {
    Symmetry,
    ArgMin,
    MinimumBound,
    FpiBound,
    SineBound,
    CosineBound,
    Constant,
}

impl AppendixCheck {
    pub fn name(self) -> &'static str {
        match self {
            AppendixCheck::Symmetry => "symmetry",
            AppendixCheck::ArgMin => "argmin",
            AppendixCheck::MinimumBound => "min>=8/pi^2",
            AppendixCheck::FpiBound => "f_pi>=2csc^2",
            AppendixCheck::SineBound => "sin_aux",
            AppendixCheck::CosineBound => "cos_aux",
            AppendixCheck::Constant => "constant",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub dim: usize,
    pub check: AppendixCheck,
    /// `w` for checks on `f`, `θ` for checks on `f_π` and the auxiliary bounds.
    pub at: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Per-dimension outcome of the scan.
#[derive(Clone, Debug, PartialEq)]
pub struct DimSummary {
    pub dim: usize,
    pub argmin_w: f64,
    pub min_f: f64,
    pub bound: f64,
    /// `false` for `P ≤ 2`, where `f` is constant and has no unique minimizer.
    pub argmin_checked: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AppendixReport {
    pub summaries: Vec<DimSummary>,
    pub violations: Vec<Violation>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Rows `(P, w, f, bound, pass)`, one per dimension, at the grid minimum.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = crate::output::CsvBuilder::new(&["P", "w", "f", "bound", "pass"]);
        for s in &self.summaries {
            w.row(&[
                s.dim.to_string(),
                crate::output::fmt_f64(s.argmin_w),
                crate::output::fmt_f64(s.min_f),
                crate::output::fmt_f64(s.bound),
                s.pass.to_string(),
            ]);
        }
        w.finish()
    }
}

const SYMMETRY_TOL: f64 = 1e-12;
const RELATIVE_TOL: f64 = 1e-12;

/// Numeric confirmation that `f(w)` is symmetric about `1/2`, attains its
/// grid minimum there, never drops below `8/π²`, and that the bounds used to
/// prove it hold pointwise on a grid of spacing `resolution`.
pub fn appendix_a_suite(dims: &[usize], resolution: f64) -> Result<AppendixReport> {
    if !(resolution > 0.0 && resolution <= 1e-3) {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must be in (0, 1e-3], got {resolution}"
        )));
    }
    let steps = (1.0 / resolution).round() as usize;
    let mut report = AppendixReport::default();
    for &dim in dims {
        if dim == 0 {
            return Err(Error::InvalidArgument("P must be >= 1".into()));
        }
        scan_dim(dim, steps, &mut report)?;
    }
    Ok(report)
}

fn scan_dim(dim: usize, steps: usize, report: &mut AppendixReport) -> Result<()> {
    let bound = eight_over_pi_sq::<f64>();
    let before = report.violations.len();
    let mut push = |check, at, lhs, rhs| {
        report.violations.push(Violation {
            dim,
            check,
            at,
            lhs,
            rhs,
        })
    };

    let ws: Vec<f64> = (1..steps).map(|i| i as f64 / steps as f64).collect();
    let fs: Vec<f64> = ws.iter().map(|&w| f_of_w(dim, w)).collect::<Result<_>>()?;
    let (argmin, &min_f) = fs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let argmin_w = ws[argmin];

    if min_f < bound - RELATIVE_TOL {
        push(AppendixCheck::MinimumBound, argmin_w, min_f, bound);
    }
    for (&w, &f) in ws.iter().zip(&fs) {
        let mirror = f_of_w(dim, 1.0 - w)?;
        if (f - mirror).abs() > SYMMETRY_TOL {
            push(AppendixCheck::Symmetry, w, f, mirror);
        }
    }

    let argmin_checked = dim >= 3;
    if argmin_checked {
        let resolution = 1.0 / steps as f64;
        if (argmin_w - 0.5).abs() > resolution * (1.0 + 1e-9) {
            push(AppendixCheck::ArgMin, argmin_w, argmin_w, 0.5);
        }
        let fpi_rhs = f_pi_bound::<f64>(dim);
        for i in 1..steps {
            let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * i as f64 / steps as f64;
            let lhs = f_pi(dim, theta);
            if lhs < fpi_rhs * (1.0 - RELATIVE_TOL) {
                push(AppendixCheck::FpiBound, theta, lhs, fpi_rhs);
            }
        }
        let p = dim as f64;
        let pi = std::f64::consts::PI;
        for i in 0..steps {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
            let lhs = (theta / p).sin();
            let rhs = 2.0 * theta / pi * (pi / (2.0 * p)).sin();
            if lhs < rhs - RELATIVE_TOL {
                push(AppendixCheck::SineBound, theta, lhs, rhs);
            }
            let q = pi * pi - 4.0 * theta * theta;
            let lhs = (2.0 * 2f64.sqrt() * pi * pi * theta * theta + pi.powi(4)) / (q * q)
                * theta.cos().powi(2);
            if lhs < 1.0 - RELATIVE_TOL {
                push(AppendixCheck::CosineBound, theta, lhs, 1.0);
            }
        }
    } else {
        let constant = if dim == 1 { 2.0 } else { 1.0 };
        for (&w, &f) in ws.iter().zip(&fs) {
            if (f - constant).abs() > SYMMETRY_TOL {
                push(AppendixCheck::Constant, w, f, constant);
            }
        }
    }

    let pass = report.violations.len() == before;
    report.summaries.push(DimSummary {
        dim,
        argmin_w,
        min_f,
        bound,
        argmin_checked,
        pass,
    });
    Ok(())
}
