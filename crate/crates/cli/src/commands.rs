use anyhow::{bail, Result};
use serde_json::{json, Value};
use walkcount::fourier::{appendix_a_suite, eight_over_pi_sq, f_of_w, fourier_state};
use walkcount::grover::{count_trials, grover_search, search_iterations, MarkedSet};
use walkcount::output::{fmt_f64, CsvBuilder};
use walkcount::qcircuit::{qft, qft_circuit};
use walkcount::walk::{monte_carlo_count, reduced_operator, BipartiteMarking, WalkAngles, WalkSpace};
use walkcount::SimRng;

/// What a command produced: the CSV body, a JSON summary, and whether
/// every embedded check held.
pub struct Report {
    pub csv: String,
    pub summary: Value,
    pub pass: bool,
}

pub fn qft_verify(p_max: usize) -> Result<Report> {
    if p_max == 0 || p_max > 10 {
        bail!("p_max must be in 1..=10");
    }
    let mut w = CsvBuilder::new(&["p", "max_abs_dev", "pass"]);
    let mut pass = true;
    for p in 1..=p_max {
        let dev = qft_circuit(p)?.matrix::<f64>().max_abs_diff(&qft(p)?)?;
        let ok = dev < 1e-12;
        pass &= ok;
        w.row(&[p.to_string(), fmt_f64(dev), ok.to_string()]);
    }
    Ok(Report {
        csv: w.finish()?,
        summary: json!({ "command": "qft-verify", "p_max": p_max, "pass": pass }),
        pass,
    })
}

pub fn fourier_fig(dim: usize, omegas: &[f64]) -> Result<Report> {
    let mut w = CsvBuilder::new(&["omega", "l", "re", "im"]);
    let mut pass = true;
    for &omega in omegas {
        let state = fourier_state::<f64>(dim, omega)?;
        pass &= (state.norm() - 1.0).abs() < 1e-12;
        for (l, a) in state.amplitudes().iter().enumerate() {
            w.row(&[fmt_f64(omega), l.to_string(), fmt_f64(a.re), fmt_f64(a.im)]);
        }
    }
    Ok(Report {
        csv: w.finish()?,
        summary: json!({ "command": "fourier-fig", "P": dim, "omega": omegas, "pass": pass }),
        pass,
    })
}

pub fn fw_min(dims: &[usize], resolution: f64) -> Result<Report> {
    if !(resolution > 0.0 && resolution <= 1e-2) {
        bail!("resolution must be in (0, 1e-2]");
    }
    let steps = (1.0 / resolution).round() as usize;
    let mut w = CsvBuilder::new(&["P", "w", "f", "is_min"]);
    let mut minima = Vec::new();
    let mut pass = true;
    for &dim in dims {
        let points: Vec<(f64, f64)> = (1..steps)
            .map(|i| {
                let x = i as f64 / steps as f64;
                f_of_w(dim, x).map(|f| (x, f))
            })
            .collect::<walkcount::Result<_>>()?;
        let (argmin, &(w_min, f_min)) = points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .expect("non-empty grid");
        let ok = f_min >= eight_over_pi_sq::<f64>() && (dim < 3 || (w_min - 0.5).abs() <= resolution);
        pass &= ok;
        minima.push(json!({ "P": dim, "w": w_min, "f": f_min, "pass": ok }));
        for (i, (x, f)) in points.iter().enumerate() {
            w.row(&[dim.to_string(), fmt_f64(*x), fmt_f64(*f), (i == argmin).to_string()]);
        }
    }
    Ok(Report {
        csv: w.finish()?,
        summary: json!({ "command": "fw-min", "minima": minima, "pass": pass }),
        pass,
    })
}

pub fn appendix_a(dims: &[usize], resolution: f64) -> Result<Report> {
    let report = appendix_a_suite(dims, resolution)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "P": v.dim, "check": v.check.name(), "at": v.at, "lhs": v.lhs, "rhs": v.rhs }))
        .collect();
    Ok(Report {
        csv: report.to_csv()?,
        summary: json!({
            "command": "appendix-a",
            "resolution": resolution,
            "violations": violations,
            "pass": report.passed(),
        }),
        pass: report.passed(),
    })
}

pub fn grover(qubits: usize, marked: usize, trials: usize, seed: u64) -> Result<Report> {
    let m = MarkedSet::first(qubits, marked)?;
    let (n, k) = (m.domain_size(), m.count());
    let iterations = search_iterations(n, k)?;
    let mut w = CsvBuilder::new(&["trial", "seed", "outcome", "success"]);
    let mut probability = 0.0;
    let mut hits = 0;
    for trial in 0..trials as u64 {
        let r = grover_search::<f64>(&m, &mut SimRng::with_stream(seed, trial))?;
        probability = r.success_probability;
        hits += usize::from(r.success);
        w.row(&[trial.to_string(), seed.to_string(), r.outcome.to_string(), r.success.to_string()]);
    }
    if trials == 0 {
        probability = grover_search::<f64>(&m, &mut SimRng::new(seed))?.success_probability;
    }
    let bound = 1.0 - k as f64 / n as f64;
    let pass = probability >= bound - 1e-12;
    Ok(Report {
        csv: w.finish()?,
        summary: json!({
            "command": "grover",
            "N": n,
            "k": k,
            "iterations": iterations,
            "success_probability": probability,
            "bound": bound,
            "frequency": if trials > 0 { hits as f64 / trials as f64 } else { f64::NAN },
            "pass": pass,
        }),
        pass,
    })
}

pub fn grover_count(qubits: usize, k: usize, p: usize, trials: usize, seed: u64) -> Result<Report> {
    let run = count_trials(&MarkedSet::first(qubits, k)?, p, trials, seed)?;
    Ok(Report {
        csv: run.to_csv()?,
        summary: json!({
            "command": "count",
            "mode": "grover",
            "N": run.n,
            "k": run.k,
            "p": p,
            "seed": seed,
            "stats": run.stats,
            "pass": run.stats.pass,
        }),
        pass: run.stats.pass,
    })
}

pub fn walk_count(n: usize, k: usize, p: usize, t: u32, trials: usize, seed: u64) -> Result<Report> {
    let ws = WalkSpace::complete_bipartite(n)?;
    let bm = BipartiteMarking::first(n, n, k, k)?;
    let run = monte_carlo_count(&ws, &bm, p, t, trials, seed)?;
    Ok(Report {
        csv: run.to_csv()?,
        summary: json!({
            "command": "walk-count",
            "N": run.n,
            "k": run.k,
            "p": p,
            "t": t,
            "seed": seed,
            "bound": run.bound,
            "stats": run.stats,
            "pass": run.stats.pass,
        }),
        pass: run.stats.pass,
    })
}

pub fn spectrum(n1: usize, k1: usize, n2: usize, k2: usize) -> Result<Report> {
    let angles = WalkAngles::<f64>::from_counts(n1, k1, n2, k2)?;
    let sys = reduced_operator(angles);
    let mut w = CsvBuilder::new(&["label", "angle", "re", "im", "probability"]);
    let closed = sys.projection_probabilities();
    for (pair, (_, prob)) in sys.eigenpairs.iter().zip(&closed) {
        w.row(&[
            pair.label.angle_name().to_string(),
            fmt_f64(pair.label.angle(&angles)),
            fmt_f64(pair.value.re),
            fmt_f64(pair.value.im),
            fmt_f64(*prob),
        ]);
    }
    let total: f64 = closed.iter().map(|x| x.1).sum();
    let residual = sys.max_residual();
    let pass = (total - 1.0).abs() < 1e-12 && residual < 1e-10;
    Ok(Report {
        csv: w.finish()?,
        summary: json!({
            "command": "spectrum",
            "theta1": angles.theta1,
            "theta2": angles.theta2,
            "sigma": angles.sigma(),
            "delta": angles.delta(),
            "probability_sum": total,
            "max_residual": residual,
            "pass": pass,
        }),
        pass,
    })
}
