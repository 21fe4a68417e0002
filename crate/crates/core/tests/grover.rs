use num_complex::Complex64;
use walkcount::grover::{
    bit_oracle, count_trials, diffusion, grover_state, grover_step, phase_oracle, rotation_plane,
    uniform_start, GroverAngles, GroverCounter, MarkedSet,
};
use walkcount::{HilbertDims, StateVector};

fn minus() -> StateVector<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(HilbertDims::single(2).unwrap(), vec![s.into(), (-s).into()]).unwrap()
}

#[test]
fn bit_oracle_kicks_back_phase() {
    let m = MarkedSet::new(3, &[1, 6]).unwrap();
    let bit = bit_oracle::<f64>(&m);
    let phase = phase_oracle::<f64>(&m);
    for x in 0..8 {
        let input = StateVector::basis(HilbertDims::single(8).unwrap(), x).unwrap().tensor(&minus());
        let out = bit.apply(&input).unwrap();
        let sign = phase.entry(x, x);
        assert!(out.max_abs_diff(&input.scaled(sign)).unwrap() < 1e-15);
    }
}

#[test]
fn oracle_and_diffusion_are_involutions() {
    let m = MarkedSet::new(4, &[0, 3, 9]).unwrap();
    let o = phase_oracle::<f64>(&m);
    let id = walkcount::DenseUnitary::identity(o.dims().clone());
    assert_eq!(o.compose(&o).unwrap(), id);
    let g = diffusion::<f64>(4).unwrap();
    assert!(g.compose(&g).unwrap().max_abs_diff(&id).unwrap() < 1e-14);
}

#[test]
fn diffusion_spreads_amplitude() {
    let g = diffusion::<f64>(3).unwrap();
    for x in 0..8 {
        for y in 0..8 {
            let expected = if x == y { 2.0 / 8.0 - 1.0 } else { 2.0 / 8.0 };
            assert!((g.entry(y, x).re - expected).abs() < 1e-15);
        }
    }
}

#[test]
fn step_without_marks_is_diffusion() {
    let m = MarkedSet::new(3, &[]).unwrap();
    assert_eq!(grover_step::<f64>(&m), diffusion::<f64>(3).unwrap());
}

#[test]
fn plane_is_invariant() {
    for qubits in 2..=6 {
        for k in [1usize, 3, (1 << qubits) / 2, (1 << qubits) - 1] {
            let m = MarkedSet::first(qubits, k).unwrap();
            let (x0, x1) = rotation_plane::<f64>(&m).unwrap();
            let u = grover_step::<f64>(&m);
            for v in [&x0, &x1] {
                let out = u.apply(v).unwrap();
                let a = x0.inner(&out).unwrap();
                let b = x1.inner(&out).unwrap();
                let inside = a.norm_sqr() + b.norm_sqr();
                assert!((1.0 - inside).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn rotation_law() {
    for (qubits, k) in [(2usize, 1usize), (4, 4), (5, 3), (8, 1), (8, 17)] {
        let m = MarkedSet::first(qubits, k).unwrap();
        let theta = GroverAngles::<f64>::of(&m).theta;
        let (x0, x1) = rotation_plane::<f64>(&m).unwrap();
        for t in 0..=10 {
            let s = grover_state::<f64>(&m, t);
            let angle = (2 * t + 1) as f64 * theta;
            assert!((x0.inner(&s).unwrap() - Complex64::from(angle.cos())).norm() < 1e-10);
            assert!((x1.inner(&s).unwrap() - Complex64::from(angle.sin())).norm() < 1e-10);
        }
    }
}

#[test]
fn plane_eigenvalues_are_double_angle() {
    let m = MarkedSet::first(5, 5).unwrap();
    let theta = GroverAngles::<f64>::of(&m).theta;
    let (x0, x1) = rotation_plane::<f64>(&m).unwrap();
    let u = grover_step::<f64>(&m);
    let basis = [&x0, &x1];
    let mut r = [[Complex64::from(0.0); 2]; 2];
    for (j, b) in basis.iter().enumerate() {
        let out = u.apply(b).unwrap();
        for (i, a) in basis.iter().enumerate() {
            r[i][j] = a.inner(&out).unwrap();
        }
    }
    let trace = r[0][0] + r[1][1];
    let det = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    // e^{±2iθ}: trace 2cos2θ, determinant 1
    assert!((trace - Complex64::from(2.0 * (2.0 * theta).cos())).norm() < 1e-12);
    assert!((det - Complex64::from(1.0)).norm() < 1e-12);
}

#[test]
fn angles_are_consistent() {
    for n in [4usize, 16, 256] {
        for k in 0..=n {
            let a = GroverAngles::<f64>::new(n, k).unwrap();
            assert!((a.sin_theta.powi(2) + a.cos_theta.powi(2) - 1.0).abs() < 1e-14);
            assert!(a.theta >= 0.0 && a.theta <= std::f64::consts::FRAC_PI_2);
        }
    }
}

#[test]
fn distribution_concentrates_near_theta() {
    let m = MarkedSet::first(4, 4).unwrap();
    let c = GroverCounter::new(&m, 4).unwrap();
    let dist = c.distribution();
    // θ/π = 1/6: P·1/6 = 2.67 and P·5/6 = 13.33
    let mass = dist[2] + dist[3] + dist[13] + dist[14];
    assert!(mass >= 8.0 / std::f64::consts::PI.powi(2));
    assert!((dist.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert_eq!(uniform_start::<f64>(&m).len(), 16);
}

#[test]
fn exact_counts_always_pass() {
    for k in [0usize, 16] {
        let run = count_trials(&MarkedSet::first(4, k).unwrap(), 4, 200, 1).unwrap();
        assert_eq!(run.stats.successes, 200);
    }
}

#[test]
fn in_place_iteration_matches_dense_step() {
    let m = MarkedSet::new(5, &[2, 7, 30]).unwrap();
    let u = grover_step::<f64>(&m);
    let mut dense = uniform_start::<f64>(&m);
    for t in 0..6 {
        assert!(grover_state::<f64>(&m, t).max_abs_diff(&dense).unwrap() < 1e-14);
        dense = u.apply(&dense).unwrap();
    }
    let composed = diffusion::<f64>(5).unwrap().compose(&phase_oracle(&m)).unwrap();
    assert!(u.max_abs_diff(&composed).unwrap() < 1e-15);
}
