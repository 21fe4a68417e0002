use nalgebra::DMatrix;
use num_complex::Complex64;
use walkcount::walk::{
    edge_superposition, flip_flop_shift, grover_coin, monte_carlo_count, reduced_basis,
    reduced_edge_state, reduced_operator, search_operator, u_block, walk_operator,
    BipartiteMarking, EigenLabel, WalkAngles, WalkSpace,
};
use walkcount::StateVector;

#[test]
fn walk_law_on_every_basis_state() {
    for n in [2usize, 4, 8] {
        let ws = WalkSpace::complete_bipartite(n).unwrap();
        let u = walk_operator::<f64>(&ws);
        let d = n as f64;
        for v in 0..2 * n {
            for c in 0..n {
                let out = u.apply(&StateVector::basis(ws.dims(), ws.index(v, c)).unwrap()).unwrap();
                let target = ws.neighbor(v, c);
                let mut expected = vec![Complex64::from(0.0); ws.total_dim()];
                for u2 in ws.graph().graph().neighbors(v) {
                    let color = ws.graph().color(v, u2).unwrap();
                    let coeff = if u2 == target { 2.0 / d - 1.0 } else { 2.0 / d };
                    expected[ws.index(u2, color)] = coeff.into();
                }
                for (a, b) in out.amplitudes().iter().zip(&expected) {
                    assert!((a - b).norm() < 1e-12, "n={n} v={v} c={c}");
                }
            }
        }
    }
}

#[test]
fn operators_are_unitary_involutions() {
    let ws = WalkSpace::complete_bipartite(4).unwrap();
    let bm = BipartiteMarking::first(4, 4, 1, 1).unwrap();
    let s = flip_flop_shift::<f64>(&ws);
    let id = walkcount::DenseUnitary::identity(ws.dims());
    assert_eq!(s.compose(&s).unwrap(), id);
    assert!(walk_operator::<f64>(&ws).unitarity_deviation() < 1e-12);
    assert!(search_operator::<f64>(&ws, &bm).unwrap().unitarity_deviation() < 1e-12);
    let c = grover_coin::<f64>(7).unwrap();
    assert!(c.unitarity_deviation() < 1e-12);
}

#[test]
fn oracle_flips_marked_positions() {
    let ws = WalkSpace::complete_bipartite(3).unwrap();
    let bm = BipartiteMarking::new(3, 3, &[1], &[5]).unwrap();
    let u = search_operator::<f64>(&ws, &bm).unwrap();
    let w = walk_operator::<f64>(&ws);
    for v in 0..6 {
        for c in 0..3 {
            let i = ws.index(v, c);
            let sign = if v == 1 || v == 5 { -1.0 } else { 1.0 };
            for r in 0..18 {
                assert!((u.entry(r, i) - w.entry(r, i) * sign).norm() < 1e-15);
            }
        }
    }
}

#[test]
fn reduced_basis_is_orthonormal() {
    for (n, k1, k2) in [(2, 1, 1), (4, 1, 1), (5, 2, 3), (8, 3, 5)] {
        let ws = WalkSpace::complete_bipartite(n).unwrap();
        let bm = BipartiteMarking::first(n, n, k1, k2).unwrap();
        let b = reduced_basis::<f64>(&ws, &bm).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let g = b[i].inner(&b[j]).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g - Complex64::from(expected)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn block_product_is_rotation_kron() {
    let rot = |t: f64| [[t.cos(), -t.sin()], [t.sin(), t.cos()]];
    for (t1, t2) in [(0.4, 1.3), (2.0, 0.1), (1.0, 1.0)] {
        let a = u_block(t1);
        let b = u_block(t2);
        let (r1, r2) = (rot(t1), rot(t2));
        for i in 0..4 {
            for j in 0..4 {
                let prod: f64 = (0..4).map(|m| a[i][m] * b[m][j]).sum();
                let kron = r1[j / 2][i / 2] * r2[i % 2][j % 2];
                assert!((prod - kron).abs() < 1e-14, "t1={t1} t2={t2} ({i},{j})");
            }
        }
    }
}

fn sorted_by_angle(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.re.total_cmp(&b.re)));
    v
}

#[test]
fn eigenvalues_match_numeric_solver() {
    for (t1, t2) in [(1.0471975511965976, 1.0471975511965976), (0.3, 2.2), (1.9, 0.7), (0.05, 3.0)] {
        let sys = reduced_operator(WalkAngles::<f64>::new(t1, t2).unwrap());
        let m = DMatrix::from_fn(8, 8, |r, c| sys.u_prime.entry(r, c).re);
        let numeric: Vec<Complex64> = m
            .complex_eigenvalues()
            .iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect();
        let analytic: Vec<Complex64> = sys.eigenpairs.iter().map(|p| p.value).collect();
        let mut remaining = numeric.clone();
        for a in sorted_by_angle(analytic) {
            let (idx, dist) = remaining
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - a).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(dist < 1e-9, "angles ({t1},{t2}) eigenvalue {a} unmatched, nearest {dist}");
            remaining.remove(idx);
        }
    }
}

#[test]
fn eigenvectors_are_orthonormal() {
    let sys = reduced_operator(WalkAngles::<f64>::new(0.8, 0.8).unwrap());
    for a in &sys.eigenpairs {
        for b in &sys.eigenpairs {
            let g: Complex64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x.conj() * y).sum();
            let expected = if a.label == b.label { 1.0 } else { 0.0 };
            assert!((g - Complex64::from(expected)).norm() < 1e-12);
        }
    }
}

#[test]
fn appendix_b_projections() {
    for (t1, t2) in [(0.4, 1.3), (2.0, 0.1), (1.2, 1.2)] {
        let angles = WalkAngles::<f64>::new(t1, t2).unwrap();
        let sys = reduced_operator(angles);
        let (s, d) = (angles.sigma(), angles.delta());
        for (label, p) in sys.numeric_probabilities() {
            let expected = match label {
                EigenLabel::SigmaPlus | EigenLabel::SigmaPlusConj => (1.0 + d.cos()) / 8.0,
                EigenLabel::SigmaMinus | EigenLabel::SigmaMinusConj => (1.0 - d.cos()) / 8.0,
                EigenLabel::DeltaPlus | EigenLabel::DeltaPlusConj => (1.0 + s.cos()) / 8.0,
                EigenLabel::DeltaMinus | EigenLabel::DeltaMinusConj => (1.0 - s.cos()) / 8.0,
            };
            assert!((p - expected).abs() < 1e-12);
        }
        let total: f64 = sys.numeric_probabilities().iter().map(|x| x.1).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn edge_state_matches_reduced_coefficients() {
    let ws = WalkSpace::complete_bipartite(6).unwrap();
    let bm = BipartiteMarking::first(6, 6, 2, 5).unwrap();
    let d = edge_superposition::<f64>(&ws);
    let basis = reduced_basis::<f64>(&ws, &bm).unwrap();
    for (b, x) in basis.iter().zip(reduced_edge_state(&bm.angles::<f64>())) {
        assert!((b.inner(&d).unwrap() - x).norm() < 1e-12);
    }
}

#[test]
fn exact_branch_always_succeeds() {
    let ws = WalkSpace::complete_bipartite(4).unwrap();
    let bm = BipartiteMarking::first(4, 4, 0, 0).unwrap();
    let run = monte_carlo_count(&ws, &bm, 4, 2, 100, 7).unwrap();
    assert_eq!(run.stats.successes, 100);
    assert!(run.trials.iter().all(|t| t.estimate.k_est == 0.0));
}

#[test]
fn spectrum_of_forty_vertex_parts() {
    let a = WalkAngles::<f64>::from_counts(40, 2, 40, 1).unwrap();
    assert!((a.theta1.cos() - 0.9).abs() < 1e-14);
    assert!((a.theta2.cos() - 0.95).abs() < 1e-14);
    let sys = reduced_operator(a);
    assert!(sys.max_residual() < 1e-12);
}
