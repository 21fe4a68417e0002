use walkcount::fourier::{boundary_prob, eight_over_pi_sq, f_of_w, fourier_state, overlap_sq};
use walkcount::qcircuit::qft;
use walkcount::SimRng;

fn brute_overlap(dim: usize, a: f64, b: f64) -> f64 {
    let fa = fourier_state::<f64>(dim, a).unwrap();
    let fb = fourier_state::<f64>(dim, b).unwrap();
    fa.inner(&fb).unwrap().norm_sqr()
}

#[test]
fn overlap_matches_inner_products() {
    let mut rng = SimRng::new(11);
    for &dim in &[2usize, 3, 4, 8, 16, 32] {
        for _ in 0..200 {
            let a = rng.uniform() * dim as f64;
            let b = rng.uniform() * dim as f64;
            let dev = (overlap_sq(dim, a, b) - brute_overlap(dim, a, b)).abs();
            assert!(dev < 1e-10, "P={dim} a={a} b={b} dev={dev}");
        }
    }
}

#[test]
fn overlap_near_singular_points() {
    for &dim in &[3usize, 8] {
        for &eps in &[0.0, 1e-14, 1e-9, 1e-6] {
            let direct = brute_overlap(dim, 1.0, 1.0 + eps);
            assert!((overlap_sq(dim, 1.0, 1.0 + eps) - direct).abs() < 1e-10);
            let wrapped = brute_overlap(dim, 0.0, dim as f64 - eps);
            assert!((overlap_sq(dim, 0.0, dim as f64 - eps) - wrapped).abs() < 1e-10);
        }
    }
}

#[test]
fn integer_fourier_states_are_qft_columns() {
    for p in 1..=5 {
        let q = qft::<f64>(p).unwrap();
        let dim = 1usize << p;
        for j in 0..dim {
            let f = fourier_state::<f64>(dim, j as f64).unwrap();
            for (a, b) in f.amplitudes().iter().zip(q.column(j)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn boundary_probability_floor() {
    let floor = eight_over_pi_sq::<f64>() - 1e-12;
    for dim in 1..=64usize {
        for i in 0..=400 {
            let omega = dim as f64 * i as f64 / 400.0;
            assert!(boundary_prob(dim, omega).unwrap() >= floor, "P={dim} omega={omega}");
        }
    }
}

#[test]
fn boundary_probability_is_measured_mass() {
    // compare with the distribution of QFT⁻¹|F_P(ω)>
    let p = 3;
    let inv = walkcount::qcircuit::qft_inverse::<f64>(p).unwrap();
    for &omega in &[0.3, 2.5, 7.7] {
        let f = fourier_state::<f64>(8, omega)
            .unwrap()
            .with_dims(walkcount::HilbertDims::single(8).unwrap())
            .unwrap();
        let inv = inv.clone().with_dims(walkcount::HilbertDims::single(8).unwrap()).unwrap();
        let dist = inv.apply(&f).unwrap().outcome_distribution(0).unwrap();
        let lo = omega.floor() as usize % 8;
        let hi = omega.ceil() as usize % 8;
        assert!((dist[lo] + dist[hi] - boundary_prob(8, omega).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn f_symmetric_on_dyadic_grid() {
    for dim in [3usize, 7, 30, 64] {
        for i in 1..1024 {
            let w = i as f64 / 1024.0;
            assert_eq!(f_of_w(dim, w).unwrap(), f_of_w(dim, 1.0 - w).unwrap());
        }
    }
}
