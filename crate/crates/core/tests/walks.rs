use num_bigint::BigUint;
use num_complex::Complex;
use pathsum::walks::*;

#[test]
fn ring_kernel_unitary_for_reference_sizes() {
    for n in [32usize, 200] {
        for t in [1.0f64, 5.0, 20.0] {
            let s: f64 = (0..n as i64).map(|d| ctqrw_exact(n, t, d).unwrap().norm_sqr()).sum();
            assert!((s - 1.0).abs() < 1e-9, "N={n} t={t}");
        }
    }
}

#[test]
fn large_ring_approaches_bessel_kernel() {
    let t = 10.0f64;
    let worst = (-40i64..=40)
        .map(|d| (ctqrw_exact(1000, t, d).unwrap().norm() - ctqrw_bessel(t, d).unwrap().norm()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 5e-3, "{worst}");
}

#[test]
fn wavefront_moves_at_speed_two() {
    let t = 10.0f64;
    let (arg, _) = (0i64..=60)
        .map(|d| (d, ctqrw_exact(1000, t, d).unwrap().norm_sqr()))
        .fold((0, 0.0), |b, x| if x.1 > b.1 { x } else { b });
    assert!((2.0 * t - 2.0..=2.0 * t + 2.0).contains(&(arg as f64)), "{arg}");
}

#[test]
fn combinatorial_moduli_match_simulation() {
    let mut s = WalkerState::<f64>::at_origin(Coin::Up.spinor()).unwrap();
    for n in 1..=20usize {
        s = dtqrw_step(&s);
        for z in -(n as i64)..=n as i64 {
            let (l, r) = dtqrw_combinatorial::<f64>(n, z).unwrap();
            let a = s.amplitude(z);
            assert!((a[1].norm() - l.abs()).abs() < 1e-10);
            assert!((a[0].norm() - r.abs()).abs() < 1e-10);
        }
    }
}

#[test]
fn symmetrised_fifty_steps_is_mirror_symmetric() {
    let s = dtqrw_run(&WalkerState::<f64>::at_origin(Coin::Symmetric.spinor()).unwrap(), 50);
    assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    for z in 1..=50 {
        assert!((s.probability(z) - s.probability(-z)).abs() < 1e-10);
    }
    // Odd sites are empty after an even number of steps.
    assert_eq!(s.probability(7), 0.0);
}

#[test]
fn quantum_spreads_faster_than_classical() {
    let n = 100;
    let q = dtqrw_run(&WalkerState::<f64>::at_origin(Coin::Symmetric.spinor()).unwrap(), n);
    let var_q: f64 = q.distribution().iter().map(|&(z, p)| (z * z) as f64 * p).sum();
    let c = classical_rw_distribution(n).unwrap().to_real::<f64>();
    let var_c: f64 = c.iter().map(|&(z, p)| (z * z) as f64 * p).sum();
    assert!((var_c - n as f64).abs() < 1e-9);
    assert!(var_q > 10.0 * var_c);
}

#[test]
fn checkerboard_counts_sum_to_binomials() {
    for n in 1..=30usize {
        for z in -(n as i64)..=n as i64 {
            let total: BigUint = checkerboard_counts(n, z, StartDirection::Superposed).unwrap().into_iter().sum();
            let want = if (n as i64 + z) % 2 == 0 { binomial(n, ((n as i64 + z) / 2) as usize) } else { BigUint::from(0u8) };
            assert_eq!(total, want);
        }
    }
}

#[test]
fn checkerboard_massless_light_cone() {
    for start in [StartDirection::Right, StartDirection::Left] {
        for z in -9i64..=9 {
            let k = checkerboard_kernel(9, z, 0.0f64, start).unwrap();
            let edge = match start {
                StartDirection::Right => 9,
                _ => -9,
            };
            let want = if z == edge { 1.0 } else { 0.0 };
            assert_eq!(k, Complex::new(want, 0.0));
        }
    }
}

#[test]
fn graph_laplacian_rows_vanish() {
    for kind in [GraphKind::Ring(7), GraphKind::Hypercube(4), GraphKind::Complete(5)] {
        let g = Graph::new(kind).unwrap();
        let l = g.laplacian::<f64>();
        for r in 0..g.order() {
            let s: Complex<f64> = l.row(r).iter().sum();
            assert_eq!(s, Complex::new(0.0, 0.0));
        }
    }
}
