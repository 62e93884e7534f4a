use num_complex::Complex;
use pathsum::statmech::*;
use proptest::prelude::*;

/// `e^{a X}` on one qubit.
fn exp_x(a: f64) -> [[f64; 2]; 2] {
    [[a.cosh(), a.sinh()], [a.sinh(), a.cosh()]]
}

/// `Tr(e^{Δτh(X₁+X₂)} e^{2ΔτJ Z₁Z₂})^M`, the two-site ring with both bonds.
fn two_site_trace(h: f64, j: f64, dtau: f64, m: usize) -> f64 {
    let x = exp_x(dtau * h);
    let spin = |z: usize, k: usize| if z >> (1 - k) & 1 == 0 { 1.0 } else { -1.0 };
    let slice: Vec<Vec<f64>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    let flip = x[r >> 1][c >> 1] * x[r & 1][c & 1];
                    flip * (2.0 * dtau * j * spin(c, 0) * spin(c, 1)).exp()
                })
                .collect()
        })
        .collect();
    let mut p: Vec<Vec<f64>> = (0..4).map(|r| (0..4).map(|c| if r == c { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..m {
        p = (0..4).map(|r| (0..4).map(|c| (0..4).map(|k| p[r][k] * slice[k][c]).sum()).collect()).collect();
    }
    (0..4).map(|i| p[i][i]).sum()
}

#[test]
fn grid_weights_sum_to_sliced_trace() {
    let (h, j, dtau) = (0.9, 0.4, 0.3);
    for m in [2usize, 3] {
        let mut z = 0.0;
        for bits in 0u64..1 << (2 * m) {
            let c = SpinConfiguration::from_bits(m, 2, bits).unwrap();
            z += tfim_euclidean_action(&c, h, j, dtau).unwrap().weight();
        }
        let want = two_site_trace(h, j, dtau, m);
        assert!((z - want).abs() < 1e-12 * want, "M={m}: {z} vs {want}");
    }
}

#[test]
fn trotter_error_is_sign_consistent_and_extrapolates() {
    let (h, j) = (1.0, 1.0);
    for beta in [0.5f64, 1.0, 2.0] {
        let exact = single_spin_partition_exact(h, j, beta);
        let errs: Vec<f64> = [4usize, 8, 16, 32, 64]
            .iter()
            .map(|&m| trotter_partition_single_spin(h, j, beta, m).unwrap() - exact)
            .collect();
        assert!(errs.iter().all(|e| e.signum() == errs[0].signum()));
        assert!(errs.windows(2).all(|w| w[1].abs() < w[0].abs()));
        let (z1, z2) = (
            trotter_partition_single_spin(h, j, beta, 32).unwrap(),
            trotter_partition_single_spin(h, j, beta, 64).unwrap(),
        );
        // Leading error term is quadratic in Δτ.
        let rich = (4.0 * z2 - z1) / 3.0;
        assert!((rich - exact).abs() < 1e-4, "beta={beta}");
    }
}

#[test]
fn trotter_convergence_order_at_least_one() {
    let exact = single_spin_partition_exact(1.0f64, 1.0, 1.0);
    let e = |m| (trotter_partition_single_spin(1.0, 1.0, 1.0, m).unwrap() - exact).abs();
    let slope = (e(64) / e(8)).ln() / (8f64).ln();
    assert!(slope <= -1.0, "{slope}");
}

#[test]
fn xz_enumeration_positive_up_to_sixteen_slices() {
    for m in [1usize, 5, 16] {
        let hist = sign_statistics(SignModel::XzInZBasis, 1.3, 0.7, 2.0, m).unwrap();
        assert!(!hist.has_nonpositive());
        assert_eq!(hist.positive_fraction(), 1.0);
        let tr = sign_model_trace(SignModel::XzInZBasis, 1.3, 0.7, 2.0, m).unwrap();
        assert!((hist.sum - tr).norm() < 1e-12 * tr.norm());
    }
}

#[test]
fn propagator_converges_with_slices() {
    let want = (0.5 / std::f64::consts::PI).sqrt();
    let err = |m: usize| {
        let g = Grid { extent: 40.0f64, spacing: 1.2 / m as f64 };
        (free_propagator_discretized(1.0f64, 1.0, 0.0, 0.0, m, g).unwrap().norm() - want).abs()
    };
    let (e16, e32, e64) = (err(16), err(32), err(64));
    assert!(e32 < 0.02 * want);
    let order = (e16 / e64).ln() / 4f64.ln();
    assert!(order >= 1.0, "{order}");
}

#[test]
fn propagator_phase_follows_classical_action() {
    let g = Grid { extent: 40.0f64, spacing: 0.025 };
    let k0 = free_propagator_discretized(1.0, 1.0, 0.0, 0.0, 32, g).unwrap();
    let k1 = free_propagator_discretized(1.0, 1.0, 0.0, 1.0, 32, g).unwrap();
    let ratio = k1 / k0;
    assert!((ratio.arg() - 0.5).abs() < 0.02, "{}", ratio.arg());
    let e = free_propagator_exact(1.0, 1.0, 0.0, 1.0).unwrap() / free_propagator_exact(1.0, 1.0, 0.0, 0.0).unwrap();
    assert!((e - Complex::from_polar(1.0, 0.5)).norm() < 1e-14);
}

#[test]
fn three_slice_scan_picks_straight_line() {
    let cands: Vec<f64> = (-12..=12).map(|k| k as f64 / 4.0).collect();
    for (xi, xf) in [(0.0, 0.75), (-1.5, 1.5), (2.25, -0.75)] {
        let (p, _) = minimal_action_path(2.0, 1.5, xi, xf, 3, &cands).unwrap();
        for (k, x) in p.iter().enumerate() {
            assert!((x - (xi + (xf - xi) * k as f64 / 3.0)).abs() < 1e-12);
        }
    }
}

fn grid() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| (Just(m), Just(n), 0u64..1 << (m * n)))
}

proptest! {
    #[test]
    fn temporal_term_counts_hamming_distance((m, n, bits) in grid(), h in 0.1f64..3.0, dtau in 0.01f64..1.0) {
        let c = SpinConfiguration::from_bits(m, n, bits).unwrap();
        let hamming: usize = (0..m)
            .map(|l| {
                let row = |l: usize| (bits >> ((l % m) * n)) & ((1u64 << n) - 1);
                (row(l) ^ row(l + 1)).count_ones() as usize
            })
            .sum();
        prop_assert_eq!(c.temporal_flips(), hamming);
        let a = tfim_euclidean_action(&c, h, 0.5, dtau).unwrap();
        let hp = suzuki_coefficients(h, dtau).unwrap().0;
        prop_assert!((a.temporal / hp - 2.0 * hamming as f64).abs() < 1e-9 * (1.0 + hamming as f64));
        prop_assert!(a.temporal >= 0.0 && a.spatial >= 0.0);
    }

    #[test]
    fn partition_equals_configuration_sum(n in 2usize..=12, h in -1.5f64..1.5, j in -1.5f64..1.5, beta in 0.0f64..2.0) {
        let brute: f64 = (0u32..1 << n)
            .map(|c| {
                let s = |l: usize| if c >> (l % n) & 1 == 0 { 1.0 } else { -1.0 };
                (beta * (0..n).map(|l| h * s(l) * s(l + 1) + j * s(l)).sum::<f64>()).exp()
            })
            .sum();
        let z = partition_transfer(n, h, j, beta).unwrap();
        prop_assert!((z - brute).abs() <= 1e-12 * brute);
    }
}
