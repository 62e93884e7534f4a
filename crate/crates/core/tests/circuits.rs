use num_complex::Complex;
use pathsum::algorithms::*;
use pathsum::dense::{dense_propagator, Circuit, Gate, TruthTable};
use pathsum::paths::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn seeded_random_circuits_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..20 {
        let n = 1 + k % 5;
        let c = random_circuit(n, 16, 10, &mut rng).unwrap();
        let dense = dense_propagator::<f64>(&c).unwrap();
        let sum = propagator_matrix::<f64>(&c, 1 + k % 3).unwrap();
        assert!(sum.max_abs_diff(&dense) < 1e-10, "circuit {k}");
    }
}

#[test]
fn double_hadamard_cancels_exactly() {
    let c = Circuit::new(1, vec![Gate::Hadamard(0), Gate::Hadamard(0)]).unwrap();
    assert_eq!(propagator_element::<f64>(&c, 0, 1).unwrap(), Complex::new(0.0, 0.0));
    assert!((propagator_element::<f64>(&c, 0, 0).unwrap() - 1.0).norm() < 1e-15);
    // Both paths to |1⟩ survive the enumeration and carry opposite signs.
    let paths = enumerate_paths::<f64>(&c, 0, 1).unwrap();
    assert_eq!(paths.len(), 2);
    assert_eq!(paths.iter().map(|p| p.sign()).sum::<i32>(), 0);
}

#[test]
fn threaded_and_serial_agree_bitwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let c = random_circuit(5, 30, 14, &mut rng).unwrap();
    for z in [0, 9, 31] {
        let a = propagator_column::<f64>(&c, z).unwrap();
        let b = propagator_column_threaded::<f64>(&c, z, 4).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn deutsch_classifies_all_functions() {
    for bits in [[false, false], [true, true], [false, true], [true, false]] {
        let f = TruthTable::new(bits.to_vec()).unwrap();
        let r = deutsch_run::<f64>(&f).unwrap();
        assert_eq!(r.verdict, classify(&f));
        let p = if r.verdict == Verdict::Balanced { r.probability_one } else { 1.0 - r.probability_one };
        assert!((p - 1.0).abs() < 1e-12);
    }
}

#[test]
fn grover_four_items_one_iteration() {
    for w in 0..4 {
        let g = GroverInstance::new(2, w).unwrap();
        let out = grover_iterate(&AmplitudeProfile::<f64>::uniform(&g), &g).unwrap();
        assert!((out.probability(w) - 1.0).abs() < 1e-10);
        let circuit = dense_propagator::<f64>(&grover_circuit(&g, 1).unwrap()).unwrap();
        assert!((circuit.get(w, 0).norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn grover_peak_for_1024_items() {
    let g = GroverInstance::new(10, 417).unwrap();
    let curve = grover_success_curve::<f64>(&g, 60).unwrap();
    let peak = grover_first_peak(&curve) as i64;
    let want = (std::f64::consts::FRAC_PI_4 * 32.0).round() as i64;
    assert!((peak - want).abs() <= 1);
}

#[test]
fn qft_over_cyclic_group_is_unitary() {
    for group in [QftGroup::Z2Power, QftGroup::Cyclic] {
        let q = qft_matrix::<f64>(group, 3).unwrap();
        assert!(q.unitarity_deviation() < 1e-12);
    }
}
