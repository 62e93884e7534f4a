use pathsum::algorithms::{grover_iterate, AmplitudeProfile, GroverInstance};
use pathsum::anneal::*;
use pathsum::dense::State;

#[test]
fn gap_formula_against_eigensolve() {
    for n in [1usize, 2, 4, 6] {
        let pair = grover_pair::<f64>(n, 0).unwrap();
        for i in 0..=10 {
            let lam = i as f64 / 10.0;
            let g = spectral_gap(&pair, lam).unwrap();
            assert!((g - grover_gap(lam, 1 << n).unwrap()).abs() < 1e-9);
        }
        assert!((grover_gap(0.5, 1 << n).unwrap() - 1.0 / ((1 << n) as f64).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn local_schedule_endpoints_and_monotone() {
    let s = local_adiabatic_schedule::<f64>(128, 0.1).unwrap();
    let xs = s.samples();
    assert_eq!(xs[0], 0.0);
    assert!((xs[xs.len() - 1] - 1.0).abs() < 1e-12);
    assert!(xs.windows(2).all(|w| w[1] >= w[0]));
    assert!(s.total_time() > optimal_time_estimate::<f64>(128, 0.1).unwrap() * 0.5);
}

#[test]
fn local_schedule_beats_linear_bound() {
    let local = local_adiabatic_schedule::<f64>(1024, 0.1).unwrap().total_time();
    let linear = linear_schedule_time_bound::<f64>(1024, 0.1).unwrap();
    assert!(local * 4.0 < linear);
}

#[test]
fn qaoa_pi_pi_is_grover_up_to_sign() {
    let g = GroverInstance::new(4, 11).unwrap();
    let pair = grover_pair::<f64>(4, 11).unwrap();
    let a = QaoaAngles::new(vec![std::f64::consts::PI; 2], vec![std::f64::consts::PI; 2]).unwrap();
    let out = qaoa_evolve(&a, &pair, &State::uniform(16)).unwrap();
    let mut p = AmplitudeProfile::uniform(&g);
    for _ in 0..2 {
        p = grover_iterate(&p, &g).unwrap();
    }
    for (x, y) in out.amplitudes().iter().zip(&p.amplitudes) {
        assert!((x - y).norm() < 1e-10);
    }
}

#[test]
fn ring_trotter_error_first_order() {
    let pair = ring_hamiltonians::<f64>(4, MixerSign::Negative).unwrap();
    let sched = Schedule::linear(2.0).unwrap();
    let s = State::uniform(16);
    let reference = schedule_evolve(&sched, &pair, &s, 8000).unwrap();
    let err = |m| {
        let a = trotterize(&sched, m).unwrap();
        (1.0 - qaoa_evolve(&a, &pair, &s).unwrap().fidelity(&reference)).max(0.0).sqrt()
    };
    let slope = (err(128) / err(8)).ln() / 16f64.ln();
    assert!((slope + 1.0).abs() < 0.15, "{slope}");
}
