//! Deutsch's and Grover's algorithms, as circuits for path tracing and as
//! direct amplitude iterations.

use num_complex::Complex;

use crate::dense::{BasisState, Circuit, Gate, TruthTable};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, propagator_column, Path};
use crate::scalar::{from_usize, Real};

/// Classification of a one-bit Boolean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Constant,
    Balanced,
}

/// Outcome of one run of Deutsch's algorithm.
#[derive(Debug, Clone)]
pub struct DeutschReport<T> {
    pub verdict: Verdict,
    /// Probability of reading 1 on the first qubit.
    pub probability_one: T,
    /// Every path of the circuit from the initial state, grouped by endpoint
    /// in ascending order.
    pub paths: Vec<Path<T>>,
}

/// Initial basis state `|0⟩|1⟩` of the Deutsch circuit.
pub const DEUTSCH_INPUT: usize = 0b01;

/// `H₁, H₀, O_f, H₀` on `|0⟩|1⟩`: the query qubit is qubit 0 and the
/// oracle flips qubit 1.
pub fn deutsch_circuit(f: &TruthTable) -> Result<Circuit> {
    if f.inputs() != 1 {
        return Err(Error::param("f", "Deutsch's problem needs a one-bit function"));
    }
    Circuit::new(
        2,
        vec![
            Gate::Hadamard(1),
            Gate::Hadamard(0),
            Gate::BitFlipOracle {
                inputs: vec![0],
                target: 1,
                table: f.clone(),
            },
            Gate::Hadamard(0),
        ],
    )
}

pub fn deutsch_run<T: Real>(f: &TruthTable) -> Result<DeutschReport<T>> {
    let circuit = deutsch_circuit(f)?;
    let column = propagator_column::<T>(&circuit, DEUTSCH_INPUT)?;
    let probability_one = column
        .iter()
        .enumerate()
        .filter(|(z, _)| BasisState::new(2, *z).map(|b| b.bit(0) == 1).unwrap_or(false))
        .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr());
    let mut paths = Vec::new();
    for z_out in 0..circuit.dim() {
        paths.extend(enumerate_paths::<T>(&circuit, DEUTSCH_INPUT, z_out)?);
    }
    let verdict = if probability_one > T::lit(0.5) {
        Verdict::Balanced
    } else {
        Verdict::Constant
    };
    Ok(DeutschReport {
        verdict,
        probability_one,
        paths,
    })
}

/// Direct classification by evaluating `f` on both inputs.
pub fn classify(f: &TruthTable) -> Verdict {
    if f.eval(0) == f.eval(1) {
        Verdict::Constant
    } else {
        Verdict::Balanced
    }
}

/// Unstructured search over `N = 2ⁿ` items with one marked item `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverInstance {
    n: usize,
    w: usize,
}

impl GroverInstance {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        if n == 0 || n > 30 {
            return Err(Error::param("n", format!("{n} outside 1..=30")));
        }
        if w >> n != 0 {
            return Err(Error::BasisOutOfRange { z: w, dim: 1 << n });
        }
        Ok(Self { n, w })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> usize {
        1 << self.n
    }

    pub fn marked(&self) -> usize {
        self.w
    }
}

/// Amplitudes over the `N` items after a number of iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile<T> {
    pub amplitudes: Vec<Complex<T>>,
    pub iteration: usize,
}

impl<T: Real> AmplitudeProfile<T> {
    /// `|s⟩` at iteration 0.
    pub fn uniform(instance: &GroverInstance) -> Self {
        let n = instance.items();
        let a = T::one() / from_usize::<T>(n).sqrt();
        Self {
            amplitudes: vec![Complex::new(a, T::zero()); n],
            iteration: 0,
        }
    }

    pub fn basis(instance: &GroverInstance, z: usize) -> Result<Self> {
        let n = instance.items();
        if z >= n {
            return Err(Error::BasisOutOfRange { z, dim: n });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); n];
        amplitudes[z] = Complex::new(T::one(), T::zero());
        Ok(Self {
            amplitudes,
            iteration: 0,
        })
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn probability(&self, z: usize) -> T {
        self.amplitudes[z].norm_sqr()
    }
}

/// `⟨z_out|U_D O_w|z_in⟩ = (−1)^{δ(w, z_in)} (2/N − δ(z_out, z_in))`.
pub fn grover_step_element<T: Real>(instance: &GroverInstance, z_out: usize, z_in: usize) -> Result<T> {
    let n = instance.items();
    for z in [z_out, z_in] {
        if z >= n {
            return Err(Error::BasisOutOfRange { z, dim: n });
        }
    }
    let diag = if z_out == z_in { T::one() } else { T::zero() };
    let v = T::lit(2.0) / from_usize::<T>(n) - diag;
    Ok(if z_in == instance.w { -v } else { v })
}

/// One oracle-plus-diffusion step: flip the marked sign, then reflect every
/// amplitude about twice the mean. `O(N)`.
pub fn grover_iterate<T: Real>(profile: &AmplitudeProfile<T>, instance: &GroverInstance) -> Result<AmplitudeProfile<T>> {
    let n = instance.items();
    if profile.amplitudes.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: profile.amplitudes.len(),
        });
    }
    let mut b = profile.amplitudes.clone();
    b[instance.w] = -b[instance.w];
    let sum = b.iter().fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x);
    let twice_mean = sum * (T::lit(2.0) / from_usize::<T>(n));
    for x in &mut b {
        *x = twice_mean - *x;
    }
    Ok(AmplitudeProfile {
        amplitudes: b,
        iteration: profile.iteration + 1,
    })
}

/// Same step as [`grover_iterate`] summed element by element, `O(N²)`.
pub fn grover_iterate_by_elements<T: Real>(
    profile: &AmplitudeProfile<T>,
    instance: &GroverInstance,
) -> Result<AmplitudeProfile<T>> {
    let n = instance.items();
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    for (zo, o) in out.iter_mut().enumerate() {
        for (zi, a) in profile.amplitudes.iter().enumerate() {
            *o += a * grover_step_element::<T>(instance, zo, zi)?;
        }
    }
    Ok(AmplitudeProfile {
        amplitudes: out,
        iteration: profile.iteration + 1,
    })
}

/// Largest iteration count accepted by [`grover_success_curve`].
pub const MAX_CURVE_ITERATIONS: usize = 10_000;

/// `(k, |a_w|²)` for `k = 0..=k_max` starting from `|s⟩`.
pub fn grover_success_curve<T: Real>(instance: &GroverInstance, k_max: usize) -> Result<Vec<(usize, T)>> {
    if k_max > MAX_CURVE_ITERATIONS {
        return Err(Error::param("k_max", format!("{k_max} exceeds {MAX_CURVE_ITERATIONS}")));
    }
    let mut p = AmplitudeProfile::uniform(instance);
    let mut out = Vec::with_capacity(k_max + 1);
    out.push((0, p.probability(instance.w)));
    for k in 1..=k_max {
        p = grover_iterate(&p, instance)?;
        out.push((k, p.probability(instance.w)));
    }
    Ok(out)
}

/// First local maximum of the success curve.
pub fn grover_first_peak<T: Real>(curve: &[(usize, T)]) -> usize {
    for w in curve.windows(2) {
        if w[1].1 < w[0].1 {
            return w[0].0;
        }
    }
    curve.last().map(|x| x.0).unwrap_or(0)
}

/// `H^{⊗n}` followed by `iterations` rounds of `O_w, H^{⊗n}, U_A, H^{⊗n}`,
/// with `U_A = 2|0⟩⟨0| − I` written as a phase oracle.
pub fn grover_circuit(instance: &GroverInstance, iterations: usize) -> Result<Circuit> {
    let n = instance.n;
    let h_all = || (0..n).map(Gate::Hadamard);
    let mut gates: Vec<Gate> = h_all().collect();
    let oracle = Gate::PhaseOracle(TruthTable::indicator(n, instance.w));
    let reflect_zero = Gate::PhaseOracle(TruthTable::from_fn(n, |z| z != 0));
    for _ in 0..iterations {
        gates.push(oracle.clone());
        gates.extend(h_all());
        gates.push(reflect_zero.clone());
        gates.extend(h_all());
    }
    Circuit::new(n, gates)
}

/// The bit-flip oracle `|x, q⟩ ↦ |x, q ⊕ f(x)⟩` written as a phase oracle
/// conjugated by Hadamards on the target (last qubit).
pub fn bit_flip_as_phase(f: &TruthTable) -> Result<Circuit> {
    let m = f.inputs();
    let t = m;
    let g = TruthTable::from_fn(m + 1, |z| (z & 1 == 1) && f.eval(z >> 1));
    Circuit::new(m + 1, vec![Gate::Hadamard(t), Gate::PhaseOracle(g), Gate::Hadamard(t)])
}

/// The phase oracle `(−1)^{f(x)}` realised by phase kickback: an ancilla
/// (last qubit) prepared in `|−⟩`, the bit-flip oracle, and uncomputation.
/// Acts as the phase oracle on inputs with the ancilla in `|0⟩`.
pub fn phase_via_kickback(f: &TruthTable) -> Result<Circuit> {
    let m = f.inputs();
    let t = m;
    let oracle = Gate::BitFlipOracle {
        inputs: (0..m).collect(),
        target: t,
        table: f.clone(),
    };
    Circuit::new(
        m + 1,
        vec![Gate::Not(t), Gate::Hadamard(t), oracle, Gate::Hadamard(t), Gate::Not(t)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{dense_propagator, gate_matrix, Operator};

    fn all_functions() -> Vec<TruthTable> {
        [[false, false], [true, true], [false, true], [true, false]]
            .iter()
            .map(|b| TruthTable::new(b.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn deutsch_classifies_all_four() {
        for f in all_functions() {
            let r = deutsch_run::<f64>(&f).unwrap();
            assert_eq!(r.verdict, classify(&f));
            let p = if r.verdict == Verdict::Balanced {
                r.probability_one
            } else {
                1.0 - r.probability_one
            };
            assert!((p - 1.0).abs() < 1e-12);
            // Three Hadamards: 8 paths in total, each of modulus 2^{-3/2}.
            assert_eq!(r.paths.len(), 8);
            assert!(r.paths.iter().all(|p| p.states.len() == 5));
        }
    }

    #[test]
    fn deutsch_matches_dense_simulation() {
        for f in all_functions() {
            let u = dense_propagator::<f64>(&deutsch_circuit(&f).unwrap()).unwrap();
            let p1: f64 = (0..4).filter(|z| z >> 1 == 1).map(|z| u.get(z, DEUTSCH_INPUT).norm_sqr()).sum();
            let r = deutsch_run::<f64>(&f).unwrap();
            assert!((p1 - r.probability_one).abs() < 1e-14);
        }
    }

    #[test]
    fn step_element_values() {
        let g = GroverInstance::new(2, 1).unwrap();
        assert_eq!(grover_step_element::<f64>(&g, 0, 0).unwrap(), -0.5);
        assert_eq!(grover_step_element::<f64>(&g, 0, 1).unwrap(), -0.5);
        assert_eq!(grover_step_element::<f64>(&g, 1, 1).unwrap(), 0.5);
    }

    #[test]
    fn step_matrix_equals_dense_product() {
        for n in 1..=4 {
            let dim = 1 << n;
            for w in [0, dim - 1] {
                let g = GroverInstance::new(n, w).unwrap();
                let s = crate::dense::State::<f64>::uniform(dim);
                let ud = Operator::projector(&s).scale(2.0).combine(1.0, &Operator::identity(dim), -1.0).unwrap();
                let ow = gate_matrix::<f64>(&Gate::PhaseOracle(TruthTable::indicator(n, w)), n).unwrap();
                let prod = ud.matmul(&ow).unwrap();
                for r in 0..dim {
                    for c in 0..dim {
                        let e = grover_step_element::<f64>(&g, r, c).unwrap();
                        assert!((prod.get(r, c) - Complex::new(e, 0.0)).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn n4_finds_marked_in_one_step() {
        let g = GroverInstance::new(2, 1).unwrap();
        let p = grover_iterate(&AmplitudeProfile::<f64>::uniform(&g), &g).unwrap();
        assert!((p.amplitudes[1].re - 1.0).abs() < 1e-15);
        assert!(p.amplitudes.iter().enumerate().all(|(z, a)| z == 1 || a.norm() < 1e-15));
    }

    #[test]
    fn fast_iteration_equals_element_sum() {
        let g = GroverInstance::new(4, 6).unwrap();
        let mut a = AmplitudeProfile::<f64>::basis(&g, 6).unwrap();
        for _ in 0..3 {
            let b = grover_iterate_by_elements(&a, &g).unwrap();
            a = grover_iterate(&a, &g).unwrap();
            for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
                assert!((x - y).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unmarked_amplitudes_stay_equal() {
        let g = GroverInstance::new(5, 17).unwrap();
        let mut a = AmplitudeProfile::<f64>::uniform(&g);
        for _ in 0..8 {
            a = grover_iterate(&a, &g).unwrap();
            let r = a.amplitudes[0];
            assert!(a.amplitudes.iter().enumerate().all(|(z, x)| z == 17 || (x - r).norm() < 1e-12));
            assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn success_curve_small_cases() {
        let g = GroverInstance::new(2, 3).unwrap();
        let c = grover_success_curve::<f64>(&g, 3).unwrap();
        assert!((c[0].1 - 0.25).abs() < 1e-15);
        assert!((c[1].1 - 1.0).abs() < 1e-12);
        assert_eq!(grover_first_peak(&c), 1);
        let g = GroverInstance::new(3, 0).unwrap();
        let c = grover_success_curve::<f64>(&g, 2).unwrap();
        assert!((c[2].1 - 0.9453125).abs() < 1e-12);
        assert!(grover_success_curve::<f64>(&g, 10_001).is_err());
    }

    #[test]
    fn circuit_paths_reproduce_iteration() {
        let g = GroverInstance::new(2, 2).unwrap();
        let c = grover_circuit(&g, 1).unwrap();
        let col = propagator_column::<f64>(&c, 0).unwrap();
        assert!((col[2].norm() - 1.0).abs() < 1e-12);
        let g = GroverInstance::new(3, 5).unwrap();
        let c = grover_circuit(&g, 2).unwrap();
        let col = propagator_column::<f64>(&c, 0).unwrap();
        let direct = grover_success_curve::<f64>(&g, 2).unwrap();
        assert!((col[5].norm_sqr() - direct[2].1).abs() < 1e-12);
    }

    #[test]
    fn oracle_conversions() {
        for f in all_functions().into_iter().chain([TruthTable::from_fn(2, |x| x == 2)]) {
            let m = f.inputs();
            let bit_flip = Gate::BitFlipOracle {
                inputs: (0..m).collect(),
                target: m,
                table: f.clone(),
            };
            let direct = gate_matrix::<f64>(&bit_flip, m + 1).unwrap();
            let via_phase = dense_propagator::<f64>(&bit_flip_as_phase(&f).unwrap()).unwrap();
            assert!(direct.equals_up_to_global_phase(&via_phase, 1e-12));

            let k = dense_propagator::<f64>(&phase_via_kickback(&f).unwrap()).unwrap();
            let phase = gate_matrix::<f64>(&Gate::PhaseOracle(f.clone()), m).unwrap();
            let restricted = Operator::from_fn(1 << m, |r, c| k.get(r << 1, c << 1));
            assert!(restricted.equals_up_to_global_phase(&phase, 1e-12));
        }
    }
}
