//! Sum-over-path evaluation of circuit propagators.
//!
//! Every gate is a local rule sending a basis state to a short list of
//! successors. A path is one choice of successor per gate; its amplitude is
//! `2^{-k/2} e^{iS}` where `k` counts the Hadamards on the path and the action
//! `S` is an integer multiple of π. The propagator element `⟨z_out|U|z_in⟩` is
//! the sum of path amplitudes ending in `z_out`.
//!
//! Enumeration is depth-first in time order; a Hadamard visits the successor
//! with target bit 0 before the one with target bit 1. Since every path of an
//! H/classical circuit crosses all `k` Hadamards, each element is the exact
//! integer `Σ (−1)^{S/π}` scaled once by `2^{-k/2}`, so cancellations are exact.

use std::f64::consts::PI;

use num_complex::Complex;
use rand::Rng;

use crate::dense::{flip_qubit, gather_bits, qubit_value, BasisState, Circuit, Gate, Operator};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};

/// Maximum number of Hadamards per query; caps enumeration at `2^24` paths.
pub const MAX_HADAMARDS: usize = 24;

/// One computational-basis trajectory through a circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Path<T> {
    /// `z⁽⁰⁾, …, z⁽ᴹ⁾`, one entry per time slice.
    pub states: Vec<usize>,
    /// Accumulated action in radians, always `π` times an integer.
    pub action: T,
    /// `−k/2` for `k` Hadamards traversed.
    pub log2_magnitude: T,
}

impl<T: Real> Path<T> {
    pub fn amplitude(&self) -> Complex<T> {
        let mag = T::lit(2.0).powf(self.log2_magnitude);
        Complex::from_polar(mag, self.action)
    }

    /// `+1` or `−1`, the sign of the amplitude.
    pub fn sign(&self) -> i32 {
        let turns = (self.action / T::PI()).round().to_i64().unwrap_or(0);
        if turns.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn initial(&self) -> usize {
        self.states[0]
    }

    pub fn terminal(&self) -> usize {
        *self.states.last().expect("paths hold at least one state")
    }
}

/// Outcome of applying one gate to one basis state.
#[derive(Debug, Clone, Copy)]
enum Step {
    /// Deterministic successor and the number of π phases picked up.
    To(usize, u32),
    /// Hadamard on the given qubit.
    Split(usize),
}

#[inline]
fn step(gate: &Gate, z: usize, n: usize) -> Step {
    match gate {
        Gate::Hadamard(t) => Step::Split(*t),
        Gate::Not(t) => Step::To(flip_qubit(z, n, *t), 0),
        Gate::Cnot { control, target } => {
            if qubit_value(z, n, *control) == 1 {
                Step::To(flip_qubit(z, n, *target), 0)
            } else {
                Step::To(z, 0)
            }
        }
        Gate::Toffoli { controls, target } => {
            if qubit_value(z, n, controls[0]) & qubit_value(z, n, controls[1]) == 1 {
                Step::To(flip_qubit(z, n, *target), 0)
            } else {
                Step::To(z, 0)
            }
        }
        Gate::PhaseOracle(table) => Step::To(z, table.eval(z) as u32),
        Gate::BitFlipOracle {
            inputs,
            target,
            table,
        } => {
            if table.eval(gather_bits(z, n, inputs)) {
                Step::To(flip_qubit(z, n, *target), 0)
            } else {
                Step::To(z, 0)
            }
        }
    }
}

/// Successor states of `z` under `gate` with their transition amplitudes,
/// ordered by target-bit value for Hadamards.
pub fn local_rule_successors<T: Real>(gate: &Gate, z: BasisState) -> Result<Vec<(BasisState, Complex<T>)>> {
    let n = z.qubits();
    gate.validate(n)?;
    let zi = z.index();
    let out = match step(gate, zi, n) {
        Step::To(next, pi) => {
            let s = if pi % 2 == 0 { T::one() } else { -T::one() };
            vec![(BasisState::new(n, next)?, Complex::new(s, T::zero()))]
        }
        Step::Split(t) => {
            let h = T::FRAC_1_SQRT_2();
            let q = qubit_value(zi, n, t);
            let z0 = zi & !(1 << (n - 1 - t));
            let z1 = z0 | (1 << (n - 1 - t));
            let minus = if q == 1 { -h } else { h };
            vec![
                (BasisState::new(n, z0)?, Complex::new(h, T::zero())),
                (BasisState::new(n, z1)?, Complex::new(minus, T::zero())),
            ]
        }
    };
    Ok(out)
}

fn check_budget(circuit: &Circuit) -> Result<usize> {
    let k = circuit.hadamard_count();
    if k > MAX_HADAMARDS {
        return Err(Error::BudgetExceeded {
            hadamards: k,
            limit: MAX_HADAMARDS,
        });
    }
    Ok(k)
}

fn check_index(circuit: &Circuit, z: usize) -> Result<()> {
    if z >= circuit.dim() {
        return Err(Error::BasisOutOfRange { z, dim: circuit.dim() });
    }
    Ok(())
}

/// Depth-first walk over every path starting at `states[0]` from gate `g`
/// onward. The visitor receives the full trajectory and its π-count.
fn walk<V: FnMut(&[usize], u32)>(gates: &[Gate], n: usize, g: usize, pis: u32, states: &mut Vec<usize>, visit: &mut V) {
    let base = states.len();
    let mut z = *states.last().expect("non-empty");
    let mut pis = pis;
    let mut g = g;
    while g < gates.len() {
        match step(&gates[g], z, n) {
            Step::To(next, dp) => {
                z = next;
                pis += dp;
                states.push(z);
                g += 1;
            }
            Step::Split(t) => {
                let q = qubit_value(z, n, t) as u32;
                let z0 = z & !(1 << (n - 1 - t));
                for (bit, zn) in [(0u32, z0), (1u32, z0 | (1 << (n - 1 - t)))] {
                    states.push(zn);
                    walk(gates, n, g + 1, pis + q * bit, states, visit);
                    states.pop();
                }
                states.truncate(base);
                return;
            }
        }
    }
    visit(states, pis);
    states.truncate(base);
}

/// All paths from `z_in` to `z_out`, in enumeration order.
pub fn enumerate_paths<T: Real>(circuit: &Circuit, z_in: usize, z_out: usize) -> Result<Vec<Path<T>>> {
    let k = check_budget(circuit)?;
    check_index(circuit, z_in)?;
    check_index(circuit, z_out)?;
    let log2 = -from_usize::<T>(k) / T::lit(2.0);
    let mut out = Vec::new();
    let mut states = Vec::with_capacity(circuit.len() + 1);
    states.push(z_in);
    walk(circuit.gates(), circuit.qubits(), 0, 0, &mut states, &mut |s, pis| {
        if *s.last().unwrap() == z_out {
            out.push(Path {
                states: s.to_vec(),
                action: T::lit(PI) * from_usize::<T>(pis as usize),
                log2_magnitude: log2,
            });
        }
    });
    Ok(out)
}

/// Number of paths leaving `z_in`, over all endpoints.
pub fn count_paths(circuit: &Circuit, z_in: usize) -> Result<u64> {
    check_budget(circuit)?;
    check_index(circuit, z_in)?;
    let mut count = 0u64;
    let mut states = vec![z_in];
    walk(circuit.gates(), circuit.qubits(), 0, 0, &mut states, &mut |_, _| count += 1);
    Ok(count)
}

/// Signed path counts `Σ (−1)^{S/π}` per endpoint for paths leaving `z_in`,
/// split over `threads` workers at the leading Hadamard levels.
fn signed_counts(circuit: &Circuit, z_in: usize, threads: usize) -> Vec<i64> {
    let n = circuit.qubits();
    let gates = circuit.gates();
    let dim = circuit.dim();
    let run = |prefix: Vec<usize>, start: usize, pis: u32| {
        let mut acc = vec![0i64; dim];
        let mut states = prefix;
        walk(gates, n, start, pis, &mut states, &mut |s, p| {
            acc[*s.last().unwrap()] += if p % 2 == 0 { 1 } else { -1 };
        });
        acc
    };
    let threads = threads.max(1);
    if threads == 1 {
        return run(vec![z_in], 0, 0);
    }

    // Expand the tree breadth-first until there are enough subtrees to share.
    let mut frontier: Vec<(Vec<usize>, usize, u32)> = vec![(vec![z_in], 0, 0)];
    let mut finished: Vec<(Vec<usize>, usize, u32)> = Vec::new();
    while frontier.len() + finished.len() < 4 * threads && !frontier.is_empty() {
        let mut next = Vec::new();
        for (mut states, mut g, mut pis) in frontier {
            let mut z = *states.last().unwrap();
            let mut split = None;
            while g < gates.len() {
                match step(&gates[g], z, n) {
                    Step::To(zn, dp) => {
                        z = zn;
                        pis += dp;
                        states.push(z);
                        g += 1;
                    }
                    Step::Split(t) => {
                        split = Some(t);
                        break;
                    }
                }
            }
            match split {
                None => finished.push((states, g, pis)),
                Some(t) => {
                    let q = qubit_value(z, n, t) as u32;
                    let z0 = z & !(1 << (n - 1 - t));
                    for (bit, zn) in [(0u32, z0), (1u32, z0 | (1 << (n - 1 - t)))] {
                        let mut s = states.clone();
                        s.push(zn);
                        next.push((s, g + 1, pis + q * bit));
                    }
                }
            }
        }
        frontier = next;
    }
    frontier.extend(finished);

    let chunks: Vec<Vec<(Vec<usize>, usize, u32)>> = {
        let mut c: Vec<Vec<_>> = (0..threads).map(|_| Vec::new()).collect();
        for (i, task) in frontier.into_iter().enumerate() {
            c[i % threads].push(task);
        }
        c
    };
    let partials: Vec<Vec<i64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|tasks| {
                let run = &run;
                scope.spawn(move || {
                    let mut acc = vec![0i64; dim];
                    for (prefix, g, pis) in tasks {
                        for (a, b) in acc.iter_mut().zip(run(prefix, g, pis)) {
                            *a += b;
                        }
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut total = vec![0i64; dim];
    for p in partials {
        for (a, b) in total.iter_mut().zip(p) {
            *a += b;
        }
    }
    total
}

fn scale_counts<T: Real>(counts: &[i64], k: usize) -> Vec<Complex<T>> {
    let mag = T::lit(2.0).powf(-from_usize::<T>(k) / T::lit(2.0));
    counts
        .iter()
        .map(|&c| Complex::new(T::from_i64(c).expect("count representable") * mag, T::zero()))
        .collect()
}

/// `⟨z_out|U|z_in⟩` as a sum over paths.
pub fn propagator_element<T: Real>(circuit: &Circuit, z_in: usize, z_out: usize) -> Result<Complex<T>> {
    propagator_element_threaded(circuit, z_in, z_out, 1)
}

/// [`propagator_element`] with the path set partitioned over worker threads.
/// Partial sums are integers, so the result does not depend on `threads`.
pub fn propagator_element_threaded<T: Real>(
    circuit: &Circuit,
    z_in: usize,
    z_out: usize,
    threads: usize,
) -> Result<Complex<T>> {
    check_index(circuit, z_out)?;
    Ok(propagator_column_threaded(circuit, z_in, threads)?[z_out])
}

/// Column `U|z_in⟩` from a single enumeration.
pub fn propagator_column<T: Real>(circuit: &Circuit, z_in: usize) -> Result<Vec<Complex<T>>> {
    propagator_column_threaded(circuit, z_in, 1)
}

pub fn propagator_column_threaded<T: Real>(circuit: &Circuit, z_in: usize, threads: usize) -> Result<Vec<Complex<T>>> {
    let k = check_budget(circuit)?;
    check_index(circuit, z_in)?;
    Ok(scale_counts(&signed_counts(circuit, z_in, threads), k))
}

/// Full propagator matrix assembled column by column.
pub fn propagator_matrix<T: Real>(circuit: &Circuit, threads: usize) -> Result<Operator<T>> {
    let dim = circuit.dim();
    let mut cols = Vec::with_capacity(dim);
    for z in 0..dim {
        cols.push(propagator_column_threaded::<T>(circuit, z, threads)?);
    }
    Ok(Operator::from_fn(dim, |r, c| cols[c][r]))
}

/// Group the Fourier transform is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QftGroup {
    /// `(Z₂)ⁿ`: the `n`-fold tensor power of the Hadamard gate.
    Z2Power,
    /// `Z_{2ⁿ}`: the cyclic group of order `2ⁿ`.
    Cyclic,
}

/// Matrix element `⟨z_out|F|z_in⟩` of the quantum Fourier transform.
pub fn qft_element<T: Real>(group: QftGroup, n: usize, z_in: usize, z_out: usize) -> Result<Complex<T>> {
    if n == 0 || n > 30 {
        return Err(Error::param("n", format!("{n} outside 1..=30")));
    }
    let dim = 1usize << n;
    for z in [z_in, z_out] {
        if z >= dim {
            return Err(Error::BasisOutOfRange { z, dim });
        }
    }
    let mag = T::lit(2.0).powf(-from_usize::<T>(n) / T::lit(2.0));
    let phase = match group {
        QftGroup::Z2Power => {
            if (z_in & z_out).count_ones().is_multiple_of(2) {
                T::zero()
            } else {
                T::PI()
            }
        }
        QftGroup::Cyclic => {
            let r = ((z_in as u64) * (z_out as u64)) & (dim as u64 - 1);
            T::lit(2.0) * T::PI() * from_usize::<T>(r as usize) / from_usize::<T>(dim)
        }
    };
    Ok(Complex::from_polar(mag, phase))
}

/// Full QFT matrix over the chosen group.
pub fn qft_matrix<T: Real>(group: QftGroup, n: usize) -> Result<Operator<T>> {
    if n > crate::dense::MAX_DENSE_QUBITS {
        return Err(Error::param("n", "dense QFT limited to 12 qubits"));
    }
    let dim = 1usize << n;
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            entries.push(qft_element(group, n, c, r)?);
        }
    }
    Operator::from_row_major(dim, entries)
}

/// Random circuit of `depth` gates drawn from Hadamard and Toffoli (NOT/CNOT
/// on registers too small for Toffoli), with at most `max_hadamards` Hadamards.
pub fn random_circuit<R: Rng + ?Sized>(n: usize, depth: usize, max_hadamards: usize, rng: &mut R) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(depth);
    let mut h = 0;
    for _ in 0..depth {
        let want_h = h < max_hadamards && rng.gen_bool(0.5);
        let gate = if want_h {
            h += 1;
            Gate::Hadamard(rng.gen_range(0..n))
        } else if n >= 3 {
            let mut q: Vec<usize> = (0..n).collect();
            for i in 0..3 {
                let j = rng.gen_range(i..n);
                q.swap(i, j);
            }
            Gate::toffoli(q[0], q[1], q[2])
        } else if n == 2 {
            let c = rng.gen_range(0..2);
            Gate::cnot(c, 1 - c)
        } else {
            Gate::Not(0)
        };
        gates.push(gate);
    }
    Circuit::new(n, gates)
}
