//! Dense state-vector and matrix simulation.
//!
//! This is the reference every other module is checked against: gates are
//! built as explicit `2ⁿ × 2ⁿ` matrices from Kronecker products, circuits are
//! multiplied out in time order and Hamiltonians are exponentiated through a
//! full Hermitian eigendecomposition. Nothing here is clever, on purpose.

mod eigen;
mod gates;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, matrix_exponential_hermitian, HermitianEigen};
pub use gates::{flip_qubit, gather_bits, qubit_value, Circuit, Gate, TruthTable};

/// Largest register the dense simulator accepts.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Computational basis state `|z⟩` of an `n`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    n: usize,
    z: usize,
}

impl BasisState {
    pub fn new(n: usize, z: usize) -> Result<Self> {
        if n == 0 || n > 30 {
            return Err(Error::param("n", format!("qubit count {n} outside 1..=30")));
        }
        if z >> n != 0 {
            return Err(Error::BasisOutOfRange { z, dim: 1 << n });
        }
        Ok(Self { n, z })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let z = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
        Self::new(bits.len(), z)
    }

    pub fn qubits(self) -> usize {
        self.n
    }

    pub fn index(self) -> usize {
        self.z
    }

    /// Value of qubit `j` (0-based, most significant first).
    pub fn bit(self, j: usize) -> u8 {
        qubit_value(self.z, self.n, j) as u8
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.n).map(|j| self.bit(j)).collect()
    }
}

impl std::fmt::Display for BasisState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|")?;
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        write!(f, "⟩")
    }
}

/// Pure state as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> State<T> {
    pub fn basis(dim: usize, z: usize) -> Result<Self> {
        if z >= dim {
            return Err(Error::BasisOutOfRange { z, dim });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[z] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    /// `|s⟩ = N^{-1/2} Σ_z |z⟩`.
    pub fn uniform(dim: usize) -> Self {
        let a = T::one() / from_usize::<T>(dim).sqrt();
        Self {
            amps: vec![Complex::new(a, T::zero()); dim],
        }
    }

    /// Wraps amplitudes that are already normalised (within the check tolerance).
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let s = Self { amps };
        let dev = (s.norm_sqr() - T::one()).abs();
        if dev > T::check_tol() {
            return Err(Error::param(
                "amplitudes",
                format!("squared norm deviates from 1 by {dev}"),
            ));
        }
        Ok(s)
    }

    /// Normalises arbitrary nonzero amplitudes.
    pub fn normalized(mut amps: Vec<Complex<T>>) -> Result<Self> {
        let n2: T = amps.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y);
        if !(n2 > T::zero()) || !n2.is_finite() {
            return Err(Error::param("amplitudes", "zero or non-finite vector"));
        }
        let inv = T::one() / n2.sqrt();
        for a in &mut amps {
            *a *= inv;
        }
        Ok(Self { amps })
    }

    /// Unnormalised wrapper used internally by integrators.
    pub(crate) fn raw(amps: Vec<Complex<T>>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn amplitude(&self, z: usize) -> Complex<T> {
        self.amps[z]
    }

    pub fn probability(&self, z: usize) -> T {
        self.amps[z].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// `⟨ψ|O|ψ⟩` for a Hermitian observable (real part returned).
    pub fn expectation(&self, op: &Operator<T>) -> T {
        let v = op.mul_vec(&self.amps);
        self.amps
            .iter()
            .zip(&v)
            .fold(T::zero(), |acc, (a, b)| acc + (a.conj() * b).re)
    }
}

/// Dense `dim × dim` complex matrix with optional unitary/Hermitian flags.
///
/// Flags are only set after the property has been verified at the scalar's
/// check tolerance (`1e-10` for `f64`).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
    unitary: bool,
    hermitian: bool,
}

impl<T: Real> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
            unitary: false,
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m.unitary = true;
        m
    }

    /// Row-major entries, no flags set.
    pub fn from_row_major(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self {
            dim,
            data,
            unitary: false,
            hermitian: false,
        })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self {
            dim,
            data,
            unitary: false,
            hermitian: false,
        }
    }

    pub fn diagonal(values: &[Complex<T>]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, v) in values.iter().enumerate() {
            m.data[i * dim + i] = *v;
        }
        m.hermitian = false;
        m
    }

    /// Real diagonal matrix, flagged Hermitian.
    pub fn real_diagonal(values: &[T]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, v) in values.iter().enumerate() {
            m.data[i * dim + i] = Complex::new(*v, T::zero());
        }
        m
    }

    /// `|ψ⟩⟨ψ|`, flagged Hermitian.
    pub fn projector(state: &State<T>) -> Self {
        let a = state.amplitudes();
        let mut m = Self::from_fn(a.len(), |r, c| a[r] * a[c].conj());
        m.hermitian = true;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == T::zero())
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut m = Self::from_fn(d, |r, c| self.data[c * d + r].conj());
        m.unitary = self.unitary;
        m.hermitian = self.hermitian;
        m
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let d = self.dim;
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = vec![zero; d * d];
        for r in 0..d {
            let orow = &mut out[r * d..(r + 1) * d];
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == zero {
                    continue;
                }
                let brow = &rhs.data[k * d..(k + 1) * d];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            dim: d,
            data: out,
            unitary: self.unitary && rhs.unitary,
            hermitian: false,
        })
    }

    /// Linear combination `a·self + b·other`; Hermitian flag kept for real weights.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x * a + y * b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
            unitary: false,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
            unitary: false,
            hermitian: self.hermitian,
        }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim, rhs.dim);
        let d = da * db;
        let mut m = Self::from_fn(d, |r, c| {
            self.data[(r / db) * da + c / db] * rhs.data[(r % db) * db + c % db]
        });
        m.unitary = self.unitary && rhs.unitary;
        m.hermitian = self.hermitian && rhs.hermitian;
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.data[i * self.dim + i]
        })
    }

    /// `self · v` without any flag checks.
    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.dim;
        (0..d)
            .map(|r| {
                self.data[r * d..(r + 1) * d]
                    .iter()
                    .zip(v)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `max |(U†U − I)_{rc}|`.
    pub fn unitarity_deviation(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for r in 0..d {
            for c in 0..d {
                let mut s = Complex::new(T::zero(), T::zero());
                for k in 0..d {
                    s += self.data[k * d + r].conj() * self.data[k * d + c];
                }
                if r == c {
                    s -= Complex::new(T::one(), T::zero());
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    /// `max |(H − H†)_{rc}|`.
    pub fn hermiticity_deviation(&self) -> T {
        let d = self.dim;
        let mut worst = T::zero();
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.data[r * d + c] - self.data[c * d + r].conj()).norm());
            }
        }
        worst
    }

    /// Verifies and sets the unitary flag.
    pub fn into_unitary(mut self) -> Result<Self> {
        let dev = self.unitarity_deviation();
        if !(dev <= T::check_tol()) {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        self.unitary = true;
        Ok(self)
    }

    /// Verifies and sets the Hermitian flag.
    pub fn into_hermitian(mut self) -> Result<Self> {
        let dev = self.hermiticity_deviation();
        if !(dev <= T::check_tol()) {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Entrywise comparison after removing a global phase: both matrices are
    /// rotated so their first entry with modulus above `tol` is positive real.
    pub fn equals_up_to_global_phase(&self, other: &Self, tol: T) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let a = phase_normalized(&self.data, tol);
        let b = phase_normalized(&other.data, tol);
        a.iter().zip(&b).all(|(x, y)| (x - y).norm() <= tol)
    }
}

fn phase_normalized<T: Real>(data: &[Complex<T>], tol: T) -> Vec<Complex<T>> {
    match data.iter().find(|z| z.norm() > tol) {
        Some(first) => {
            let ph = first.conj() / first.norm();
            data.iter().map(|z| z * ph).collect()
        }
        None => data.to_vec(),
    }
}

/// Single-qubit matrices used to assemble gates.
pub mod pauli {
    use super::Operator;
    use crate::scalar::{c, Real};

    pub fn identity<T: Real>() -> Operator<T> {
        Operator::identity(2)
    }

    pub fn x<T: Real>() -> Operator<T> {
        op([[0.0, 1.0], [1.0, 0.0]], [[0.0; 2]; 2])
    }

    pub fn y<T: Real>() -> Operator<T> {
        op([[0.0; 2]; 2], [[0.0, -1.0], [1.0, 0.0]])
    }

    pub fn z<T: Real>() -> Operator<T> {
        op([[1.0, 0.0], [0.0, -1.0]], [[0.0; 2]; 2])
    }

    pub fn hadamard<T: Real>() -> Operator<T> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        op([[h, h], [h, -h]], [[0.0; 2]; 2])
    }

    /// `|1⟩⟨1|`.
    pub fn one_projector<T: Real>() -> Operator<T> {
        op([[0.0, 0.0], [0.0, 1.0]], [[0.0; 2]; 2])
    }

    fn op<T: Real>(re: [[f64; 2]; 2], im: [[f64; 2]; 2]) -> Operator<T> {
        Operator::from_fn(2, |r, col| c(re[r][col], im[r][col]))
            .into_hermitian()
            .expect("2x2 Pauli-type matrices are hermitian")
    }
}

/// Kronecker product over `n` qubits with `factors[j]` on qubit `j` and the
/// identity on every qubit not listed.
pub fn local_product<T: Real>(n: usize, factors: &[(usize, Operator<T>)]) -> Result<Operator<T>> {
    let mut out = Operator::identity(1);
    for q in 0..n {
        let f = factors
            .iter()
            .find(|(j, _)| *j == q)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(pauli::identity);
        out = out.kron(&f);
    }
    for (j, _) in factors {
        if *j >= n {
            return Err(Error::QubitOutOfRange { index: *j, qubits: n });
        }
    }
    Ok(out)
}

/// Dense matrix of one gate on an `n`-qubit register.
pub fn gate_matrix<T: Real>(gate: &Gate, n: usize) -> Result<Operator<T>> {
    gate.validate(n)?;
    if n > MAX_DENSE_QUBITS {
        return Err(Error::param(
            "qubits",
            format!("dense simulation limited to {MAX_DENSE_QUBITS} qubits"),
        ));
    }
    let dim = 1usize << n;
    let one = Complex::new(T::one(), T::zero());
    let m = match gate {
        Gate::Hadamard(t) => local_product(n, &[(*t, pauli::hadamard())])?,
        Gate::Not(t) => local_product(n, &[(*t, pauli::x())])?,
        Gate::Cnot { control, target } => {
            // I + |1⟩⟨1|_c ⊗ (X − I)_t
            let x_minus_i = pauli::x().combine(T::one(), &pauli::identity(), -T::one())?;
            let corr = local_product(n, &[(*control, pauli::one_projector()), (*target, x_minus_i)])?;
            Operator::identity(dim).combine(T::one(), &corr, T::one())?
        }
        Gate::Toffoli { controls, target } => {
            let x_minus_i = pauli::x().combine(T::one(), &pauli::identity(), -T::one())?;
            let corr = local_product(
                n,
                &[
                    (controls[0], pauli::one_projector()),
                    (controls[1], pauli::one_projector()),
                    (*target, x_minus_i),
                ],
            )?;
            Operator::identity(dim).combine(T::one(), &corr, T::one())?
        }
        Gate::PhaseOracle(table) => {
            let diag: Vec<_> = (0..dim)
                .map(|z| if table.eval(z) { -one } else { one })
                .collect();
            Operator::diagonal(&diag)
        }
        Gate::BitFlipOracle {
            inputs,
            target,
            table,
        } => {
            let mut m = Operator::zeros(dim);
            for col in 0..dim {
                let row = if table.eval(gather_bits(col, n, inputs)) {
                    flip_qubit(col, n, *target)
                } else {
                    col
                };
                m.data[row * dim + col] = one;
            }
            m
        }
    };
    m.into_unitary()
}

/// `op · state`; the operator must carry the unitary flag.
pub fn dense_apply<T: Real>(op: &Operator<T>, state: &State<T>) -> Result<State<T>> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: state.dim(),
        });
    }
    if !op.is_unitary() {
        return Err(Error::NotFlaggedUnitary);
    }
    Ok(State::raw(op.mul_vec(state.amplitudes())))
}

/// `U = U^{(M)} ⋯ U^{(1)}` for the circuit's gates in time order.
pub fn dense_propagator<T: Real>(circuit: &Circuit) -> Result<Operator<T>> {
    let n = circuit.qubits();
    let mut u = Operator::identity(circuit.dim());
    for g in circuit.gates() {
        u = gate_matrix(g, n)?.matmul(&u)?;
    }
    u.into_unitary()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn close(a: Complex<f64>, re: f64, im: f64) -> bool {
        (a.re - re).abs() < TOL && (a.im - im).abs() < TOL
    }

    #[test]
    fn hadamard_on_zero() {
        let u = gate_matrix::<f64>(&Gate::Hadamard(0), 1).unwrap();
        let s = dense_apply(&u, &State::basis(2, 0).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitude(0), h, 0.0));
        assert!(close(s.amplitude(1), h, 0.0));
    }

    #[test]
    fn toffoli_sets_target() {
        let u = gate_matrix::<f64>(&Gate::toffoli(0, 1, 2), 3).unwrap();
        let s = dense_apply(&u, &State::basis(8, 0b110).unwrap()).unwrap();
        assert!(close(s.amplitude(0b111), 1.0, 0.0));
        let s = dense_apply(&u, &State::basis(8, 0b100).unwrap()).unwrap();
        assert!(close(s.amplitude(0b100), 1.0, 0.0));
    }

    #[test]
    fn identity_leaves_state() {
        let s = State::<f64>::normalized(vec![Complex::new(0.3, 0.1), Complex::new(-0.2, 0.7)]).unwrap();
        let out = dense_apply(&Operator::identity(2), &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn dimension_and_flag_errors() {
        let s = State::<f64>::basis(4, 0).unwrap();
        assert!(matches!(
            dense_apply(&Operator::identity(2), &s),
            Err(Error::DimensionMismatch { .. })
        ));
        let h = Operator::<f64>::real_diagonal(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(dense_apply(&h, &s), Err(Error::NotFlaggedUnitary));
    }

    #[test]
    fn hh_is_identity_and_empty_circuit_is_identity() {
        let c = Circuit::new(1, vec![Gate::Hadamard(0), Gate::Hadamard(0)]).unwrap();
        let u = dense_propagator::<f64>(&c).unwrap();
        assert!(u.max_abs_diff(&Operator::identity(2)) < 1e-15);
        let e = dense_propagator::<f64>(&Circuit::empty(3).unwrap()).unwrap();
        assert_eq!(e, Operator::identity(8));
    }

    #[test]
    fn out_of_range_qubit_rejected() {
        assert_eq!(
            Circuit::new(2, vec![Gate::Hadamard(2)]),
            Err(Error::QubitOutOfRange { index: 2, qubits: 2 })
        );
        assert!(Circuit::new(3, vec![Gate::toffoli(0, 0, 1)]).is_err());
    }

    #[test]
    fn cnot_matches_permutation() {
        let u = gate_matrix::<f64>(&Gate::cnot(0, 1), 2).unwrap();
        for (col, row) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            assert!(close(u.get(row, col), 1.0, 0.0));
        }
    }

    #[test]
    fn bit_convention_is_msb_first() {
        let b = BasisState::new(3, 0b100).unwrap();
        assert_eq!(b.bits(), vec![1, 0, 0]);
        assert_eq!(BasisState::from_bits(&[0, 1, 1]).unwrap().index(), 3);
        assert!(BasisState::new(2, 4).is_err());
    }

    #[test]
    fn global_phase_comparison() {
        let a = Operator::<f64>::identity(2);
        let b = a.scale(-1.0);
        assert!(a.equals_up_to_global_phase(&b, 1e-12));
        assert!(!a.equals_up_to_global_phase(&pauli::z(), 1e-12));
    }

    #[test]
    fn works_in_single_precision() {
        let c = Circuit::new(2, vec![Gate::Hadamard(0), Gate::cnot(0, 1)]).unwrap();
        let u = dense_propagator::<f32>(&c).unwrap();
        let s = dense_apply(&u, &State::basis(4, 0).unwrap()).unwrap();
        assert!((s.probability(0) - 0.5).abs() < 1e-6);
        assert!((s.probability(3) - 0.5).abs() < 1e-6);
    }
}
