use num_complex::Complex;

use crate::dense::{hermitian_eigenvalues, pauli, local_product, Operator, State};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};

/// Sign of the transverse-field mixer on the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MixerSign {
    /// `K = −Σ X_j`, whose ground state is `|s⟩`.
    #[default]
    Negative,
    /// `K = +Σ X_j`.
    Positive,
}

/// Structure recognised for `O(N)` application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Structure {
    General,
    /// `K = I − |s⟩⟨s|`, `V = I − |w⟩⟨w|`.
    Grover { w: usize },
    /// `K = ±Σ X_j` on `n` qubits, diagonal `V`.
    Ring { n: usize, sign: MixerSign },
}

/// Mixer `K` and problem `V` of an interpolated Hamiltonian.
#[derive(Debug, Clone)]
pub struct HamiltonianPair<T> {
    mixer: Operator<T>,
    problem: Operator<T>,
    diagonal: Option<Vec<T>>,
    pub(crate) structure: Structure,
}

impl<T: Real> HamiltonianPair<T> {
    /// Both operators must be Hermitian and of equal dimension.
    pub fn new(mixer: Operator<T>, problem: Operator<T>) -> Result<Self> {
        if mixer.dim() != problem.dim() {
            return Err(Error::DimensionMismatch {
                expected: mixer.dim(),
                found: problem.dim(),
            });
        }
        let mixer = mixer.into_hermitian()?;
        let problem = problem.into_hermitian()?;
        let d = problem.dim();
        let is_diag = (0..d).all(|r| (0..d).all(|c| r == c || problem.get(r, c) == Complex::new(T::zero(), T::zero())));
        let diagonal = is_diag.then(|| (0..d).map(|i| problem.get(i, i).re).collect());
        Ok(Self {
            mixer,
            problem,
            diagonal,
            structure: Structure::General,
        })
    }

    pub fn mixer(&self) -> &Operator<T> {
        &self.mixer
    }

    pub fn problem(&self) -> &Operator<T> {
        &self.problem
    }

    pub fn dim(&self) -> usize {
        self.mixer.dim()
    }

    /// Diagonal of `V` when `V` is a classical objective.
    pub fn problem_diagonal(&self) -> Option<&[T]> {
        self.diagonal.as_deref()
    }

    /// `K ψ`.
    pub fn apply_mixer(&self, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        match self.structure {
            Structure::Grover { .. } => {
                let mean = mean(psi);
                psi.iter().map(|a| a - mean).collect()
            }
            Structure::Ring { n, sign } => {
                let s = match sign {
                    MixerSign::Negative => -T::one(),
                    MixerSign::Positive => T::one(),
                };
                (0..psi.len())
                    .map(|z| {
                        let mut acc = Complex::new(T::zero(), T::zero());
                        for j in 0..n {
                            acc += psi[z ^ (1 << j)];
                        }
                        acc * s
                    })
                    .collect()
            }
            Structure::General => self.mixer.mul_vec(psi),
        }
    }

    /// `V ψ`.
    pub fn apply_problem(&self, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        match &self.diagonal {
            Some(d) => psi.iter().zip(d).map(|(a, &v)| a * v).collect(),
            None => self.problem.mul_vec(psi),
        }
    }

    /// `((1−λ)K + λV) ψ`.
    pub fn apply(&self, lambda: T, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        let k = self.apply_mixer(psi);
        let v = self.apply_problem(psi);
        k.iter()
            .zip(&v)
            .map(|(a, b)| a * (T::one() - lambda) + b * lambda)
            .collect()
    }
}

fn mean<T: Real>(psi: &[Complex<T>]) -> Complex<T> {
    psi.iter().fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / from_usize::<T>(psi.len())
}

/// `K = I − |s⟩⟨s|`, `V = I − |w⟩⟨w|` on `n` qubits.
pub fn grover_pair<T: Real>(n: usize, w: usize) -> Result<HamiltonianPair<T>> {
    if n == 0 || n > crate::dense::MAX_DENSE_QUBITS {
        return Err(Error::param("n", format!("{n} outside 1..=12")));
    }
    let dim = 1usize << n;
    if w >= dim {
        return Err(Error::BasisOutOfRange { z: w, dim });
    }
    let id = Operator::identity(dim);
    let k = id.combine(T::one(), &Operator::projector(&State::uniform(dim)), -T::one())?;
    let mut diag = vec![T::one(); dim];
    diag[w] = T::zero();
    let mut pair = HamiltonianPair::new(k, Operator::real_diagonal(&diag))?;
    pair.structure = Structure::Grover { w };
    Ok(pair)
}

/// Transverse-field mixer and periodic Ising ring `V = Σ Z_j Z_{j+1}`.
pub fn ring_hamiltonians<T: Real>(n: usize, sign: MixerSign) -> Result<HamiltonianPair<T>> {
    if !(2..=10).contains(&n) {
        return Err(Error::param("n", format!("{n} outside 2..=10")));
    }
    let dim = 1usize << n;
    let mut k = Operator::zeros(dim);
    for j in 0..n {
        k = k.combine(T::one(), &local_product(n, &[(j, pauli::x())])?, T::one())?;
    }
    if sign == MixerSign::Negative {
        k = k.scale(-T::one());
    }
    let diag: Vec<T> = (0..dim).map(|z| ring_energy(z, n)).collect();
    let mut pair = HamiltonianPair::new(k, Operator::real_diagonal(&diag))?;
    pair.structure = Structure::Ring { n, sign };
    Ok(pair)
}

/// `Σ_j z_j z_{j+1}` with `z_j = ±1` read from the bits of `z`, periodic.
fn ring_energy<T: Real>(z: usize, n: usize) -> T {
    let mut e = 0i64;
    for j in 0..n {
        let a = (z >> (n - 1 - j)) & 1;
        let b = (z >> (n - 1 - (j + 1) % n)) & 1;
        e += if a == b { 1 } else { -1 };
    }
    T::from_i64(e).expect("small integer")
}

/// `(1 − λ)K + λV`.
pub fn interpolated_hamiltonian<T: Real>(pair: &HamiltonianPair<T>, lambda: T) -> Result<Operator<T>> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::param("lambda", "must lie in [0, 1]"));
    }
    pair.mixer.combine(T::one() - lambda, &pair.problem, lambda)
}

/// `E₁ − E₀` of the interpolated Hamiltonian by dense eigensolve.
pub fn spectral_gap<T: Real>(pair: &HamiltonianPair<T>, lambda: T) -> Result<T> {
    let h = interpolated_hamiltonian(pair, lambda)?;
    let e = hermitian_eigenvalues(&h)?;
    if e.len() < 2 {
        return Err(Error::param("pair", "need dimension at least two"));
    }
    Ok(e[1] - e[0])
}
