use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use super::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coin basis: `↑ = 0` moves right (`z → z + 1`), `↓ = 1` moves left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coin {
    Up,
    Down,
    /// `(|↑⟩ + i|↓⟩)/√2`, which gives a mirror-symmetric walk.
    Symmetric,
}

impl Coin {
    /// `(c_↑, c_↓)`.
    pub fn spinor<T: Real>(self) -> [Complex<T>; 2] {
        let z = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        match self {
            Coin::Up => [one, z],
            Coin::Down => [z, one],
            Coin::Symmetric => {
                let h = T::FRAC_1_SQRT_2();
                [Complex::new(h, T::zero()), Complex::new(T::zero(), h)]
            }
        }
    }
}

/// Walker amplitudes over positions `z ∈ [−reach, reach]` and the coin.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState<T> {
    reach: usize,
    /// Entry `z + reach` holds `(ψ_↑(z), ψ_↓(z))`.
    amps: Vec<[Complex<T>; 2]>,
    steps: usize,
}

impl<T: Real> WalkerState<T> {
    /// Walker at the origin with the given normalised coin spinor.
    pub fn at_origin(spinor: [Complex<T>; 2]) -> Result<Self> {
        let n = spinor[0].norm_sqr() + spinor[1].norm_sqr();
        if (n - T::one()).abs() > T::check_tol() {
            return Err(Error::param("spinor", "coin state must be normalised"));
        }
        Ok(Self {
            reach: 0,
            amps: vec![spinor],
            steps: 0,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn reach(&self) -> usize {
        self.reach
    }

    /// `(ψ_↑(z), ψ_↓(z))`, zero outside the support.
    pub fn amplitude(&self, z: i64) -> [Complex<T>; 2] {
        let r = self.reach as i64;
        if z.abs() > r {
            let zero = Complex::new(T::zero(), T::zero());
            return [zero, zero];
        }
        self.amps[(z + r) as usize]
    }

    pub fn probability(&self, z: i64) -> T {
        let a = self.amplitude(z);
        a[0].norm_sqr() + a[1].norm_sqr()
    }

    /// `(z, P(z))` over the support.
    pub fn distribution(&self) -> Vec<(i64, T)> {
        let r = self.reach as i64;
        (-r..=r).map(|z| (z, self.probability(z))).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a[0].norm_sqr() + a[1].norm_sqr())
    }
}

/// Hadamard coin followed by the coin-controlled shift; the support grows by
/// one site on each side.
pub fn dtqrw_step<T: Real>(state: &WalkerState<T>) -> WalkerState<T> {
    let h = T::FRAC_1_SQRT_2();
    let zero = Complex::new(T::zero(), T::zero());
    let reach = state.reach + 1;
    let mut amps = vec![[zero, zero]; 2 * reach + 1];
    for (i, a) in state.amps.iter().enumerate() {
        let up = (a[0] + a[1]) * h;
        let down = (a[0] - a[1]) * h;
        // Old index i sits at new index i + 1; ↑ moves right, ↓ left.
        amps[i + 2][0] += up;
        amps[i][1] += down;
    }
    WalkerState {
        reach,
        amps,
        steps: state.steps + 1,
    }
}

/// `n` applications of [`dtqrw_step`].
pub fn dtqrw_run<T: Real>(initial: &WalkerState<T>, n: usize) -> WalkerState<T> {
    let mut s = initial.clone();
    for _ in 0..n {
        s = dtqrw_step(&s);
    }
    s
}

/// Largest step count accepted by the closed-form amplitudes.
pub const MAX_COMBINATORIAL_STEPS: usize = 1000;

/// Signed run counts for a walk whose coin starts at `start_up` and ends at
/// position `z` after `n` steps: `(Σ for final ↓, Σ for final ↑)`.
///
/// A Hadamard coin contributes `−1` exactly when it maps `↓` to `↓`, so a
/// path's sign is `(−1)` to the number of consecutive left moves, counting
/// the initial coin as a virtual first move.
fn signed_sums(n_l: usize, n_r: usize, start_up: bool) -> (BigInt, BigInt) {
    let sign = |e: i64| if e.rem_euclid(2) == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    let (mut left, mut right) = (BigInt::zero(), BigInt::zero());
    let nl = n_l as i64;
    for k in 0..=(n_l + n_r + 1) {
        let ki = k as i64;
        if start_up {
            left += sign(nl - ki) * BigInt::from(compositions(n_r + 1, k) * compositions(n_l, k));
            right += sign(nl - ki) * BigInt::from(compositions(n_r + 1, k + 1) * compositions(n_l, k));
        } else {
            left += sign(nl - ki) * BigInt::from(compositions(n_l + 1, k + 1) * compositions(n_r, k));
            right += sign(nl + 1 - ki) * BigInt::from(compositions(n_l + 1, k) * compositions(n_r, k));
        }
    }
    (left, right)
}

fn scaled<T: Real>(v: &BigInt, n: usize) -> T {
    let f = v.to_f64().unwrap_or(f64::NAN) * 2f64.powf(-(n as f64) / 2.0);
    T::from_f64(f).expect("finite amplitude")
}

/// Closed-form `(ψ_L, ψ_R)` at position `z` after `n` steps for a walker
/// starting at the origin with coin `↑`, as signed sums over run counts.
pub fn dtqrw_combinatorial<T: Real>(n: usize, z: i64) -> Result<(T, T)> {
    let (l, r) = combinatorial_parts(n, z, true)?;
    Ok((l, r))
}

/// Closed-form `(ψ_L, ψ_R)` for an arbitrary initial coin spinor `(c_↑, c_↓)`.
pub fn dtqrw_combinatorial_from<T: Real>(n: usize, z: i64, spinor: [Complex<T>; 2]) -> Result<(Complex<T>, Complex<T>)> {
    let (ul, ur) = combinatorial_parts::<T>(n, z, true)?;
    let (dl, dr) = combinatorial_parts::<T>(n, z, false)?;
    Ok((spinor[0] * ul + spinor[1] * dl, spinor[0] * ur + spinor[1] * dr))
}

fn combinatorial_parts<T: Real>(n: usize, z: i64, start_up: bool) -> Result<(T, T)> {
    if n > MAX_COMBINATORIAL_STEPS {
        return Err(Error::param("n", format!("{n} exceeds {MAX_COMBINATORIAL_STEPS}")));
    }
    let ni = n as i64;
    if z.abs() > ni || (ni + z) % 2 != 0 {
        return Ok((T::zero(), T::zero()));
    }
    let n_r = ((ni + z) / 2) as usize;
    let n_l = ((ni - z) / 2) as usize;
    let (l, r) = signed_sums(n_l, n_r, start_up);
    Ok((scaled(&l, n), scaled(&r, n)))
}

/// `Σ_z (|ψ_L|² + |ψ_R|²)` of the closed form, a unitarity check.
pub fn combinatorial_total<T: Real>(n: usize) -> Result<T> {
    let mut s = T::zero();
    for z in -(n as i64)..=n as i64 {
        let (l, r) = dtqrw_combinatorial::<T>(n, z)?;
        s += l * l + r * r;
    }
    Ok(s)
}
