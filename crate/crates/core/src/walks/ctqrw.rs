use num_complex::Complex;

use crate::dense::{hermitian_eigen, Operator, State};
use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, Real};

/// Largest ring accepted by [`ctqrw_exact`].
pub const MAX_RING: usize = 10_000;

/// `⟨d|e^{−itA}|0⟩` on the `N`-cycle by its eigen-sum
/// `(1/N) Σ_p e^{−2it cos(2πp/N)} e^{i2πpd/N}`.
///
/// This is the Laplacian walk `e^{−it(A−D)}` with the uniform phase `e^{2it}`
/// removed.
pub fn ctqrw_exact<T: Real>(n: usize, t: T, d: i64) -> Result<Complex<T>> {
    if n == 0 || n > MAX_RING {
        return Err(Error::param("N", format!("{n} outside 1..={MAX_RING}")));
    }
    let nn = n as i64;
    let d = d.rem_euclid(nn) as usize;
    let two_pi_n = T::lit(2.0) * T::PI() / from_usize::<T>(n);
    let mut acc = Complex::new(T::zero(), T::zero());
    for p in 0..n {
        let theta = two_pi_n * from_usize::<T>(p);
        // Reduce p·d mod N before scaling to keep the phase argument small.
        let pd = (p * d) % n;
        acc += cis(-T::lit(2.0) * t * theta.cos() + two_pi_n * from_usize::<T>(pd));
    }
    Ok(acc / from_usize::<T>(n))
}

/// Continuum kernel `(−i)^d J_d(2t)`, the `N → ∞` limit of [`ctqrw_exact`].
pub fn ctqrw_bessel<T: Real>(t: T, d: i64) -> Result<Complex<T>> {
    if !(t >= T::zero()) {
        return Err(Error::param("t", "must be nonnegative"));
    }
    let j = bessel_j(d, T::lit(2.0) * t)?;
    let phase = match d.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), -T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), T::one()),
    };
    Ok(phase * j)
}

/// Bessel function of the first kind `J_d(x)` for integer order and
/// `0 ≤ x ≤ 10³` by Miller's downward recurrence, normalised with
/// `J₀ + 2 Σ J_{2k} = 1`. Values below the floating-point range come back as 0.
pub fn bessel_j<T: Real>(d: i64, x: T) -> Result<T> {
    if !(x >= T::zero()) || x > T::lit(1e3) {
        return Err(Error::param("x", "argument must lie in [0, 1000]"));
    }
    let order = d.unsigned_abs() as usize;
    let sign = if d < 0 && order % 2 == 1 { -1.0 } else { 1.0 };
    let v = sign * miller(order, x.to_f64().unwrap_or(0.0));
    Ok(T::from_f64(v).unwrap_or(T::zero()))
}

/// Downward recurrence in double precision regardless of `T`; the seed and
/// rescaling thresholds need the `f64` exponent range.
fn miller(order: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let top = order.max(x.ceil() as usize);
    let mut m = top + 30 + (60.0 * top as f64).sqrt() as usize;
    m += m % 2;

    let two_over_x = 2.0 / x;
    let (mut jp, mut j) = (0.0, 1e-300);
    let mut sum = 0.0;
    let mut value = 0.0;
    for k in (1..=m).rev() {
        // j holds J_k, jp holds J_{k+1}.
        if k == order {
            value = j;
        }
        if k % 2 == 0 {
            sum += j;
        }
        let jm = k as f64 * two_over_x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            sum *= 1e-250;
            value *= 1e-250;
        }
    }
    if order == 0 {
        value = j;
    }
    value / (j + 2.0 * sum)
}

/// `|⟨w|e^{−iHT}|s⟩|²` for `H = −γN|s⟩⟨s| − |w⟩⟨w|`, evolved in the
/// two-dimensional span of `|w⟩` and `|s⟩`.
pub fn grover_walk<T: Real>(n_items: usize, gamma: T, time: T) -> Result<T> {
    if !(2..=1 << 12).contains(&n_items) {
        return Err(Error::param("N", "must lie in 2..=4096"));
    }
    if !(time >= T::zero()) {
        return Err(Error::param("T", "must be nonnegative"));
    }
    let nf = from_usize::<T>(n_items);
    // Orthonormal basis |w⟩, |r⟩ with |s⟩ = a|w⟩ + b|r⟩.
    let a = T::one() / nf.sqrt();
    let b = (T::one() - T::one() / nf).sqrt();
    let g = gamma * nf;
    let h = Operator::from_fn(2, |r, c| {
        let s = [a, b];
        let v = -g * s[r] * s[c] - if r == 0 && c == 0 { T::one() } else { T::zero() };
        Complex::new(v, T::zero())
    });
    let eig = hermitian_eigen(&h)?;
    let psi = State::raw(vec![Complex::new(a, T::zero()), Complex::new(b, T::zero())]);
    let out = eig.evolve(time, psi.amplitudes());
    Ok(out[0].norm_sqr())
}
