use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, Real};

/// Uniform position grid `x_k = k·spacing`, `|x_k| ≤ extent/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub extent: T,
    pub spacing: T,
}

/// `√(m/(2πit)) · exp(i m (x_F − x_I)²/(2t))` with `ħ = 1` and the principal
/// square root, so the prefactor carries phase `−π/4`.
pub fn free_propagator_exact<T: Real>(m: T, t: T, x_i: T, x_f: T) -> Result<Complex<T>> {
    if !(m > T::zero()) {
        return Err(Error::param("m", "mass must be positive"));
    }
    if !(t > T::zero()) {
        return Err(Error::param("t", "time must be positive"));
    }
    let d = x_f - x_i;
    let modulus = (m / (T::lit(2.0) * T::PI() * t)).sqrt();
    Ok(cis(m * d * d / (T::lit(2.0) * t) - T::FRAC_PI_4()) * modulus)
}

/// Log of the kernel envelope suppression at the lattice resolution limit.
const DAMPING_DECADES: f64 = 8.0;
/// Largest damping `ε` accepted before the grid is reported as too coarse.
const MAX_DAMPING: f64 = 0.25;
/// Largest relative change tolerated when the grid extent is doubled.
const MAX_ALIASING: f64 = 0.02;

/// `M`-fold lattice convolution of the one-slice kernel,
/// `a^{M−1} Σ_{x₁…x_{M−1}} Π K_Δt(x_{k+1} − x_k)`.
///
/// On a grid of spacing `a` the kernel phase `m d²/(2Δt)` is resolved only for
/// `|d| < D = πΔt/(m a)`. Each slice is therefore taken at the complex time
/// `Δt(1 − iε)` with `ε = 2κ m a²/(π² Δt)`, `κ = 8`, which damps the kernel
/// by `e^{−κ}` at `D` and vanishes as `a → 0`. Intermediate points are
/// restricted to `|x| ≤ L/2`; the result is rejected when `ε > 0.25` or when
/// the same sum over a grid of extent `2L` differs by more than 2 %.
pub fn free_propagator_discretized<T: Real>(
    m: T,
    t: T,
    x_i: T,
    x_f: T,
    slices: usize,
    grid: Grid<T>,
) -> Result<Complex<T>> {
    let exact = free_propagator_exact(m, t, x_i, x_f)?;
    if slices == 0 {
        return Err(Error::param("M", "need at least one slice"));
    }
    if !(grid.spacing > T::zero()) || !(grid.extent > grid.spacing) {
        return Err(Error::param("grid", "spacing must be positive and below the extent"));
    }
    if slices == 1 {
        return Ok(exact);
    }
    let a = grid.spacing;
    let half = (grid.extent / (T::lit(2.0) * a)).floor().to_usize().unwrap_or(0);
    let on_grid = |x: T| -> Result<i64> {
        let k = (x / a).round();
        if (x - k * a).abs() > T::lit(1e-9) * a || k.abs() > from_usize::<T>(half) {
            return Err(Error::param("x", "endpoints must be grid points inside the extent"));
        }
        Ok(k.to_i64().unwrap_or(0))
    };
    let (ki, kf) = (on_grid(x_i)?, on_grid(x_f)?);
    let dt = t / from_usize::<T>(slices);
    let eps = T::lit(2.0 * DAMPING_DECADES) * m * a * a / (T::PI() * T::PI() * dt);
    if eps > T::lit(MAX_DAMPING) {
        return Err(Error::GridTooCoarse {
            reason: format!(
                "spacing {:e} needs damping {:.3} above {MAX_DAMPING}",
                a.to_f64().unwrap_or(f64::NAN),
                eps.to_f64().unwrap_or(f64::NAN)
            ),
        });
    }
    let kernel = damped_kernel(m, dt, eps, a);
    let k_l = convolve(&kernel, a, half, ki, kf, slices);
    let k_2l = convolve(&kernel, a, 2 * half, ki, kf, slices);
    let aliasing = ((k_l - k_2l).norm() / k_2l.norm()).to_f64().unwrap_or(f64::INFINITY);
    if !(aliasing <= MAX_ALIASING) {
        return Err(Error::GridTooCoarse {
            reason: format!("estimated aliasing {aliasing:.3e} from doubling the extent"),
        });
    }
    Ok(k_l)
}

/// `√(m/(2πiτ)) e^{i m d²/(2τ)}` at `τ = Δt(1 − iε)` for offsets `d = k·a`
/// out to `1.5 D`, entry `k + K`.
fn damped_kernel<T: Real>(m: T, dt: T, eps: T, a: T) -> Vec<Complex<T>> {
    let two = T::lit(2.0);
    let tau = Complex::new(dt, -dt * eps);
    let reach = T::lit(1.5) * T::PI() * dt / (m * a);
    let kmax = (reach / a).ceil().to_usize().unwrap_or(0);
    let pre = (Complex::new(m, T::zero()) / (Complex::new(T::zero(), two * T::PI()) * tau)).sqrt();
    (0..=2 * kmax)
        .map(|i| {
            let d = from_usize::<T>(i.abs_diff(kmax)) * a;
            pre * (Complex::new(T::zero(), m * d * d / two) / tau).exp()
        })
        .collect()
}

fn convolve<T: Real>(kernel: &[Complex<T>], a: T, half: usize, ki: i64, kf: i64, slices: usize) -> Complex<T> {
    let kmax = (kernel.len() / 2) as i64;
    let n = 2 * half + 1;
    let h = half as i64;
    let zero = Complex::new(T::zero(), T::zero());
    let at = |d: i64| if d.abs() <= kmax { kernel[(d + kmax) as usize] } else { zero };
    let mut v: Vec<Complex<T>> = (0..n as i64).map(|x| at(x - h - ki)).collect();
    for _ in 1..slices {
        let mut next = vec![zero; n];
        for (x, out) in next.iter_mut().enumerate() {
            let lo = (x as i64 - kmax).max(0) as usize;
            let hi = ((x as i64 + kmax) as usize).min(n - 1);
            let mut acc = zero;
            for (y, vy) in v.iter().enumerate().take(hi + 1).skip(lo) {
                acc += kernel[(x as i64 - y as i64 + kmax) as usize] * vy;
            }
            *out = acc * a;
        }
        v = next;
    }
    v[(kf + h) as usize]
}

/// `Σ_k (m/2)(x_{k+1} − x_k)²/Δt` along a sliced path with `Δt = t/(len − 1)`.
pub fn discrete_action<T: Real>(m: T, t: T, path: &[T]) -> Result<T> {
    if path.len() < 2 {
        return Err(Error::param("path", "need at least two points"));
    }
    if !(t > T::zero()) {
        return Err(Error::param("t", "time must be positive"));
    }
    let dt = t / from_usize::<T>(path.len() - 1);
    Ok(path
        .windows(2)
        .fold(T::zero(), |s, w| s + T::lit(0.5) * m * (w[1] - w[0]) * (w[1] - w[0]) / dt))
}

/// Largest number of candidate paths scanned by [`minimal_action_path`].
pub const MAX_ACTION_SCAN: usize = 1 << 24;

/// Scans every path `x_I, c₁, …, c_{M−1}, x_F` with intermediate points drawn
/// from `candidates` and returns the one of least discrete action (first on
/// ties) together with its action.
pub fn minimal_action_path<T: Real>(
    m: T,
    t: T,
    x_i: T,
    x_f: T,
    slices: usize,
    candidates: &[T],
) -> Result<(Vec<T>, T)> {
    if slices < 2 || candidates.is_empty() {
        return Err(Error::param("slices", "need two or more slices and a candidate set"));
    }
    let inner = slices - 1;
    let total = candidates
        .len()
        .checked_pow(inner as u32)
        .filter(|&n| n <= MAX_ACTION_SCAN)
        .ok_or_else(|| Error::param("candidates", format!("scan exceeds {MAX_ACTION_SCAN} paths")))?;
    let mut path = vec![x_i; slices + 1];
    path[slices] = x_f;
    let mut best: Option<(Vec<T>, T)> = None;
    for code in 0..total {
        let mut c = code;
        for slot in path.iter_mut().skip(1).take(inner) {
            *slot = candidates[c % candidates.len()];
            c /= candidates.len();
        }
        let s = discrete_action(m, t, &path)?;
        if best.as_ref().is_none_or(|b| s < b.1) {
            best = Some((path.clone(), s));
        }
    }
    Ok(best.expect("at least one path"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        let k = free_propagator_exact(1.0f64, 1.0, 0.0, 0.0).unwrap();
        let want = (Complex::new(0.0, 2.0 * std::f64::consts::PI)).inv().sqrt();
        assert!((k - want).norm() < 1e-15);
        let k2 = free_propagator_exact(1.0f64, 1.0, 0.0, 2.0).unwrap();
        assert!((k2 / k - cis(2.0)).norm() < 1e-14);
        assert!((k2.norm() - (0.5 / std::f64::consts::PI).sqrt()).abs() < 1e-15);
        assert!(free_propagator_exact(1.0f64, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn single_slice_is_exact() {
        let g = Grid { extent: 10.0, spacing: 0.5 };
        let a = free_propagator_discretized(2.0f64, 0.7, -1.0, 1.5, 1, g).unwrap();
        assert!((a - free_propagator_exact(2.0, 0.7, -1.0, 1.5).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn sliced_modulus_near_exact() {
        let g = Grid { extent: 40.0, spacing: 0.05 };
        let k = free_propagator_discretized(1.0f64, 1.0, 0.0, 0.0, 32, g).unwrap();
        let want = (0.5 / std::f64::consts::PI).sqrt();
        assert!((k.norm() - want).abs() < 0.02 * want, "{}", k.norm());
    }

    #[test]
    fn coarse_grid_rejected() {
        let g = Grid { extent: 40.0, spacing: 0.2 };
        assert!(matches!(
            free_propagator_discretized(1.0f64, 1.0, 0.0, 0.0, 32, g),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn straight_line_minimises_action() {
        let cands: Vec<f64> = (-8..=8).map(|k| k as f64 * 0.25).collect();
        let (p, s) = minimal_action_path(1.0, 1.0, 0.0, 1.5, 3, &cands).unwrap();
        assert_eq!(p, vec![0.0, 0.5, 1.0, 1.5]);
        assert!((s - 0.5 * 1.5 * 1.5).abs() < 1e-14);
    }
}
