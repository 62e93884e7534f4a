use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use super::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest step count accepted by the checkerboard routines.
pub const MAX_CHECKERBOARD_STEPS: usize = 1000;

/// Direction of the first lattice move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartDirection {
    #[default]
    Right,
    Left,
    /// Sum of the right- and left-starting kernels.
    Superposed,
}

/// Paths of `n` unit moves ending at `z` whose first move is right, counted
/// by number of reversals: entry `R` holds `N(R)`.
fn counts_from_right(n_r: usize, n_l: usize) -> Vec<BigUint> {
    let n = n_r + n_l;
    let mut out = vec![BigUint::zero(); n.max(1)];
    for (r, slot) in out.iter_mut().enumerate() {
        // R reversals split the path into R + 1 alternating runs, starting right.
        let runs = r + 1;
        let right_runs = runs.div_ceil(2);
        let left_runs = runs / 2;
        *slot = compositions(n_r, right_runs) * compositions(n_l, left_runs);
    }
    out
}

fn split(n: usize, z: i64) -> Result<Option<(usize, usize)>> {
    if n > MAX_CHECKERBOARD_STEPS {
        return Err(Error::param("n", format!("{n} exceeds {MAX_CHECKERBOARD_STEPS}")));
    }
    let ni = n as i64;
    if n == 0 || z.abs() > ni || (ni + z) % 2 != 0 {
        return Ok(None);
    }
    Ok(Some((((ni + z) / 2) as usize, ((ni - z) / 2) as usize)))
}

/// `N(R)` for `R = 0..n−1`: the number of `n`-step lattice paths from 0 to `z`
/// with exactly `R` reversals and the given first move.
pub fn checkerboard_counts(n: usize, z: i64, start: StartDirection) -> Result<Vec<BigUint>> {
    let Some((n_r, n_l)) = split(n, z)? else {
        return Ok(vec![BigUint::zero(); n.max(1)]);
    };
    Ok(match start {
        StartDirection::Right => counts_from_right(n_r, n_l),
        // Mirroring swaps right and left moves.
        StartDirection::Left => counts_from_right(n_l, n_r),
        StartDirection::Superposed => counts_from_right(n_r, n_l)
            .into_iter()
            .zip(counts_from_right(n_l, n_r))
            .map(|(a, b)| a + b)
            .collect(),
    })
}

/// `K(z) = Σ_R N(R) (i·a)^R` with `a` the mass times the lattice step.
pub fn checkerboard_kernel<T: Real>(n: usize, z: i64, mass_a: T, start: StartDirection) -> Result<Complex<T>> {
    if !mass_a.is_finite() {
        return Err(Error::param("mass_a", "must be finite"));
    }
    let counts = checkerboard_counts(n, z, start)?;
    let ia = Complex::new(T::zero(), mass_a);
    let mut power = Complex::new(T::one(), T::zero());
    let mut acc = Complex::new(T::zero(), T::zero());
    for c in &counts {
        if !c.is_zero() {
            let c = T::from_f64(c.to_f64().unwrap_or(f64::INFINITY)).unwrap_or(T::infinity());
            acc += power * c;
        }
        power *= ia;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates all `2^n` move sequences; bit `k` set means move `k` goes right.
    fn brute_force(n: usize, start: StartDirection) -> Vec<Vec<u64>> {
        let mut table = vec![vec![0u64; n]; 2 * n + 1];
        for seq in 0u32..1 << n {
            let right = |k: usize| seq >> k & 1 == 1;
            let ok = match start {
                StartDirection::Right => right(0),
                StartDirection::Left => !right(0),
                StartDirection::Superposed => true,
            };
            if !ok {
                continue;
            }
            let z: i64 = (0..n).map(|k| if right(k) { 1 } else { -1 }).sum();
            let rev = (1..n).filter(|&k| right(k) != right(k - 1)).count();
            table[(z + n as i64) as usize][rev] += 1;
        }
        table
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 1..=14 {
            for start in [StartDirection::Right, StartDirection::Left, StartDirection::Superposed] {
                let table = brute_force(n, start);
                for z in -(n as i64)..=n as i64 {
                    let c = checkerboard_counts(n, z, start).unwrap();
                    let want: Vec<BigUint> = table[(z + n as i64) as usize].iter().map(|&v| BigUint::from(v)).collect();
                    assert_eq!(c, want, "n={n} z={z} {start:?}");
                }
            }
        }
    }

    #[test]
    fn massless_limit_is_light_cone() {
        for n in 1..=12usize {
            for z in -(n as i64)..=n as i64 {
                let k = checkerboard_kernel(n, z, 0.0f64, StartDirection::Superposed).unwrap();
                let want = if z.unsigned_abs() as usize == n { 1.0 } else { 0.0 };
                assert_eq!(k, Complex::new(want, 0.0));
            }
        }
    }

    #[test]
    fn two_steps_one_reversal() {
        let k = checkerboard_kernel(2, 0, 0.3f64, StartDirection::Right).unwrap();
        assert!((k - Complex::new(0.0, 0.3)).norm() < 1e-15);
        assert_eq!(checkerboard_kernel(3, 0, 0.3f64, StartDirection::Right).unwrap(), Complex::new(0.0, 0.0));
    }
}
