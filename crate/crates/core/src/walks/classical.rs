use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest step count accepted by [`classical_rw_distribution`].
pub const MAX_CLASSICAL_STEPS: usize = 1000;

/// Exact position distribution of the symmetric random walk after `n` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution {
    steps: usize,
    /// Entry `j + n` holds `P(j)` for `j ∈ [−n, n]`.
    probs: Vec<BigRational>,
}

impl ClassicalDistribution {
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `P(j)`; zero outside `[−n, n]` and at mismatched parity.
    pub fn probability(&self, j: i64) -> BigRational {
        let n = self.steps as i64;
        if j.abs() > n {
            return BigRational::zero();
        }
        self.probs[(j + n) as usize].clone()
    }

    /// `(j, P(j))` for every `j ∈ [−n, n]`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        let n = self.steps as i64;
        self.probs.iter().enumerate().map(move |(i, p)| (i as i64 - n, p))
    }

    /// Exact total probability.
    pub fn total(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Same table as floating point.
    pub fn to_real<T: Real>(&self) -> Vec<(i64, T)> {
        self.entries()
            .map(|(j, p)| (j, T::from_f64(p.to_f64().unwrap_or(0.0)).expect("probability representable")))
            .collect()
    }
}

/// `P_n(j) = C(n, (n+j)/2) 2^{−n}` for `j ≡ n (mod 2)`.
pub fn classical_rw_distribution(n: usize) -> Result<ClassicalDistribution> {
    if n > MAX_CLASSICAL_STEPS {
        return Err(Error::param("n", format!("{n} exceeds {MAX_CLASSICAL_STEPS}")));
    }
    let denom = BigInt::one() << n;
    let probs = (0..=2 * n)
        .map(|i| {
            if i % 2 == 0 {
                // j = i − n, so (n + j)/2 = i/2.
                let k = i / 2;
                BigRational::new(BigInt::from(binomial(n, k)), denom.clone())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    Ok(ClassicalDistribution { steps: n, probs })
}

/// Normal density with mean 0 and variance `t`.
pub fn gaussian_limit_density<T: Real>(t: T, z: T) -> Result<T> {
    if !(t > T::zero()) {
        return Err(Error::param("t", "must be positive"));
    }
    Ok((-(z * z) / (T::lit(2.0) * t)).exp() / (T::lit(2.0) * T::PI() * t).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_tables() {
        let d = classical_rw_distribution(2).unwrap();
        assert_eq!(d.probability(-2), q(1, 4));
        assert_eq!(d.probability(0), q(1, 2));
        assert_eq!(d.probability(2), q(1, 4));
        assert_eq!(d.probability(1), q(0, 1));
        let d = classical_rw_distribution(1).unwrap();
        assert_eq!(d.probability(-1), q(1, 2));
        assert_eq!(d.probability(1), q(1, 2));
    }

    #[test]
    fn recurrence_oracle() {
        // φ^{(k+1)}_j = ½ (φ^{(k)}_{j−1} + φ^{(k)}_{j+1}) with exact rationals.
        let n = 50;
        let mut phi = vec![BigRational::zero(); 2 * n + 3];
        let off = n as i64 + 1;
        phi[off as usize] = BigRational::one();
        let half = q(1, 2);
        for _ in 0..n {
            let mut next = vec![BigRational::zero(); phi.len()];
            for i in 1..phi.len() - 1 {
                next[i] = &half * (&phi[i - 1] + &phi[i + 1]);
            }
            phi = next;
        }
        let d = classical_rw_distribution(n).unwrap();
        for j in -(n as i64)..=n as i64 {
            assert_eq!(d.probability(j), phi[(j + off) as usize]);
        }
        assert_eq!(d.total(), BigRational::one());
    }

    #[test]
    fn gaussian_peak_and_symmetry() {
        let p = gaussian_limit_density(1.0f64, 0.0).unwrap();
        assert!((p - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert_eq!(gaussian_limit_density(3.0f64, 1.7).unwrap(), gaussian_limit_density(3.0, -1.7).unwrap());
        assert!(gaussian_limit_density(0.0f64, 1.0).is_err());
    }

    #[test]
    fn gaussian_approximates_binomial() {
        let n = 400;
        let d = classical_rw_distribution(n).unwrap().to_real::<f64>();
        // Lattice spacing 2 on the parity sublattice.
        let tv: f64 = d
            .iter()
            .filter(|(j, _)| (j + n as i64) % 2 == 0)
            .map(|&(j, p)| (p - 2.0 * gaussian_limit_density(n as f64, j as f64).unwrap()).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.02, "{tv}");
    }
}
