use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

type M2<T> = [[Complex<T>; 2]; 2];

fn mat_mul<T: Real>(a: &M2<T>, b: &M2<T>) -> M2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn mat_pow<T: Real>(m: &M2<T>, mut n: usize) -> M2<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = [[one, zero], [zero, one]];
    let mut base = *m;
    while n > 0 {
        if n & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        n >>= 1;
    }
    acc
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Spin value for basis index `0 → +1`, `1 → −1`.
fn sigma<T: Real>(i: usize) -> T {
    if i == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// 2×2 matrix `⟨σ′|T|σ⟩` with rows and columns ordered `σ = +1, −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix<T> {
    entries: M2<T>,
    pub h: T,
    pub j: T,
    pub beta: T,
}

impl<T: Real> TransferMatrix<T> {
    /// Entry at row `σ′` and column `σ` (indices `0 ↔ +1`, `1 ↔ −1`).
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex<T>; 2]; 2] {
        &self.entries
    }

    /// `T₁ = [[e^{βh}, e^{−βh}], [e^{−βh}, e^{βh}]]` and `T₂ = e^{βJZ}`.
    pub fn factors(&self) -> (M2<T>, M2<T>) {
        let (bh, bj) = (self.beta * self.h, self.beta * self.j);
        let zero = real(T::zero());
        (
            [[real(bh.exp()), real((-bh).exp())], [real((-bh).exp()), real(bh.exp())]],
            [[real(bj.exp()), zero], [zero, real((-bj).exp())]],
        )
    }

    /// `Tr(Tⁿ)`.
    pub fn trace_power(&self, n: usize) -> Complex<T> {
        let p = mat_pow(&self.entries, n);
        p[0][0] + p[1][1]
    }
}

/// `⟨σ′|T|σ⟩ = exp(β(hσσ′ + Jσ))` for the classical Ising ring.
pub fn transfer_matrix<T: Real>(h: T, j: T, beta: T) -> Result<TransferMatrix<T>> {
    if !(beta >= T::zero()) || !h.is_finite() || !j.is_finite() || !beta.is_finite() {
        return Err(Error::param("beta", "couplings must be finite and beta nonnegative"));
    }
    let mut entries = [[real(T::zero()); 2]; 2];
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, e) in row.iter_mut().enumerate() {
            let (sp, s) = (sigma::<T>(r), sigma::<T>(c));
            *e = real((beta * (h * s * sp + j * s)).exp());
        }
    }
    Ok(TransferMatrix { entries, h, j, beta })
}

/// Partition function `Tr(Tⁿ)` of the `n`-spin ring.
pub fn partition_transfer<T: Real>(n: usize, h: T, j: T, beta: T) -> Result<T> {
    if n < 2 {
        return Err(Error::param("n", "ring needs at least two spins"));
    }
    Ok(transfer_matrix(h, j, beta)?.trace_power(n).re)
}

/// `(h′, C)` with `h′ = ½ ln coth(Δτh)` and `C = √(½ sinh(2Δτh))`, so that
/// `⟨σ′|e^{ΔτhX}|σ⟩ = C e^{h′σσ′}`.
pub fn suzuki_coefficients<T: Real>(h: T, dtau: T) -> Result<(T, T)> {
    if !(h > T::zero()) || !(dtau > T::zero()) {
        return Err(Error::param("h, dtau", "both must be positive"));
    }
    let x = dtau * h;
    let half = T::lit(0.5);
    let h_prime = half * (T::one() / x.tanh()).ln();
    let c = (half * (T::lit(2.0) * x).sinh()).sqrt();
    Ok((h_prime, c))
}

/// `e^{ΔτhX} e^{ΔτJZ}` in the `Z` basis.
pub fn trotter_slice<T: Real>(h: T, j: T, dtau: T) -> [[Complex<T>; 2]; 2] {
    let (ch, sh) = ((dtau * h).cosh(), (dtau * h).sinh());
    let (ep, em) = ((dtau * j).exp(), (-dtau * j).exp());
    [[real(ch * ep), real(sh * em)], [real(sh * ep), real(ch * em)]]
}

/// `Tr(e^{ΔτhX} e^{ΔτJZ})^M` with `Δτ = β/M`.
pub fn trotter_partition_single_spin<T: Real>(h: T, j: T, beta: T, slices: usize) -> Result<T> {
    if slices < 2 {
        return Err(Error::param("M", "need at least two slices"));
    }
    if !(beta >= T::zero()) {
        return Err(Error::param("beta", "must be nonnegative"));
    }
    let dtau = beta / T::from_usize(slices).expect("slice count");
    let p = mat_pow(&trotter_slice(h, j, dtau), slices);
    Ok((p[0][0] + p[1][1]).re)
}

/// `Tr e^{−βH}` for `H = −hX − JZ`: `2 cosh(β√(h² + J²))`.
pub fn single_spin_partition_exact<T: Real>(h: T, j: T, beta: T) -> T {
    T::lit(2.0) * (beta * (h * h + j * j).sqrt()).cosh()
}

/// Single spin models sampled in the `Z` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignModel {
    /// `H = −hX − JZ`; slices `e^{ΔτhX} e^{ΔτJZ}`.
    XzInZBasis,
    /// `H = −hY − JX`; slices `e^{ΔτhY} e^{ΔτJX}` with a basis inserted
    /// between the two factors.
    XyInZBasis,
}

/// Largest number of binary path variables enumerated.
pub const MAX_SIGN_VARIABLES: usize = 24;

/// Path weights grouped by phase `+1, +i, −1, −i` (index `k` holds `iᵏ`).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseHistogram<T> {
    /// Number of nonzero-weight closed paths per phase.
    pub counts: [u64; 4],
    /// Summed `|weight|` per phase.
    pub weights: [T; 4],
    /// Phase-weighted total `Σ weight`.
    pub sum: Complex<T>,
}

impl<T: Real> PhaseHistogram<T> {
    pub fn total_paths(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Fraction of `|weight|` carried by phase `+1`.
    pub fn positive_fraction(&self) -> T {
        let total = self.weights.iter().fold(T::zero(), |a, &b| a + b);
        self.weights[0] / total
    }

    /// Whether any nonzero path has a phase other than `+1`.
    pub fn has_nonpositive(&self) -> bool {
        self.counts[1..].iter().any(|&c| c > 0)
    }
}

/// Slice factors `(A, B)` with each slice equal to `A·B`.
fn model_factors<T: Real>(model: SignModel, h: T, j: T, dtau: T) -> (M2<T>, M2<T>) {
    let (ch, sh) = ((dtau * h).cosh(), (dtau * h).sinh());
    let (cj, sj) = ((dtau * j).cosh(), (dtau * j).sinh());
    let zero = real(T::zero());
    match model {
        SignModel::XzInZBasis => (
            [[real(ch), real(sh)], [real(sh), real(ch)]],
            [[real((dtau * j).exp()), zero], [zero, real((-dtau * j).exp())]],
        ),
        // ⟨1|Y|0⟩ = i, ⟨0|Y|1⟩ = −i.
        SignModel::XyInZBasis => (
            [[real(ch), Complex::new(T::zero(), -sh)], [Complex::new(T::zero(), sh), real(ch)]],
            [[real(cj), real(sj)], [real(sj), real(cj)]],
        ),
    }
}

/// Enumerates every closed `Z`-basis path of the sliced single-spin
/// partition function and bins its weight by phase.
pub fn sign_statistics<T: Real>(model: SignModel, h: T, j: T, beta: T, slices: usize) -> Result<PhaseHistogram<T>> {
    if slices < 1 {
        return Err(Error::param("M", "need at least one slice"));
    }
    if !(beta >= T::zero()) {
        return Err(Error::param("beta", "must be nonnegative"));
    }
    let dtau = beta / T::from_usize(slices).expect("slice count");
    let (a, b) = model_factors(model, h, j, dtau);
    let (vars, factors): (usize, Vec<&M2<T>>) = match model {
        SignModel::XzInZBasis => (slices, vec![&a]),
        SignModel::XyInZBasis => (2 * slices, vec![&b, &a]),
    };
    if vars > MAX_SIGN_VARIABLES {
        return Err(Error::param(
            "M",
            format!("{vars} path variables exceed the 2^{MAX_SIGN_VARIABLES} enumeration budget"),
        ));
    }
    let mut hist = PhaseHistogram {
        counts: [0; 4],
        weights: [T::zero(); 4],
        sum: Complex::new(T::zero(), T::zero()),
    };
    let quarter = T::FRAC_PI_2();
    for bits in 0u64..1 << vars {
        let q = |k: usize| ((bits >> (k % vars)) & 1) as usize;
        let mut w = real(T::one());
        for k in 0..vars {
            let (from, to) = (q(k), q(k + 1));
            w *= match model {
                // Variable k is the spin at slice k; the diagonal Z factor acts first.
                SignModel::XzInZBasis => factors[0][to][from] * b[from][from],
                // Even k: X factor from slice spin to the inserted one; odd k: Y factor.
                SignModel::XyInZBasis => factors[k % 2][to][from],
            };
        }
        if w.norm_sqr() == T::zero() {
            continue;
        }
        let k = (w.arg() / quarter).round().to_i64().unwrap_or(0).rem_euclid(4) as usize;
        hist.counts[k] += 1;
        hist.weights[k] += w.norm();
        hist.sum += w;
    }
    Ok(hist)
}

/// `Tr(A·B)^M` for the model's slice, the trace oracle for [`sign_statistics`].
pub fn sign_model_trace<T: Real>(model: SignModel, h: T, j: T, beta: T, slices: usize) -> Result<Complex<T>> {
    if slices < 1 {
        return Err(Error::param("M", "need at least one slice"));
    }
    let dtau = beta / T::from_usize(slices).expect("slice count");
    let (a, b) = model_factors(model, h, j, dtau);
    let p = mat_pow(&mat_mul(&a, &b), slices);
    Ok(p[0][0] + p[1][1])
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn transfer_entries() {
        let t = transfer_matrix(1.0f64, 0.5, 1.0).unwrap();
        let e = |x: f64| x.exp();
        assert_eq!(t.get(0, 0).re, e(1.5));
        assert_eq!(t.get(0, 1).re, e(-1.5));
        assert_eq!(t.get(1, 0).re, e(-0.5));
        assert_eq!(t.get(1, 1).re, e(0.5));
        let t0 = transfer_matrix(0.7f64, -0.3, 0.0).unwrap();
        assert!(t0.entries().iter().flatten().all(|&x| x == Complex::new(1.0, 0.0)));
        assert!(transfer_matrix(1.0f64, 0.0, -1.0).is_err());
    }

    #[test]
    fn factorization() {
        for (h, j, b) in [(1.0f64, 0.5, 1.0), (-0.4, 1.3, 0.7), (2.0, -2.0, 0.25)] {
            let t = transfer_matrix(h, j, b).unwrap();
            let (t1, t2) = t.factors();
            let p = mat_mul(&t1, &t2);
            for r in 0..2 {
                for c in 0..2 {
                    assert!((p[r][c] - t.get(r, c)).norm() <= 1e-14 * t.get(r, c).norm());
                }
            }
        }
    }

    fn brute_ring(n: usize, h: f64, j: f64, beta: f64) -> f64 {
        (0u32..1 << n)
            .map(|c| {
                let s = |l: usize| if c >> (l % n) & 1 == 0 { 1.0 } else { -1.0 };
                (beta * (0..n).map(|l| h * s(l) * s(l + 1) + j * s(l)).sum::<f64>()).exp()
            })
            .sum()
    }

    #[test]
    fn partition_matches_configuration_sum() {
        assert_eq!(partition_transfer(5, 1.0f64, 1.0, 0.0).unwrap(), 32.0);
        for n in 2..=12 {
            for (h, j, b) in [(1.0, 0.5, 1.0), (-0.8, 0.2, 0.6), (0.3, -1.1, 1.7)] {
                let z = partition_transfer(n, h, j, b).unwrap();
                assert!(close(z, brute_ring(n, h, j, b), 1e-12), "n={n}");
            }
        }
        let z = partition_transfer(12, 0.7f64, 0.0, 2.0).unwrap();
        let want = (2.0 * 1.4f64.cosh()).powi(12) + (2.0 * 1.4f64.sinh()).powi(12);
        assert!(close(z, want, 1e-12));
    }

    #[test]
    fn suzuki_reconstruction() {
        for x in [0.01f64, 0.5, 1.0, 3.0] {
            let (hp, c) = suzuki_coefficients(1.0, x).unwrap();
            assert!(close(c * hp.exp(), x.cosh(), 1e-12));
            assert!(close(c * (-hp).exp(), x.sinh(), 1e-12));
        }
        assert!(suzuki_coefficients(20.0f64, 1.0).unwrap().0 < 1e-15);
        assert!(suzuki_coefficients(1e-8f64, 1.0).unwrap().0 > 9.0);
        assert!(suzuki_coefficients(0.0f64, 1.0).is_err());
    }

    #[test]
    fn trotter_commuting_and_limit() {
        for m in [2, 3, 10] {
            let z = trotter_partition_single_spin(0.8f64, 0.0, 1.3, m).unwrap();
            assert!(close(z, 2.0 * (1.3f64 * 0.8).cosh(), 1e-13));
        }
        let exact = single_spin_partition_exact(1.0f64, 1.0, 1.0);
        assert!(close(exact, 2.0 * 2f64.sqrt().cosh(), 1e-15));
        let z = trotter_partition_single_spin(1.0f64, 1.0, 1.0, 4096).unwrap();
        assert!((z - exact).abs() < 1e-6);
    }

    #[test]
    fn slice_weights_are_suzuki_form() {
        let (h, j, dt) = (0.9f64, 0.4, 0.2);
        let (hp, c) = suzuki_coefficients(h, dt).unwrap();
        let s = trotter_slice(h, j, dt);
        for r in 0..2 {
            for col in 0..2 {
                let (sp, sg) = (sigma::<f64>(r), sigma::<f64>(col));
                let w = c * (hp * sp * sg).exp() * (dt * j * sg).exp();
                assert!(close(s[r][col].re, w, 1e-13));
            }
        }
    }

    #[test]
    fn xz_paths_are_positive() {
        for m in 1..=12 {
            let hist = sign_statistics(SignModel::XzInZBasis, 0.7f64, -0.4, 1.5, m).unwrap();
            assert!(!hist.has_nonpositive());
            let tr = sign_model_trace(SignModel::XzInZBasis, 0.7f64, -0.4, 1.5, m).unwrap();
            assert!((hist.sum - tr).norm() < 1e-12 * tr.norm());
        }
    }

    #[test]
    fn xy_paths_carry_phases() {
        let hist = sign_statistics(SignModel::XyInZBasis, 1.0f64, 1.0, 1.0, 2).unwrap();
        assert!(hist.has_nonpositive());
        for m in 1..=8 {
            let hist = sign_statistics(SignModel::XyInZBasis, 1.0f64, 0.6, 1.2, m).unwrap();
            let tr = sign_model_trace(SignModel::XyInZBasis, 1.0f64, 0.6, 1.2, m).unwrap();
            assert!((hist.sum - tr).norm() < 1e-12 * tr.norm());
        }
        assert!(sign_statistics(SignModel::XyInZBasis, 1.0f64, 1.0, 1.0, 13).is_err());
    }
}
