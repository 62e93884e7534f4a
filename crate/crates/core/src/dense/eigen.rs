//! Hermitian eigensolver: Householder reduction to tridiagonal form followed
//! by implicit QL with Wilkinson shifts. Real symmetric input stays in real
//! arithmetic throughout.

use std::ops::Neg;

use num_complex::Complex;
use num_traits::NumAssign;

use super::{Operator, State};
use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: Operator<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Column `k` as a state.
    pub fn vector(&self, k: usize) -> State<T> {
        let d = self.vectors.dim();
        State::raw((0..d).map(|r| self.vectors.get(r, k)).collect())
    }

    /// `e^{-itH} ψ` in `O(dim²)` using the stored decomposition.
    pub fn evolve(&self, t: T, psi: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.vectors.dim();
        let v = &self.vectors.data;
        let mut coef = vec![Complex::new(T::zero(), T::zero()); d];
        for r in 0..d {
            let row = &v[r * d..(r + 1) * d];
            let p = psi[r];
            for (c, x) in coef.iter_mut().zip(row) {
                *c += x.conj() * p;
            }
        }
        for (c, &lam) in coef.iter_mut().zip(&self.values) {
            *c *= cis(-t * lam);
        }
        (0..d)
            .map(|r| {
                v[r * d..(r + 1) * d]
                    .iter()
                    .zip(&coef)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (x, c)| acc + x * c)
            })
            .collect()
    }

    /// `V f(Λ) V†` for a function of the eigenvalues.
    pub fn spectral_map(&self, f: impl Fn(T) -> Complex<T>) -> Operator<T> {
        let d = self.vectors.dim();
        let v = &self.vectors.data;
        let fl: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = vec![Complex::new(T::zero(), T::zero()); d * d];
        let mut scaled = vec![Complex::new(T::zero(), T::zero()); d];
        for r in 0..d {
            for k in 0..d {
                scaled[k] = v[r * d + k] * fl[k];
            }
            let orow = &mut out[r * d..(r + 1) * d];
            for (c, o) in orow.iter_mut().enumerate() {
                let vc = &v[c * d..(c + 1) * d];
                *o = scaled
                    .iter()
                    .zip(vc)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (s, x)| acc + s * x.conj());
            }
        }
        Operator {
            dim: d,
            data: out,
            unitary: false,
            hermitian: false,
        }
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(h: &Operator<T>) -> Result<HermitianEigen<T>> {
    check_hermitian(h)?;
    let n = h.dim();
    if h.is_real() {
        let a: Vec<T> = h.data.iter().map(|z| z.re).collect();
        let (values, q, w) = decompose(a, n, true)?;
        let vectors = combine_vectors(&q, &w, n);
        Ok(HermitianEigen { values, vectors })
    } else {
        let (values, q, w) = decompose(h.data.clone(), n, true)?;
        let vectors = combine_vectors(&q, &w, n);
        Ok(HermitianEigen { values, vectors })
    }
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues<T: Real>(h: &Operator<T>) -> Result<Vec<T>> {
    check_hermitian(h)?;
    let n = h.dim();
    if h.is_real() {
        let a: Vec<T> = h.data.iter().map(|z| z.re).collect();
        Ok(decompose(a, n, false)?.0)
    } else {
        Ok(decompose(h.data.clone(), n, false)?.0)
    }
}

/// `e^{-itH}` through the eigendecomposition of `H`.
pub fn matrix_exponential_hermitian<T: Real>(h: &Operator<T>, t: T) -> Result<Operator<T>> {
    if h.dim() > 1 << super::MAX_DENSE_QUBITS {
        return Err(Error::param("h", "dimension exceeds 2^12"));
    }
    if t == T::zero() {
        check_hermitian(h)?;
        return Ok(Operator::identity(h.dim()));
    }
    let eig = hermitian_eigen(h)?;
    let mut u = eig.spectral_map(|l| cis(-t * l));
    u.unitary = true;
    Ok(u)
}

fn check_hermitian<T: Real>(h: &Operator<T>) -> Result<()> {
    let dev = h.hermiticity_deviation();
    if !(dev <= T::check_tol()) {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Scalar the tridiagonal reduction runs over: `T` for real symmetric input,
/// `Complex<T>` otherwise.
trait Field<T: Real>: Copy + NumAssign + Neg<Output = Self> {
    fn conj(self) -> Self;
    fn abs2(self) -> T;
    fn real(self) -> T;
    fn scale(self, s: T) -> Self;
    fn into_complex(self) -> Complex<T>;
}

impl<T: Real> Field<T> for T {
    fn conj(self) -> Self {
        self
    }
    fn abs2(self) -> T {
        self * self
    }
    fn real(self) -> T {
        self
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn into_complex(self) -> Complex<T> {
        Complex::new(self, T::zero())
    }
}

impl<T: Real> Field<T> for Complex<T> {
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn abs2(self) -> T {
        self.norm_sqr()
    }
    fn real(self) -> T {
        self.re
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn into_complex(self) -> Complex<T> {
        self
    }
}

/// Returns ascending eigenvalues, the unitary `Q·D` taking the real
/// tridiagonal form back to the input basis, and the real eigenvectors `W`
/// of that tridiagonal form (both row-major; empty when not requested).
#[allow(clippy::type_complexity)]
fn decompose<T: Real, F: Field<T>>(
    mut a: Vec<F>,
    n: usize,
    want_vectors: bool,
) -> Result<(Vec<T>, Vec<F>, Vec<T>)> {
    let zero = F::zero();
    let mut q = Vec::new();
    if want_vectors {
        q = vec![zero; n * n];
        for i in 0..n {
            q[i * n + i] = F::one();
        }
    }

    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let m = k + 1;
        // Column k below the diagonal, read from row k by hermiticity.
        let mut tail = T::zero();
        for j in m + 1..n {
            tail += a[k * n + j].abs2();
        }
        let x0 = a[m * n + k];
        if tail == T::zero() {
            continue;
        }
        let alpha = (tail + x0.abs2()).sqrt();
        let x0abs = x0.abs2().sqrt();
        let phase = if x0abs > T::zero() {
            x0.scale(T::one() / x0abs)
        } else {
            F::one()
        };
        for j in m..n {
            v[j] = a[j * n + k];
        }
        v[m] += phase.scale(alpha);
        let vnorm2 = tail + (x0abs + alpha) * (x0abs + alpha);
        let tau = T::lit(2.0) / vnorm2;

        // p = τ B v over the trailing block.
        for i in m..n {
            let row = &a[i * n + m..i * n + n];
            let mut s = zero;
            for (b, vj) in row.iter().zip(&v[m..n]) {
                s += *b * *vj;
            }
            p[i] = s.scale(tau);
        }
        let mut vp = zero;
        for i in m..n {
            vp += v[i].conj() * p[i];
        }
        let kk = vp.scale(tau / T::lit(2.0));
        for i in m..n {
            p[i] -= kk * v[i];
        }
        // B ← B − v w† − w v†
        for i in m..n {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[i * n + m..i * n + n];
            for (j, b) in row.iter_mut().enumerate() {
                let jj = j + m;
                *b -= vi * p[jj].conj() + wi * v[jj].conj();
            }
        }
        let sub = -phase.scale(alpha);
        a[m * n + k] = sub;
        a[k * n + m] = sub.conj();
        for j in m + 1..n {
            a[j * n + k] = zero;
            a[k * n + j] = zero;
        }
        if want_vectors {
            // Q ← Q (I − τ v v†)
            for r in 0..n {
                let row = &mut q[r * n..(r + 1) * n];
                let mut s = zero;
                for j in m..n {
                    s += row[j] * v[j];
                }
                let s = s.scale(tau);
                for j in m..n {
                    row[j] -= s * v[j].conj();
                }
            }
        }
    }

    // Real tridiagonal form via diagonal phases.
    let mut d: Vec<T> = (0..n).map(|i| a[i * n + i].real()).collect();
    let mut e = vec![T::zero(); n];
    let mut ph = vec![F::one(); n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1) * n + i];
        let mag = sub.abs2().sqrt();
        e[i] = mag;
        ph[i + 1] = if mag > T::zero() {
            ph[i] * sub.scale(T::one() / mag)
        } else {
            ph[i]
        };
    }
    if want_vectors {
        for r in 0..n {
            for c in 0..n {
                q[r * n + c] *= ph[c];
            }
        }
    }

    let mut w = Vec::new();
    if want_vectors {
        w = vec![T::zero(); n * n];
        for i in 0..n {
            w[i * n + i] = T::one();
        }
    }
    tql(&mut d, &mut e, want_vectors.then_some(&mut w[..]), n)?;

    // Ascending order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| d[i]).collect();
    if want_vectors {
        let mut ws = vec![T::zero(); n * n];
        for r in 0..n {
            for (c, &o) in order.iter().enumerate() {
                ws[r * n + c] = w[r * n + o];
            }
        }
        w = ws;
    }
    Ok((values, q, w))
}

/// Implicit QL on a real symmetric tridiagonal matrix; `e[i]` couples `i` and
/// `i + 1`. Rotations are accumulated into the columns of `z` when given.
fn tql<T: Real>(d: &mut [T], e: &mut [T], mut z: Option<&mut [T]>, n: usize) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    let two = T::lit(2.0);
    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd || e[m].abs() < T::min_positive_value() {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    if d.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure);
    }
    Ok(())
}

/// `V = (Q·D) · W` as a complex operator.
fn combine_vectors<T: Real, F: Field<T>>(qd: &[F], w: &[T], n: usize) -> Operator<T> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for r in 0..n {
        let orow = &mut out[r * n..(r + 1) * n];
        for k in 0..n {
            let a = qd[r * n + k];
            if a == F::zero() {
                continue;
            }
            let a = a.into_complex();
            for (o, &wk) in orow.iter_mut().zip(&w[k * n..(k + 1) * n]) {
                *o += a * wk;
            }
        }
    }
    Operator {
        dim: n,
        data: out,
        unitary: true,
        hermitian: false,
    }
}
