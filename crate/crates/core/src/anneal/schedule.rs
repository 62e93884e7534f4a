use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};

/// Number of segments in a tabulated schedule (`2¹⁰ + 1` samples).
pub const TABLE_SEGMENTS: usize = 1024;

/// Number of λ-steps used when integrating `dt/dλ = 1/(ε g²)`.
const QUADRATURE_STEPS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    Linear,
    LocalAdiabatic,
    Tabulated,
}

/// Interpolation `λ(t)` on `[0, T]`.
///
/// Tabulated schedules hold uniform samples in `t` and interpolate linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T> {
    kind: ScheduleKind,
    total_time: T,
    samples: Vec<T>,
}

impl<T: Real> Schedule<T> {
    /// `λ(t) = t/T`.
    pub fn linear(total_time: T) -> Result<Self> {
        check_time(total_time)?;
        Ok(Self {
            kind: ScheduleKind::Linear,
            total_time,
            samples: Vec::new(),
        })
    }

    /// Uniform samples `λ(kT/(len−1))`; must be nondecreasing and inside
    /// `[0, 1]`. Endpoints are not forced, so constant schedules are allowed.
    pub fn tabulated(total_time: T, samples: Vec<T>) -> Result<Self> {
        check_time(total_time)?;
        if samples.len() < 2 {
            return Err(Error::param("samples", "need at least two samples"));
        }
        let tol = T::lit(1e-12);
        for w in samples.windows(2) {
            if w[1] < w[0] - tol {
                return Err(Error::param("samples", "schedule must be nondecreasing"));
            }
        }
        if samples.iter().any(|&x| !(x >= -tol && x <= T::one() + tol)) {
            return Err(Error::param("samples", "values must lie in [0, 1]"));
        }
        Ok(Self {
            kind: ScheduleKind::Tabulated,
            total_time,
            samples,
        })
    }

    /// Tabulates `f` on `TABLE_SEGMENTS + 1` uniform points.
    pub fn from_fn(total_time: T, f: impl Fn(T) -> T) -> Result<Self> {
        let samples = (0..=TABLE_SEGMENTS)
            .map(|k| f(total_time * from_usize::<T>(k) / from_usize::<T>(TABLE_SEGMENTS)))
            .collect();
        Self::tabulated(total_time, samples)
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn total_time(&self) -> T {
        self.total_time
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    /// Number of linear pieces; 1 for the linear schedule.
    pub fn segments(&self) -> usize {
        self.samples.len().saturating_sub(1).max(1)
    }

    /// `λ(t)`, clamped to the schedule's domain.
    pub fn lambda(&self, t: T) -> T {
        let tt = self.total_time;
        let t = t.max(T::zero()).min(tt);
        match self.kind {
            ScheduleKind::Linear => t / tt,
            _ => {
                let segs = self.samples.len() - 1;
                let x = t / tt * from_usize::<T>(segs);
                let i = x.floor().to_usize().unwrap_or(0).min(segs - 1);
                let f = x - from_usize::<T>(i);
                let (a, b) = (self.samples[i], self.samples[i + 1]);
                a + (b - a) * f
            }
        }
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::param("T", "total time must be positive and finite"));
    }
    Ok(())
}

fn check_grover(n_items: usize) -> Result<()> {
    if n_items < 2 {
        return Err(Error::param("N", "need at least two items"));
    }
    Ok(())
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::param("eps", "must lie strictly between 0 and 1"));
    }
    Ok(())
}

/// `g(λ) = √(1 − 4((N−1)/N) λ(1−λ))`, the gap of the interpolated Grover
/// Hamiltonian.
pub fn grover_gap<T: Real>(lambda: T, n_items: usize) -> Result<T> {
    check_grover(n_items)?;
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::param("lambda", "must lie in [0, 1]"));
    }
    Ok(gap_sq(lambda, n_items).sqrt())
}

fn gap_sq<T: Real>(lambda: T, n_items: usize) -> T {
    let n = from_usize::<T>(n_items);
    T::one() - T::lit(4.0) * ((n - T::one()) / n) * lambda * (T::one() - lambda)
}

/// `(π / 2ε) √N`, the large-`N` running time of the local adiabatic schedule.
pub fn optimal_time_estimate<T: Real>(n_items: usize, eps: T) -> Result<T> {
    check_grover(n_items)?;
    check_eps(eps)?;
    Ok(T::PI() / (T::lit(2.0) * eps) * from_usize::<T>(n_items).sqrt())
}

/// Schedule solving `dλ/dt = ε g²(λ)`, `λ(0) = 0`.
///
/// `t(λ) = ∫₀^λ dλ'/(ε g²)` is integrated with Simpson's rule on a fine
/// λ-grid and then inverted onto uniform `t` samples. The achieved total time
/// is `t(1)`.
pub fn local_adiabatic_schedule<T: Real>(n_items: usize, eps: T) -> Result<Schedule<T>> {
    check_grover(n_items)?;
    check_eps(eps)?;
    let steps = QUADRATURE_STEPS;
    let h = T::one() / from_usize::<T>(steps);
    let rate = |lam: T| -> Result<T> {
        let g2 = gap_sq(lam, n_items);
        let r = T::one() / (eps * g2);
        if !(g2 > T::zero()) || !r.is_finite() {
            return Err(Error::StepFailure {
                lambda: lam.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(r)
    };
    let mut t_of = Vec::with_capacity(steps + 1);
    t_of.push(T::zero());
    let mut acc = T::zero();
    let mut lo = rate(T::zero())?;
    for i in 0..steps {
        let a = from_usize::<T>(i) * h;
        let mid = rate(a + h / T::lit(2.0))?;
        let hi = rate(a + h)?;
        acc += h / T::lit(6.0) * (lo + T::lit(4.0) * mid + hi);
        if !acc.is_finite() {
            return Err(Error::StepFailure {
                lambda: (a + h).to_f64().unwrap_or(f64::NAN),
            });
        }
        t_of.push(acc);
        lo = hi;
    }
    let total = acc;

    // Invert t(λ) onto the uniform t-grid; t(λ) is strictly increasing.
    let mut samples = Vec::with_capacity(TABLE_SEGMENTS + 1);
    let mut j = 0;
    for k in 0..=TABLE_SEGMENTS {
        let t = total * from_usize::<T>(k) / from_usize::<T>(TABLE_SEGMENTS);
        while j + 1 < steps && t_of[j + 1] < t {
            j += 1;
        }
        let (t0, t1) = (t_of[j], t_of[j + 1]);
        let f = if t1 > t0 { ((t - t0) / (t1 - t0)).min(T::one()).max(T::zero()) } else { T::zero() };
        samples.push((from_usize::<T>(j) + f) * h);
    }
    samples[0] = T::zero();
    samples[TABLE_SEGMENTS] = T::one();
    Ok(Schedule {
        kind: ScheduleKind::LocalAdiabatic,
        total_time: total,
        samples,
    })
}

/// Global adiabatic bound for the linear schedule: the maximum over a λ-grid
/// of `‖dH/dλ‖ / (ε g²)` with `‖dH/dλ‖ ≤ 1`, which is `N/ε`.
pub fn linear_schedule_time_bound<T: Real>(n_items: usize, eps: T) -> Result<T> {
    check_grover(n_items)?;
    check_eps(eps)?;
    let grid = 1000;
    let mut worst = T::zero();
    for i in 0..=grid {
        let lam = from_usize::<T>(i) / from_usize::<T>(grid);
        worst = worst.max(T::one() / (eps * gap_sq(lam, n_items)));
    }
    Ok(worst)
}

/// QAOA angles from a first-order product formula.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaAngles<T> {
    pub beta: Vec<T>,
    pub gamma: Vec<T>,
}

impl<T: Real> QaoaAngles<T> {
    pub fn new(beta: Vec<T>, gamma: Vec<T>) -> Result<Self> {
        if beta.len() != gamma.len() {
            return Err(Error::DimensionMismatch {
                expected: beta.len(),
                found: gamma.len(),
            });
        }
        Ok(Self { beta, gamma })
    }

    pub fn layers(&self) -> usize {
        self.beta.len()
    }

    pub fn total(&self) -> T {
        self.beta.iter().chain(&self.gamma).fold(T::zero(), |a, &b| a + b)
    }
}

/// `β⁽ˡ⁾ = Δ(1 − λ(lΔ))`, `γ⁽ˡ⁾ = Δ λ(lΔ)`, `Δ = T/M`, `l = 1..M`.
pub fn trotterize<T: Real>(schedule: &Schedule<T>, m: usize) -> Result<QaoaAngles<T>> {
    if m == 0 {
        return Err(Error::param("M", "need at least one layer"));
    }
    let delta = schedule.total_time() / from_usize::<T>(m);
    let mut beta = Vec::with_capacity(m);
    let mut gamma = Vec::with_capacity(m);
    for l in 1..=m {
        let lam = if l == m {
            schedule.lambda(schedule.total_time())
        } else {
            schedule.lambda(delta * from_usize::<T>(l))
        };
        beta.push(delta * (T::one() - lam));
        gamma.push(delta * lam);
    }
    Ok(QaoaAngles { beta, gamma })
}
