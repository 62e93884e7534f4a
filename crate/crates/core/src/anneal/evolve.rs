use num_complex::Complex;

use super::hamiltonians::{HamiltonianPair, MixerSign, Structure};
use super::schedule::{grover_gap, QaoaAngles, Schedule, ScheduleKind};
use crate::dense::{hermitian_eigen, HermitianEigen, State};
use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, Real};

/// Largest tolerated `|‖ψ‖² − 1|` at the end of an integration.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// `e^{-iθK}` or `e^{-iθV}` applied through structure or a cached eigenbasis.
enum Propagator<'a, T> {
    Grover,
    Ring { n: usize, sign: T },
    Diagonal(&'a [T]),
    Eigen(HermitianEigen<T>),
}

impl<T: Real> Propagator<'_, T> {
    fn apply(&self, theta: T, psi: &mut Vec<Complex<T>>) {
        match self {
            Propagator::Grover => {
                let m = psi.iter().fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / from_usize::<T>(psi.len());
                let ph = cis(-theta);
                for a in psi.iter_mut() {
                    *a = (*a - m) * ph + m;
                }
            }
            Propagator::Ring { n, sign } => {
                let (c, s) = (theta.cos(), -(theta * *sign).sin());
                let mix = Complex::new(T::zero(), s);
                for j in 0..*n {
                    let bit = 1 << j;
                    for z in 0..psi.len() {
                        if z & bit == 0 {
                            let (a, b) = (psi[z], psi[z | bit]);
                            psi[z] = a * c + b * mix;
                            psi[z | bit] = b * c + a * mix;
                        }
                    }
                }
            }
            Propagator::Diagonal(d) => {
                for (a, &v) in psi.iter_mut().zip(d.iter()) {
                    *a *= cis(-theta * v);
                }
            }
            Propagator::Eigen(e) => {
                *psi = e.evolve(theta, psi);
            }
        }
    }
}

fn mixer_propagator<T: Real>(pair: &HamiltonianPair<T>) -> Result<Propagator<'_, T>> {
    Ok(match pair.structure {
        Structure::Grover { .. } => Propagator::Grover,
        Structure::Ring { n, sign } => Propagator::Ring {
            n,
            sign: if sign == MixerSign::Negative { -T::one() } else { T::one() },
        },
        Structure::General => Propagator::Eigen(hermitian_eigen(pair.mixer())?),
    })
}

fn problem_propagator<T: Real>(pair: &HamiltonianPair<T>) -> Result<Propagator<'_, T>> {
    Ok(match pair.problem_diagonal() {
        Some(d) => Propagator::Diagonal(d),
        None => Propagator::Eigen(hermitian_eigen(pair.problem())?),
    })
}

fn check_dim<T: Real>(pair: &HamiltonianPair<T>, state: &State<T>) -> Result<()> {
    if pair.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// `Π_l U_K(β⁽ˡ⁾) U_V(γ⁽ˡ⁾) |initial⟩`, layer 1 acting first.
pub fn qaoa_evolve<T: Real>(angles: &QaoaAngles<T>, pair: &HamiltonianPair<T>, initial: &State<T>) -> Result<State<T>> {
    check_dim(pair, initial)?;
    let uk = mixer_propagator(pair)?;
    let uv = problem_propagator(pair)?;
    let mut psi = initial.amplitudes().to_vec();
    for (&b, &g) in angles.beta.iter().zip(&angles.gamma) {
        uv.apply(g, &mut psi);
        uk.apply(b, &mut psi);
    }
    Ok(State::raw(psi))
}

/// `⟨ψ(β, γ)|V|ψ(β, γ)⟩`.
pub fn qaoa_objective<T: Real>(angles: &QaoaAngles<T>, pair: &HamiltonianPair<T>, initial: &State<T>) -> Result<T> {
    let psi = qaoa_evolve(angles, pair, initial)?;
    let v = pair.apply_problem(psi.amplitudes());
    Ok(psi
        .amplitudes()
        .iter()
        .zip(&v)
        .fold(T::zero(), |acc, (a, b)| acc + (a.conj() * b).re))
}

/// Fixed-step fourth-order Runge-Kutta integration of
/// `i dψ/dt = ((1 − λ(t))K + λ(t)V) ψ` over the schedule.
///
/// For tabulated schedules `steps` is rounded up to a multiple of the table's
/// segment count so that no step straddles a kink of the interpolant.
pub fn schedule_evolve<T: Real>(
    schedule: &Schedule<T>,
    pair: &HamiltonianPair<T>,
    initial: &State<T>,
    steps: usize,
) -> Result<State<T>> {
    check_dim(pair, initial)?;
    if steps == 0 {
        return Err(Error::param("steps", "need at least one step"));
    }
    let steps = match schedule.kind() {
        ScheduleKind::Linear => steps,
        _ => {
            let s = schedule.segments();
            steps.div_ceil(s) * s
        }
    };
    let dt = schedule.total_time() / from_usize::<T>(steps);
    let half = dt / T::lit(2.0);
    let minus_i = Complex::new(T::zero(), -T::one());
    let f = |t: T, psi: &[Complex<T>]| -> Vec<Complex<T>> {
        pair.apply(schedule.lambda(t), psi).into_iter().map(|x| x * minus_i).collect()
    };
    let axpy = |y: &[Complex<T>], a: T, x: &[Complex<T>]| -> Vec<Complex<T>> {
        y.iter().zip(x).map(|(y, x)| y + x * a).collect()
    };
    let mut psi = initial.amplitudes().to_vec();
    for s in 0..steps {
        let t = dt * from_usize::<T>(s);
        let k1 = f(t, &psi);
        let k2 = f(t + half, &axpy(&psi, half, &k1));
        let k3 = f(t + half, &axpy(&psi, half, &k2));
        let k4 = f(t + dt, &axpy(&psi, dt, &k3));
        let sixth = dt / T::lit(6.0);
        for i in 0..psi.len() {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * T::lit(2.0) + k4[i]) * sixth;
        }
    }
    let out = State::raw(psi);
    let drift = (out.norm_sqr() - initial.norm_sqr()).abs();
    if !(drift <= T::lit(NORM_DRIFT_LIMIT)) {
        return Err(Error::NormDrift {
            drift: drift.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(out)
}

/// `(t, λ(t), g(λ(t)))` on `points` uniform times for the Grover gap.
pub fn protocol_curve<T: Real>(schedule: &Schedule<T>, n_items: usize, points: usize) -> Result<Vec<(T, T, T)>> {
    if points < 2 {
        return Err(Error::param("points", "need at least two points"));
    }
    (0..points)
        .map(|k| {
            let t = schedule.total_time() * from_usize::<T>(k) / from_usize::<T>(points - 1);
            let lam = schedule.lambda(t);
            Ok((t, lam, grover_gap(lam, n_items)?))
        })
        .collect()
}
