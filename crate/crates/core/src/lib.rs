#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Sum-over-path (Lagrangian) numerics for quantum computation.
//!
//! The crate evaluates circuit propagators by enumerating computational-basis
//! paths, traces Deutsch and Grover interference, analyses adiabatic and QAOA
//! schedules, computes quantum-walk kernels and carries the transfer-matrix /
//! Suzuki-Trotter machinery for Ising path integrals. Every closed form has a
//! dense state-vector counterpart in [`dense`] that serves as ground truth.
//!
//! All numerical code is generic over a [`Real`] scalar (`f32` or `f64`); the
//! aliases below fix the double-precision types used by the CLI and tests.
//! Exact counting (classical random walk tables, lattice path counts) uses
//! arbitrary-precision integers and rationals.
//!
//! Qubit convention: bit `j` counted from the most significant end of a basis
//! index `z` is qubit `j`, so `|z⟩ = |q₀q₁…q_{n-1}⟩` reads left to right.

pub mod algorithms;
pub mod anneal;
pub mod dense;
mod error;
pub mod paths;
mod scalar;
pub mod statmech;
pub mod walks;

pub use error::{Error, Result};
pub use scalar::{cis, Real};

pub use num_complex::Complex;

/// Double-precision complex amplitude.
pub type Amplitude = Complex<f64>;
pub type QuantumState = dense::State<f64>;
pub type DenseOperator = dense::Operator<f64>;
pub type Path = paths::Path<f64>;
pub type Schedule = anneal::Schedule<f64>;
pub type HamiltonianPair = anneal::HamiltonianPair<f64>;
pub type AmplitudeProfile = algorithms::AmplitudeProfile<f64>;
pub type WalkerState = walks::WalkerState<f64>;
pub type TransferMatrix = statmech::TransferMatrix<f64>;
pub type EuclideanAction = statmech::EuclideanAction<f64>;
