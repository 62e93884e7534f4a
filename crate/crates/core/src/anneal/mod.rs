//! Interpolated Hamiltonians `(1 − λ)K + λV`, the Grover gap, linear and
//! local adiabatic schedules, QAOA angles from Trotterization and
//! Schrödinger-equation integration.

mod evolve;
mod hamiltonians;
mod schedule;

pub use evolve::{protocol_curve, qaoa_evolve, qaoa_objective, schedule_evolve, NORM_DRIFT_LIMIT};
pub use hamiltonians::{
    grover_pair, interpolated_hamiltonian, ring_hamiltonians, spectral_gap, HamiltonianPair, MixerSign,
};
pub use schedule::{
    grover_gap, linear_schedule_time_bound, local_adiabatic_schedule, optimal_time_estimate, trotterize,
    QaoaAngles, Schedule, ScheduleKind, TABLE_SEGMENTS,
};
