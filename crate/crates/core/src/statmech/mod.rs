//! Transfer matrices, Suzuki-Trotter slicing, the sign problem, the Euclidean
//! action of the transverse-field Ising chain and the free-particle
//! propagator.
//!
//! Spin conventions: basis index 0 is `σ = +1`, index 1 is `σ = −1`.

mod action;
mod propagator;
mod transfer;

pub use action::{tfim_euclidean_action, EuclideanAction, SpinConfiguration};
pub use propagator::{
    discrete_action, free_propagator_discretized, free_propagator_exact, minimal_action_path, Grid, MAX_ACTION_SCAN,
};
pub use transfer::{
    partition_transfer, sign_model_trace, sign_statistics, single_spin_partition_exact, suzuki_coefficients,
    transfer_matrix, trotter_partition_single_spin, trotter_slice, PhaseHistogram, SignModel, TransferMatrix,
    MAX_SIGN_VARIABLES,
};
