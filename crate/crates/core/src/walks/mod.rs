//! Classical and quantum random walks.
//!
//! Position conventions: the discrete walks live on `ℤ` centred at the origin;
//! the continuous-time walk lives on the `N`-cycle with offsets `d` taken
//! modulo `N`.

mod checkerboard;
mod classical;
mod combinatorics;
mod ctqrw;
mod dtqrw;
mod graph;

pub use checkerboard::{checkerboard_counts, checkerboard_kernel, StartDirection, MAX_CHECKERBOARD_STEPS};
pub use classical::{classical_rw_distribution, gaussian_limit_density, ClassicalDistribution, MAX_CLASSICAL_STEPS};
pub use combinatorics::{binomial, compositions};
pub use ctqrw::{bessel_j, ctqrw_bessel, ctqrw_exact, grover_walk, MAX_RING};
pub use dtqrw::{
    combinatorial_total, dtqrw_combinatorial, dtqrw_combinatorial_from, dtqrw_run, dtqrw_step, Coin, WalkerState,
    MAX_COMBINATORIAL_STEPS,
};
pub use graph::{Graph, GraphKind};
