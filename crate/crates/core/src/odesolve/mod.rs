//! Scalar surrogate integration, time reparameterization and the
//! constructive delayed iteration.
//!
//! Solvers are deterministic pure functions of their inputs and
//! configuration; distinct scenarios can run concurrently, while a single
//! integration is a sequential state recurrence.

mod increment;
mod peano;
mod reparam;
mod solver;
mod surrogate;
mod trajectory;

pub use increment::{increment_bound_check, IncrementCheck};
pub use peano::peano_iterates;
pub use reparam::{
    reparameterize, transform_trajectory, transform_trajectory_with_times, MonotoneMap,
};
pub use solver::{solve_system, Scheme, SolverConfig};
pub use surrogate::solve_surrogate;
pub use trajectory::{Clock, Trajectory, TrajectoryMeta};
