//! 1D semilinear heat dynamics: discretization, semi-implicit simulation,
//! dissipativity probes and a-priori bound curves.
//!
//! A single simulation is sequential; independent scenarios, refinement
//! sweeps and probe pair evaluations run concurrently, and operators are
//! immutable after assembly.

mod bound;
mod grid;
mod operator;
mod probe;
mod scenario;
mod simulate;

pub use bound::{apriori_bound, AprioriBound};
pub use grid::Grid1D;
pub use operator::{assemble_operator, DiscreteOperator};
pub use probe::{dissipativity_probe, ProbeReport};
pub use scenario::{Forcing, Nonlinearity, PdeScenario, SpaceProfile};
pub use simulate::{difference_norms, simulate, PdeConfig, PdeRun, Snapshot};
