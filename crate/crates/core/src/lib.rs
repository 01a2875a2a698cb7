//! Numerical decay certificates for nonlinear differential and integral
//! inequalities.
//!
//! The crate turns a family of asymptotic-decay theorems for dissipative
//! dynamics into executable, finite-horizon checks:
//!
//! - [`funcspace`] — the nonnegative scalar/bivariate functions all
//!   hypotheses quantify over, with quadrature and tail verdicts;
//! - [`hypothesis`] — per-theorem hypothesis checkers producing reports
//!   with numeric witnesses;
//! - [`odesolve`] — the scalar surrogate integrator, the monotone time
//!   reparameterization and the delayed Peano iteration;
//! - [`pde`] — a 1D semilinear heat simulator with dissipativity probes
//!   and a-priori bound curves;
//! - [`verdict`] — decay verdicts on trajectories plus the built-in
//!   counterexample catalog;
//! - [`scenario`] — declarative scenario configs and the pipelines the
//!   CLI drives.
//!
//! Everything that says "as t → ∞" is decided by doubling-window trend
//! tests with an explicit horizon in the report: honest finite evidence
//! instead of silent extrapolation.

pub mod error;
pub mod funcspace;
pub mod hypothesis;
pub mod odesolve;
pub mod par;
pub mod pde;
pub mod scenario;
pub mod verdict;

pub use error::{Error, Result};
