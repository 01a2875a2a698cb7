//! Function space: the nonnegative scalar and bivariate functions every
//! checker quantifies over, with evaluation, quadrature, extrema and
//! improper-integral tail verdicts.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so the types are safe to share across
//! threads without coordination.

mod bivariate;
mod quad;
mod schema;
mod tail;
mod univariate;

pub use bivariate::{catalog_slope_fn, sup_slice, BivarExpr, BivariateFn};
pub use quad::{cumulative_on_grid, integrate, integrate_fn, Quadrature};
pub use schema::{load_tabulated_csv, parse_bivariate, parse_univariate};
pub use tail::{tail_verdict, tail_verdict_fn, TailVerdict, WindowPolicy};
pub use univariate::{inf_tail, monotone_check, InfEstimate, OmegaFn, Tabulation, UnivariateFn};
