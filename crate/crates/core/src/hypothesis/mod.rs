//! Hypothesis checkers: decide, numerically and with explicit
//! finite-horizon caveats, whether a scenario satisfies the conditions of
//! each decay theorem in the built-in family.
//!
//! Checkers are pure; independent condition records are computed
//! concurrently and merged, and reports are immutable once assembled.

mod assumptions;
mod config;
mod growth;
mod majorant;
mod ratio;
mod regularity;
mod report;
mod theorems;

pub use assumptions::{assumption_check, AssumptionKind};
pub use config::CheckConfig;
pub use growth::{growth_bound_check, GrowthCheck, GrowthMode};
pub use majorant::{build_f, uc_certificate, ModulusTable, UcCertificate};
pub use ratio::{ratio_limsup, ratio_vanishes, RatioLimsup};
pub use regularity::{regularity_profile, RegularityProfile};
pub use report::{ConditionRecord, HypothesisReport, Status, TheoremId, Witness};
pub use theorems::{applicable_ids, applicable_theorems, InputKind, TheoremInputs};
