//! Decay verdicts on trajectories, integral certificates along computed
//! solutions, and the built-in counterexample catalog.
//!
//! Pure functions over immutable trajectories; the catalog is read-only
//! shared data.

mod catalog;
mod certificate;
mod decay;

pub use catalog::{catalog_case, catalog_ids, CatalogCase};
pub use certificate::integral_certificate;
pub use decay::{decay_verdict, DecayStatus, DecayVerdict, VerdictPolicy};
