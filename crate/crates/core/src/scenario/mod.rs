//! Declarative scenario configs and the pipelines behind the CLI:
//! hypotheses → solve → verdict, with expected-outcome evaluation.

mod config;
mod expect;
mod run;

pub use config::{
    parse_nonlinearity, parse_profile, CheckSection, GridSection, PeanoSection, ScenarioConfig,
    ScenarioKind, SolverSection, VerdictSection,
};
pub use expect::{evaluate, Expectation, ExpectationOutcome};
pub use run::{
    run_config, BoundSummary, PeanoSummary, RegularityEntry, RunResult, UcEntry,
};
