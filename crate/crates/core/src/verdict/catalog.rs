//! The built-in case catalog: fully configured scenarios with their
//! expected checker outcomes, including the counterexamples where a
//! hypothesis is designed to fail.

use crate::error::{Error, Result};
use crate::scenario::{Expectation, ScenarioConfig, ScenarioKind};

/// A catalog entry: a scenario plus the outcomes the suite asserts
/// exactly as stored.
#[derive(Debug, Clone)]
pub struct CatalogCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub config: ScenarioConfig,
    pub expected: Vec<Expectation>,
}

/// Stable public ids, documented in the CLI help.
pub fn catalog_ids() -> Vec<&'static str> {
    vec![
        "remark-2-2",
        "alpha-gt-1",
        "thm-2-11-pass",
        "thm-2-11-divergence-fail",
        "assumption-c-pde",
        "peano-linear",
    ]
}

fn remark_2_2() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::CheckOnly, "remark-2-2")
        .with_function("slope", "expr(piecewise_y(1: 1; else: 1 + (y - 1) * x))");
    config.state_bounds = vec![1.0, 2.0];
    config.check.horizon = Some(200.0);
    CatalogCase {
        id: "remark-2-2",
        summary: "piecewise slope whose majorant is uniformly continuous only up to state bound 1",
        config,
        expected: vec![
            Expectation::status("uc:1", "pass"),
            Expectation::status("uc:2", "fail"),
        ],
    }
}

fn alpha_gt_1() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::CheckOnly, "alpha-gt-1")
        .with_function("weight", "power_law(1, 1.5, 1)");
    config.shift_constants = vec![0.1, 0.5, 1.0, 10.0];
    CatalogCase {
        id: "alpha-gt-1",
        summary: "supercritical power weight: the shift-divergence condition fails for every constant",
        config,
        expected: vec![
            Expectation::status("regularity-limit:0.1", "fail"),
            Expectation::status("regularity-limit:0.5", "fail"),
            Expectation::status("regularity-limit:1", "fail"),
            Expectation::status("regularity-limit:10", "fail"),
        ],
    }
}

fn thm_2_11_pass() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::Surrogate, "thm-2-11-pass")
        .with_function("rate", "power_law(1, 0.5, 1)")
        .with_function("forcing", "power_law(1, 2, 1)")
        .with_function("nonlinearity", "identity")
        .with_constant("g0", 1.0);
    config.solver.dt = Some(1e-2);
    config.solver.t_end = Some(1000.0);
    config.reparameterize = true;
    CatalogCase {
        id: "thm-2-11-pass",
        summary: "slowly divergent rate with fast-decaying forcing: all surrogate hypotheses hold",
        config,
        expected: vec![
            Expectation::status("theorem:T2.11", "pass"),
            Expectation::status("theorem:T2.13", "pass"),
            Expectation::status("theorem:T2.14", "pass"),
            Expectation::status("verdict", "decays"),
            Expectation::status("s-verdict", "decays"),
        ],
    }
}

fn thm_2_11_divergence_fail() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::Surrogate, "thm-2-11-divergence-fail")
        .with_function("rate", "exponential(1, 1)")
        .with_function("forcing", "constant(0)")
        .with_function("nonlinearity", "identity")
        .with_constant("g0", 1.0);
    config.solver.dt = Some(1e-2);
    config.solver.t_end = Some(100.0);
    CatalogCase {
        id: "thm-2-11-divergence-fail",
        summary: "integrable rate: the divergence hypothesis fails and the trajectory floors at 1/e",
        config,
        expected: vec![
            Expectation::status("theorem:T2.11", "fail"),
            Expectation::status("condition:T2.11/dissipation-integral-diverges", "fail"),
            Expectation::status("verdict", "no_decay"),
            Expectation::value("floor", (-1.0f64).exp(), Some(1e-3)),
        ],
    }
}

fn assumption_c_pde() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::Pde, "assumption-c-pde")
        .with_function("gamma", "power_law(1, 0.5, 1)")
        .with_function("nonlinearity", "cubic")
        .with_function("forcing_amplitude", "power_law(0.5, 2, 1)")
        .with_function("forcing_profile", "unit_sine(1)")
        .with_function("u0", "zero")
        .with_constant("alpha", 0.5)
        .with_constant("k", 2.0);
    config.grid.n = Some(100);
    config.solver.dt = Some(1e-2);
    config.solver.t_end = Some(200.0);
    CatalogCase {
        id: "assumption-c-pde",
        summary: "cubic heat flow with power-law weights: assumption C holds and the norm decays",
        config,
        expected: vec![
            Expectation::status("theorem:C", "pass"),
            Expectation::status("verdict", "decays"),
            Expectation::value("sup-bound", 1.0, None),
        ],
    }
}

fn peano_linear() -> CatalogCase {
    let mut config = ScenarioConfig::new(ScenarioKind::Peano, "peano-linear")
        .with_function("rate", "constant(1)")
        .with_function("forcing", "constant(0)")
        .with_function("nonlinearity", "identity")
        .with_constant("g0", 1.0);
    config.peano.n_list = Some(vec![8, 16, 32, 64]);
    config.peano.dt = Some(1.0 / 1024.0);
    config.peano.t_end = Some(2.0);
    CatalogCase {
        id: "peano-linear",
        summary: "delayed iterates of the linear decay field converge to the reference solution",
        config,
        expected: vec![Expectation::value("peano-ratio", 0.75, None)],
    }
}

/// Look up a fully configured case by its stable id.
pub fn catalog_case(id: &str) -> Result<CatalogCase> {
    match id {
        "remark-2-2" => Ok(remark_2_2()),
        "alpha-gt-1" => Ok(alpha_gt_1()),
        "thm-2-11-pass" => Ok(thm_2_11_pass()),
        "thm-2-11-divergence-fail" => Ok(thm_2_11_divergence_fail()),
        "assumption-c-pde" => Ok(assumption_c_pde()),
        "peano-linear" => Ok(peano_linear()),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_id_resolves() {
        for id in catalog_ids() {
            let case = catalog_case(id).unwrap();
            assert_eq!(case.id, id);
            assert!(!case.expected.is_empty());
        }
    }

    #[test]
    fn unknown_ids_are_lookup_errors() {
        assert!(matches!(catalog_case("remark-9-9"), Err(Error::UnknownCatalog(_))));
    }
}
