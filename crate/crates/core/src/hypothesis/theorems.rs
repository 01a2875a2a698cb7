//! Dispatch: run every checker whose inputs a scenario provides.

use crate::error::Result;
use crate::funcspace::{
    inf_tail, monotone_check, tail_verdict, BivariateFn, UnivariateFn,
};
use crate::hypothesis::assumptions::{
    assumption_check, convergence_condition, AssumptionKind,
};
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::growth::{growth_bound_check, GrowthMode};
use crate::hypothesis::majorant::{build_f, uc_certificate};
use crate::hypothesis::ratio::ratio_limsup;
use crate::hypothesis::regularity::regularity_profile;
use crate::hypothesis::report::{
    ConditionRecord, HypothesisReport, Status, TheoremId, Witness,
};

/// Whether the scenario is a scalar surrogate inequality or an evolution
/// equation in norm form; this decides which theorem family is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Surrogate,
    Evolution,
}

/// The functions and constants a scenario makes available to the checkers.
/// Every checker whose inputs are present runs; nothing else does.
#[derive(Debug, Clone, Copy)]
pub struct TheoremInputs<'a> {
    pub kind: InputKind,
    /// Bivariate slope `f(x, y)` of the integral inequality.
    pub slope: Option<&'a BivariateFn>,
    /// State bound `a` for sliced suprema.
    pub state_bound: Option<f64>,
    /// Weight `φ` of the integral hypothesis.
    pub weight: Option<&'a UnivariateFn>,
    /// Shift constant `C` for the regularity profile.
    pub shift_constant: Option<f64>,
    /// Power-law exponent `α`.
    pub alpha: Option<f64>,
    /// Envelope `h` of the state-free inequality.
    pub envelope: Option<&'a UnivariateFn>,
    /// Dissipation rate `a(t)` (or `γ(t)` for evolution scenarios).
    pub rate: Option<&'a UnivariateFn>,
    /// Forcing `b(t)` (or `β(t) = ‖f(t)‖`).
    pub forcing: Option<&'a UnivariateFn>,
    /// Scalar nonlinearity acting on the state.
    pub nonlinearity: Option<&'a UnivariateFn>,
}

impl Default for TheoremInputs<'_> {
    fn default() -> Self {
        TheoremInputs {
            kind: InputKind::Surrogate,
            slope: None,
            state_bound: None,
            weight: None,
            shift_constant: None,
            alpha: None,
            envelope: None,
            rate: None,
            forcing: None,
            nonlinearity: None,
        }
    }
}

const DEFAULT_SHIFT_CONSTANT: f64 = 0.5;

fn exponent_condition(alpha: f64) -> ConditionRecord {
    let status = if alpha > 0.0 && alpha <= 1.0 { Status::Pass } else { Status::Fail };
    ConditionRecord::new(
        "exponent-in-unit-range",
        status,
        vec![Witness::new("alpha", alpha)],
        0.0,
    )
}

fn nonlinearity_floor_condition(
    f: &UnivariateFn,
    config: &CheckConfig,
) -> Result<ConditionRecord> {
    let mut witnesses = Vec::new();
    let mut status = Status::Pass;
    for eps in [0.01, 0.1, 1.0] {
        let est = inf_tail(f, eps, config.state_horizon, 256)?;
        if !(est.value > 0.0) {
            status = Status::Fail;
        }
        witnesses.push(Witness::new(format!("m_hat({eps})"), est.value));
    }
    Ok(ConditionRecord::new(
        "nonlinearity-positive-floor",
        status,
        witnesses,
        config.state_horizon,
    ))
}

fn nonlinearity_monotone_condition(
    f: &UnivariateFn,
    config: &CheckConfig,
) -> Result<ConditionRecord> {
    let ok = monotone_check(f, 0.0, config.state_horizon, 256)?;
    let status = if ok { Status::Pass } else { Status::Fail };
    Ok(ConditionRecord::new(
        "nonlinearity-nondecreasing",
        status,
        vec![Witness::new("monotone", if ok { 1.0 } else { 0.0 })],
        config.state_horizon,
    ))
}

fn regularity_conditions(
    weight: &UnivariateFn,
    c: f64,
    config: &CheckConfig,
) -> Result<Vec<ConditionRecord>> {
    let profile = regularity_profile(weight, c, config)?;
    Ok(vec![profile.limit_condition, profile.ratio_condition])
}

fn check_one(
    id: TheoremId,
    inputs: &TheoremInputs,
    config: &CheckConfig,
) -> Result<HypothesisReport> {
    let c_shift = inputs.shift_constant.unwrap_or(DEFAULT_SHIFT_CONSTANT);
    match id {
        TheoremId::UcMajorant => {
            let f = inputs.slope.expect("dispatch checked slope");
            let a = inputs.state_bound.expect("dispatch checked bound");
            let n = 800usize;
            let grid: Vec<f64> =
                (0..=n).map(|i| config.horizon * i as f64 / n as f64).collect();
            let majorant = build_f(f, a, &grid, config)?;
            let cert = uc_certificate(&majorant, config)?;
            let delta0 = config.deltas[0];
            let cond = ConditionRecord::new(
                "majorant-uniformly-continuous",
                cert.status,
                vec![
                    Witness::new(
                        format!("modulus({delta0})"),
                        cert.final_modulus(delta0).unwrap_or(f64::NAN),
                    ),
                    Witness::new("fitted_slope", cert.fitted_slope),
                ],
                cert.horizon,
            );
            Ok(HypothesisReport::assemble(id, vec![cond]))
        }
        TheoremId::WeightedWindowDecay => {
            let f = inputs.slope.expect("dispatch");
            let a = inputs.state_bound.expect("dispatch");
            let phi = inputs.weight.expect("dispatch");
            let mut conditions = regularity_conditions(phi, c_shift, config)?;
            let growth = growth_bound_check(f, a, phi, GrowthMode::IntegralTheta, config)?;
            conditions.push(ConditionRecord::new(
                "window-growth-bound",
                growth.status,
                vec![Witness::new("theta_hat", growth.fitted)],
                growth.horizon,
            ));
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::PowerWindowDecay => {
            let f = inputs.slope.expect("dispatch");
            let a = inputs.state_bound.expect("dispatch");
            let alpha = inputs.alpha.expect("dispatch");
            let mut conditions = vec![exponent_condition(alpha)];
            if alpha > 0.0 {
                let weight = UnivariateFn::power_law(1.0, alpha, 1.0)?;
                conditions.extend(regularity_conditions(&weight, 0.5, config)?);
                let growth =
                    growth_bound_check(f, a, &weight, GrowthMode::PowerLaw { alpha }, config)?;
                conditions.push(ConditionRecord::new(
                    "window-growth-bound",
                    growth.status,
                    vec![Witness::new("kappa_hat", growth.fitted)],
                    growth.horizon,
                ));
            }
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::WeightedRatioDecay => {
            let h = inputs.envelope.expect("dispatch");
            let phi = inputs.weight.expect("dispatch");
            let mut conditions = regularity_conditions(phi, c_shift, config)?;
            let r = ratio_limsup(h, phi, config)?;
            conditions.push(ConditionRecord::new(
                "envelope-ratio-bounded",
                r.status,
                vec![Witness::new("a_hat", r.estimate)],
                r.horizon,
            ));
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::PowerRatioDecay => {
            let h = inputs.envelope.expect("dispatch");
            let alpha = inputs.alpha.expect("dispatch");
            let mut conditions = vec![exponent_condition(alpha)];
            if alpha > 0.0 {
                let weight = UnivariateFn::power_law(1.0, alpha, 0.0)?;
                let r = ratio_limsup(h, &weight, config)?;
                conditions.push(ConditionRecord::new(
                    "envelope-power-ratio-bounded",
                    r.status,
                    vec![Witness::new("a_hat", r.estimate)],
                    r.horizon,
                ));
            }
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::SurrogateVanishingRatio => {
            let rate = inputs.rate.expect("dispatch");
            let forcing = inputs.forcing.expect("dispatch");
            let f = inputs.nonlinearity.expect("dispatch");
            let base = assumption_check(rate, forcing, AssumptionKind::A, None, config)?;
            let mut conditions = base.conditions;
            conditions.push(nonlinearity_floor_condition(f, config)?);
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::SurrogateIntegrableRatio => {
            let rate = inputs.rate.expect("dispatch");
            let forcing = inputs.forcing.expect("dispatch");
            let f = inputs.nonlinearity.expect("dispatch");
            let base = assumption_check(rate, forcing, AssumptionKind::B, None, config)?;
            let mut conditions = base.conditions;
            conditions.push(nonlinearity_monotone_condition(f, config)?);
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::SurrogateBoundedRatio => {
            let rate = inputs.rate.expect("dispatch");
            let forcing = inputs.forcing.expect("dispatch");
            let mut conditions = regularity_conditions(rate, c_shift, config)?;
            let r = ratio_limsup(forcing, rate, config)?;
            conditions.push(ConditionRecord::new(
                "forcing-rate-ratio-bounded",
                r.status,
                vec![Witness::new("k_hat", r.estimate)],
                r.horizon,
            ));
            let v = tail_verdict(forcing, config.tail_tol, &config.window_policy())?;
            conditions.push(convergence_condition("forcing-integral-converges", v));
            if let Some(f) = inputs.nonlinearity {
                conditions.push(nonlinearity_monotone_condition(f, config)?);
            }
            Ok(HypothesisReport::assemble(id, conditions))
        }
        TheoremId::AssumptionA => assumption_check(
            inputs.rate.expect("dispatch"),
            inputs.forcing.expect("dispatch"),
            AssumptionKind::A,
            None,
            config,
        ),
        TheoremId::AssumptionB => assumption_check(
            inputs.rate.expect("dispatch"),
            inputs.forcing.expect("dispatch"),
            AssumptionKind::B,
            None,
            config,
        ),
        TheoremId::AssumptionC => assumption_check(
            inputs.rate.expect("dispatch"),
            inputs.forcing.expect("dispatch"),
            AssumptionKind::C,
            inputs.alpha,
            config,
        ),
    }
}

/// List the theorems whose inputs are available.
pub fn applicable_ids(inputs: &TheoremInputs) -> Vec<TheoremId> {
    let mut ids = Vec::new();
    let has_slope = inputs.slope.is_some() && inputs.state_bound.is_some();
    if has_slope {
        ids.push(TheoremId::UcMajorant);
        if inputs.weight.is_some() {
            ids.push(TheoremId::WeightedWindowDecay);
        }
        if inputs.alpha.is_some() {
            ids.push(TheoremId::PowerWindowDecay);
        }
    }
    if inputs.envelope.is_some() {
        if inputs.weight.is_some() {
            ids.push(TheoremId::WeightedRatioDecay);
        }
        if inputs.alpha.is_some() {
            ids.push(TheoremId::PowerRatioDecay);
        }
    }
    if inputs.rate.is_some() && inputs.forcing.is_some() {
        match inputs.kind {
            InputKind::Surrogate => {
                if inputs.nonlinearity.is_some() {
                    ids.push(TheoremId::SurrogateVanishingRatio);
                    ids.push(TheoremId::SurrogateIntegrableRatio);
                }
                ids.push(TheoremId::SurrogateBoundedRatio);
            }
            InputKind::Evolution => {
                ids.push(TheoremId::AssumptionA);
                ids.push(TheoremId::AssumptionB);
                if inputs.alpha.is_some() {
                    ids.push(TheoremId::AssumptionC);
                }
            }
        }
    }
    ids
}

/// Run every checker whose inputs the scenario provides; reports come back
/// sorted by overall status (passes first), then by theorem id.
pub fn applicable_theorems(
    inputs: &TheoremInputs,
    config: &CheckConfig,
) -> Result<Vec<HypothesisReport>> {
    config.validate()?;
    let ids = applicable_ids(inputs);
    let results = crate::par::map_collect(&ids, |&id| check_one(id, inputs, config));
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }
    reports.sort_by_key(|r| (r.status, r.theorem));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn surrogate_power_law_scenario_passes_all_three() {
        let rate = UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap();
        let forcing = UnivariateFn::power_law(1.0, 2.0, 1.0).unwrap();
        let id = UnivariateFn::identity();
        let inputs = TheoremInputs {
            kind: InputKind::Surrogate,
            rate: Some(&rate),
            forcing: Some(&forcing),
            nonlinearity: Some(&id),
            ..TheoremInputs::default()
        };
        let reports = applicable_theorems(&inputs, &cfg()).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{}", r.theorem);
        }
        let ids: Vec<TheoremId> = reports.iter().map(|r| r.theorem).collect();
        assert!(ids.contains(&TheoremId::SurrogateVanishingRatio));
        assert!(ids.contains(&TheoremId::SurrogateIntegrableRatio));
        assert!(ids.contains(&TheoremId::SurrogateBoundedRatio));
    }

    #[test]
    fn exponential_rate_fails_the_divergence_hypothesis() {
        let rate = UnivariateFn::exponential(1.0, 1.0).unwrap();
        let forcing = UnivariateFn::constant(0.0).unwrap();
        let id = UnivariateFn::identity();
        let inputs = TheoremInputs {
            kind: InputKind::Surrogate,
            rate: Some(&rate),
            forcing: Some(&forcing),
            nonlinearity: Some(&id),
            ..TheoremInputs::default()
        };
        let reports = applicable_theorems(&inputs, &cfg()).unwrap();
        let r = reports
            .iter()
            .find(|r| r.theorem == TheoremId::SurrogateVanishingRatio)
            .unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(
            r.condition("dissipation-integral-diverges").unwrap().status,
            Status::Fail
        );
    }

    #[test]
    fn empty_scenario_yields_no_reports() {
        let inputs = TheoremInputs::default();
        let reports = applicable_theorems(&inputs, &cfg()).unwrap();
        assert!(reports.is_empty());
        // vacuously, every applicable check passed
        assert!(reports.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn reports_are_sorted_pass_first() {
        // rate diverges but forcing ratio has a floor: A fails while the
        // bounded-ratio theorem still passes
        let rate = UnivariateFn::constant(1.0).unwrap();
        let forcing = UnivariateFn::constant(0.5).unwrap();
        let id = UnivariateFn::identity();
        let inputs = TheoremInputs {
            kind: InputKind::Surrogate,
            rate: Some(&rate),
            forcing: Some(&forcing),
            nonlinearity: Some(&id),
            ..TheoremInputs::default()
        };
        let reports = applicable_theorems(&inputs, &cfg()).unwrap();
        for w in reports.windows(2) {
            assert!(w[0].status <= w[1].status, "reports not sorted by status");
        }
    }
}
