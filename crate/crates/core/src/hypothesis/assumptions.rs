//! The three forcing-vs-dissipation balance assumptions for the evolution
//! problem, each decided sub-condition by sub-condition.

use crate::error::{Error, Result};
use crate::funcspace::{tail_verdict, tail_verdict_fn, TailVerdict, UnivariateFn};
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::ratio::{ratio_limsup, ratio_vanishes};
use crate::hypothesis::report::{
    ConditionRecord, HypothesisReport, Status, TheoremId, Witness,
};

/// Which balance assumption to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssumptionKind {
    /// Divergent dissipation integral and vanishing `β/γ`.
    A,
    /// Divergent dissipation integral and integrable `β/γ`.
    B,
    /// Integrable forcing with power-law weight bounds (needs `α ∈ (0, 1]`).
    C,
}

impl AssumptionKind {
    pub fn theorem_id(&self) -> TheoremId {
        match self {
            AssumptionKind::A => TheoremId::AssumptionA,
            AssumptionKind::B => TheoremId::AssumptionB,
            AssumptionKind::C => TheoremId::AssumptionC,
        }
    }
}

/// Condition on the divergence of `∫ rate`.
pub fn divergence_condition(
    name: &str,
    rate: &UnivariateFn,
    config: &CheckConfig,
) -> Result<ConditionRecord> {
    let v = tail_verdict(rate, config.tail_tol, &config.window_policy())?;
    let (status, partial) = match &v {
        TailVerdict::Diverged { partial, .. } => (Status::Pass, *partial),
        TailVerdict::Converged { estimate, .. } => (Status::Fail, *estimate),
        TailVerdict::Inconclusive { partial, .. } => (Status::Inconclusive, *partial),
    };
    Ok(ConditionRecord::new(
        name,
        status,
        vec![Witness::new("partial_integral", partial)],
        v.horizon(),
    ))
}

/// Condition on the convergence of an improper integral.
pub fn convergence_condition(
    name: &str,
    verdict: TailVerdict,
) -> ConditionRecord {
    let (status, value) = match &verdict {
        TailVerdict::Converged { estimate, .. } => (Status::Pass, *estimate),
        TailVerdict::Diverged { partial, .. } => (Status::Fail, *partial),
        TailVerdict::Inconclusive { partial, .. } => (Status::Inconclusive, *partial),
    };
    ConditionRecord::new(
        name,
        status,
        vec![Witness::new("integral_estimate", value)],
        verdict.horizon(),
    )
}

/// Map numeric trouble in a tail window (underflow, overflow) to an
/// inconclusive record instead of aborting the whole report.
fn condition_or_inconclusive(
    name: &str,
    horizon: f64,
    result: Result<ConditionRecord>,
) -> Result<ConditionRecord> {
    match result {
        Ok(c) => Ok(c),
        Err(Error::Numeric(msg)) => Ok(ConditionRecord::new(
            name,
            Status::Inconclusive,
            vec![Witness::new("numeric_failure", f64::NAN)],
            horizon,
        )
        .with_note(msg)),
        Err(e) => Err(e),
    }
}

/// Check assumption A, B or C for a dissipation rate `γ` and forcing
/// norm `β`; `alpha` is required for C and must lie in `(0, 1]`.
pub fn assumption_check(
    gamma: &UnivariateFn,
    beta: &UnivariateFn,
    which: AssumptionKind,
    alpha: Option<f64>,
    config: &CheckConfig,
) -> Result<HypothesisReport> {
    config.validate()?;
    // positivity of the rate is a precondition, sampled where float
    // underflow cannot hide it
    for i in 0..=32 {
        let t = 10.0 * i as f64 / 32.0;
        let g = gamma.eval(t)?;
        if !(g > 0.0) {
            return Err(Error::Validation(format!(
                "dissipation rate must be positive, γ({t}) = {g}"
            )));
        }
    }
    // a zero numerator short-circuits so that tail underflow of the rate
    // (e.g. e^{-t} at large t) cannot poison a zero-forcing ratio
    let ratio = |t: f64| -> Result<f64> {
        let b = beta.eval(t)?;
        if b == 0.0 {
            return Ok(0.0);
        }
        let g = gamma.eval(t)?;
        if g == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(b / g)
    };

    let conditions = match which {
        AssumptionKind::A => {
            let c1 = divergence_condition("dissipation-integral-diverges", gamma, config)?;
            let c2 = condition_or_inconclusive(
                "forcing-dissipation-ratio-vanishes",
                config.trend_horizon,
                ratio_vanishes(&ratio, config).map(|(status, last, horizon)| {
                    ConditionRecord::new(
                        "forcing-dissipation-ratio-vanishes",
                        status,
                        vec![Witness::new("last_window_max", last)],
                        horizon,
                    )
                }),
            )?;
            vec![c1, c2]
        }
        AssumptionKind::B => {
            let c1 = divergence_condition("dissipation-integral-diverges", gamma, config)?;
            let c2 = condition_or_inconclusive(
                "forcing-dissipation-ratio-integrable",
                config.trend_horizon,
                tail_verdict_fn(&ratio, config.tail_tol, &config.window_policy())
                    .map(|v| convergence_condition("forcing-dissipation-ratio-integrable", v)),
            )?;
            vec![c1, c2]
        }
        AssumptionKind::C => {
            let alpha = alpha.ok_or_else(|| {
                Error::Config("assumption C needs a power-law exponent".into())
            })?;
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(Error::Config(format!(
                    "assumption C needs α ∈ (0, 1], got {alpha}"
                )));
            }
            let v = tail_verdict(beta, config.tail_tol, &config.window_policy())?;
            let c1 = convergence_condition("forcing-integrable", v);

            let weight = UnivariateFn::power_law(1.0, alpha, 1.0).expect("valid weight");
            let r = ratio_limsup(gamma, &weight, config)?;
            let c2 = ConditionRecord::new(
                "dissipation-power-bound",
                r.status,
                vec![Witness::new("limsup_estimate", r.estimate)],
                r.horizon,
            );

            // limsup β(t)·t^α over doubling windows
            let growth = |t: f64| Ok(beta.eval(t)? * t.powf(alpha));
            let maxima =
                crate::hypothesis::ratio::windowed_ratio_maxima(&growth, config)?;
            let k = maxima.len();
            let last = maxima[k - 1].1;
            let status = if k < 4 {
                Status::Inconclusive
            } else {
                let reference = maxima[k - 4].1;
                let tiny = 1e-300;
                let tail_nondecreasing = maxima[k - 4..]
                    .windows(2)
                    .all(|w| w[1].1 >= w[0].1 * (1.0 - 1e-9) - tiny);
                if last <= reference * (1.0 + config.rel_tol) + tiny {
                    Status::Pass
                } else if tail_nondecreasing && last >= 1.5 * reference + tiny {
                    Status::Fail
                } else {
                    Status::Inconclusive
                }
            };
            let c3 = ConditionRecord::new(
                "forcing-power-ratio-bounded",
                status,
                vec![Witness::new("limsup_estimate", last)],
                config.trend_horizon,
            );
            vec![c1, c2, c3]
        }
    };
    Ok(HypothesisReport::assemble(which.theorem_id(), conditions))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    fn slow_rate() -> UnivariateFn {
        UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap()
    }

    fn fast_forcing() -> UnivariateFn {
        UnivariateFn::power_law(1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn assumption_a_power_law_pair_passes() {
        // β/γ = (1+t)^{-3/2} → 0 and ∫γ diverges
        let r = assumption_check(&slow_rate(), &fast_forcing(), AssumptionKind::A, None, &cfg())
            .unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.conditions.len(), 2);
        for c in &r.conditions {
            assert_eq!(c.status, Status::Pass, "{}", c.condition);
        }
    }

    #[test]
    fn assumption_a_fails_for_integrable_rate() {
        let gamma = UnivariateFn::exponential(1.0, 1.0).unwrap();
        let beta = UnivariateFn::constant(0.0).unwrap();
        let r = assumption_check(&gamma, &beta, AssumptionKind::A, None, &cfg()).unwrap();
        assert_eq!(r.status, Status::Fail);
        let c = r.condition("dissipation-integral-diverges").unwrap();
        assert_eq!(c.status, Status::Fail);
        // the integral estimate witnesses the convergence to 1
        assert!((c.witness_value("partial_integral").unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn assumption_b_power_law_pair_passes() {
        let r = assumption_check(&slow_rate(), &fast_forcing(), AssumptionKind::B, None, &cfg())
            .unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn assumption_c_example_passes() {
        // γ = (1+t)^{-1/2}, β = (1+t)^{-2}, α = 1/2 (forcing exponent k = 2)
        let r = assumption_check(
            &slow_rate(),
            &fast_forcing(),
            AssumptionKind::C,
            Some(0.5),
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.conditions.len(), 3);
    }

    #[test]
    fn assumption_c_needs_valid_alpha() {
        let e = assumption_check(&slow_rate(), &fast_forcing(), AssumptionKind::C, None, &cfg());
        assert!(matches!(e, Err(Error::Config(_))));
        let e = assumption_check(
            &slow_rate(),
            &fast_forcing(),
            AssumptionKind::C,
            Some(1.5),
            &cfg(),
        );
        assert!(matches!(e, Err(Error::Config(_))));
    }

    #[test]
    fn scaling_both_weights_preserves_statuses() {
        let scale = 3.7;
        let gamma2 = UnivariateFn::power_law(scale, 0.5, 1.0).unwrap();
        let beta2 = UnivariateFn::power_law(scale, 2.0, 1.0).unwrap();
        for kind in [AssumptionKind::A, AssumptionKind::B, AssumptionKind::C] {
            let alpha = matches!(kind, AssumptionKind::C).then_some(0.5);
            let base =
                assumption_check(&slow_rate(), &fast_forcing(), kind, alpha, &cfg()).unwrap();
            let scaled = assumption_check(&gamma2, &beta2, kind, alpha, &cfg()).unwrap();
            assert_eq!(base.status, scaled.status, "{kind:?}");
            for (a, b) in base.conditions.iter().zip(&scaled.conditions) {
                assert_eq!(a.status, b.status, "{kind:?}: {}", a.condition);
            }
        }
    }

    #[test]
    fn doubling_horizon_never_flips_the_divergence_fail() {
        let gamma = UnivariateFn::exponential(1.0, 1.0).unwrap();
        let beta = UnivariateFn::constant(0.0).unwrap();
        let short = cfg();
        let mut long = cfg();
        long.trend_horizon *= 2.0;
        let a = assumption_check(&gamma, &beta, AssumptionKind::A, None, &short).unwrap();
        let b = assumption_check(&gamma, &beta, AssumptionKind::A, None, &long).unwrap();
        assert_eq!(a.status, Status::Fail);
        assert_eq!(b.status, Status::Fail);
    }
}
