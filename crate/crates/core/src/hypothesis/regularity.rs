//! Weight-regularity profile: the trend of `ρ(t) = t − C/φ(t)` and the
//! windowed oscillation ratio `M̂` of `φ` over `[t − C/φ(t), t]`.

use crate::error::{Error, Result};
use crate::funcspace::UnivariateFn;
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::report::{ConditionRecord, Status, Witness};

/// Report fragment for the weight-regularity hypothesis.
#[derive(Debug, Clone)]
pub struct RegularityProfile {
    /// Trend verdict on `ρ(t) = t − C/φ(t) → ∞`.
    pub limit_condition: ConditionRecord,
    /// Verdict on the bounded oscillation ratio, with `M̂` as witness.
    pub ratio_condition: ConditionRecord,
    /// Sampled `(t, ρ(t))`.
    pub rho_samples: Vec<(f64, f64)>,
    /// Max over sampled `t` of `max φ / min φ` on `[t − C/φ(t), t]`.
    pub m_hat: f64,
    /// Samples skipped because the interval left `[0, ∞)`.
    pub skipped: usize,
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Window maxima over doubling time windows ending at the sample horizon.
/// Windows without samples are dropped; a window whose samples are all
/// `-inf` (rate underflow pushed ρ below any float) keeps that as evidence.
fn window_maxima(samples: &[(f64, f64)], windows: usize) -> Vec<f64> {
    let hi = samples.last().unwrap().0;
    let mut out = Vec::new();
    for k in (0..windows).rev() {
        let w_hi = hi / (1u64 << k) as f64;
        let w_lo = w_hi / 2.0;
        let mut m = f64::NEG_INFINITY;
        let mut count = 0usize;
        for (t, v) in samples {
            if *t > w_lo && *t <= w_hi && !v.is_nan() {
                m = m.max(*v);
                count += 1;
            }
        }
        if count > 0 {
            out.push(m);
        }
    }
    out
}

/// Sample `ρ(t) = t − C/φ(t)` on a log-spaced grid and judge its limit
/// trend, plus the oscillation ratio `M̂` of `φ` over `[t − C/φ(t), t]`.
///
/// Samples whose interval leaves `[0, ∞)` are skipped and counted in the
/// fragment's note.
pub fn regularity_profile(
    phi: &UnivariateFn,
    c: f64,
    config: &CheckConfig,
) -> Result<RegularityProfile> {
    if !(c > 0.0) {
        return Err(Error::Config(format!("regularity constant must be > 0, got {c}")));
    }
    let horizon = config.trend_horizon;
    // positivity of the weight is a precondition, sampled where float
    // underflow cannot hide it
    for i in 0..=32 {
        let t = 10.0 * i as f64 / 32.0;
        let v = phi.eval(t)?;
        if !(v > 0.0) {
            return Err(Error::Validation(format!(
                "weight must be positive on the profile grid, φ({t}) = {v}"
            )));
        }
    }
    let grid = log_spaced(0.25, horizon, config.trend_samples.max(16));

    let mut rho_samples = Vec::with_capacity(grid.len());
    let mut ratio_samples: Vec<(f64, f64)> = Vec::new();
    let mut skipped = 0usize;
    for &t in &grid {
        let phi_t = phi.eval(t)?;
        // a positive family can underflow far in the tail: C/φ is then
        // beyond any float and ρ sits below every finite sample
        let rho = if phi_t > 0.0 { t - c / phi_t } else { f64::NEG_INFINITY };
        rho_samples.push((t, rho));
        let lo = rho;
        if lo < 0.0 {
            skipped += 1;
            continue;
        }
        let (min, max) = phi.extremum_on(lo, t, config.interval_samples)?;
        if !(min > 0.0) {
            return Err(Error::Validation(format!(
                "weight must stay positive on [{lo}, {t}], min {min}"
            )));
        }
        ratio_samples.push((t, max / min));
    }

    // limit trend over 12 doubling windows; the deeper sweep keeps the
    // finite region in view when the shift saturates float range
    let maxima = window_maxima(&rho_samples, 12);
    let tiny = 1e-9 * (1.0 + horizon);
    let limit_status = if maxima.len() < 3 {
        Status::Inconclusive
    } else {
        let k = maxima.len();
        let last3_increasing =
            maxima[k - 1] > maxima[k - 2] + tiny && maxima[k - 2] > maxima[k - 3] + tiny;
        let global_max = maxima.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tail_decreasing = maxima[k - 1] < maxima[k - 2] - tiny;
        let passed_peak = maxima[k - 1] < global_max - tiny;
        if last3_increasing && maxima[k - 1] >= global_max - tiny {
            Status::Pass
        } else if tail_decreasing || passed_peak {
            Status::Fail
        } else {
            Status::Inconclusive
        }
    };
    let rho_end = rho_samples.last().unwrap().1;
    let mut limit_condition = ConditionRecord::new(
        "weight-shift-diverges",
        limit_status,
        vec![
            Witness::new("rho_at_horizon", rho_end),
            Witness::new("window_max_last", *maxima.last().unwrap_or(&f64::NAN)),
        ],
        horizon,
    );
    if skipped > 0 {
        limit_condition = limit_condition
            .with_note(format!("{skipped} samples skipped: interval left [0, ∞)"));
    }

    // oscillation ratio trend
    let (m_hat, ratio_status) = if ratio_samples.is_empty() {
        (f64::NAN, Status::Inconclusive)
    } else {
        let m_hat = ratio_samples.iter().map(|(_, r)| *r).fold(f64::NEG_INFINITY, f64::max);
        let maxima = window_maxima(&ratio_samples, 4);
        let status = if maxima.len() < 2 {
            Status::Inconclusive
        } else {
            let k = maxima.len();
            let grew = maxima[k - 1] > maxima[0] * (1.0 + config.rel_tol);
            if grew {
                if maxima.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-9)) {
                    Status::Fail
                } else {
                    Status::Inconclusive
                }
            } else {
                Status::Pass
            }
        };
        (m_hat, status)
    };
    let ratio_condition = ConditionRecord::new(
        "weight-oscillation-bounded",
        ratio_status,
        vec![Witness::new("m_hat", m_hat)],
        horizon,
    );

    Ok(RegularityProfile { limit_condition, ratio_condition, rho_samples, m_hat, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn harmonic_weight_with_half_constant() {
        // φ = (1+t)^{-1}, C = 1/2: interval is [(t-1)/2, t], the ratio of a
        // monotone weight over it is exactly 2, and ρ = (t-1)/2 increases
        let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let p = regularity_profile(&phi, 0.5, &cfg()).unwrap();
        assert_eq!(p.limit_condition.status, Status::Pass);
        assert_eq!(p.ratio_condition.status, Status::Pass);
        assert!((p.m_hat - 2.0).abs() < 1e-9, "m_hat {}", p.m_hat);
    }

    #[test]
    fn supercritical_weight_fails_for_every_constant() {
        let phi = UnivariateFn::power_law(1.0, 1.5, 1.0).unwrap();
        for c in [0.1, 0.5, 1.0, 10.0] {
            let p = regularity_profile(&phi, c, &cfg()).unwrap();
            assert_eq!(p.limit_condition.status, Status::Fail, "C={c}");
        }
    }

    #[test]
    fn constant_weight_is_trivially_regular() {
        let phi = UnivariateFn::constant(1.0).unwrap();
        let p = regularity_profile(&phi, 1.0, &cfg()).unwrap();
        assert_eq!(p.limit_condition.status, Status::Pass);
        assert!((p.m_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subcritical_family_passes_and_supercritical_fails() {
        for alpha in [0.25, 0.5, 1.0] {
            let phi = UnivariateFn::power_law(1.0, alpha, 1.0).unwrap();
            let p = regularity_profile(&phi, 0.5, &cfg()).unwrap();
            assert_eq!(p.limit_condition.status, Status::Pass, "alpha={alpha}");
        }
        for alpha in [1.25, 1.5] {
            for c in [0.1, 0.5, 1.0, 10.0] {
                let phi = UnivariateFn::power_law(1.0, alpha, 1.0).unwrap();
                let p = regularity_profile(&phi, c, &cfg()).unwrap();
                assert_eq!(
                    p.limit_condition.status,
                    Status::Fail,
                    "alpha={alpha}, C={c}"
                );
            }
        }
    }

    #[test]
    fn skipped_samples_are_noted() {
        // with a large constant the interval dips below 0 at small t
        let phi = UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap();
        let p = regularity_profile(&phi, 10.0, &cfg()).unwrap();
        assert!(p.skipped > 0);
        assert!(p.limit_condition.note.is_some());
    }

    #[test]
    fn nonpositive_constant_is_config_error() {
        let phi = UnivariateFn::constant(1.0).unwrap();
        assert!(matches!(regularity_profile(&phi, 0.0, &cfg()), Err(Error::Config(_))));
    }
}
