//! Window growth bounds on the state-sliced supremum of `f`.
//!
//! Over sampled pairs `t > s ≥ s_min` the checker compares
//! `∫_s^t sup_{0≤ζ≤a} f(x, ζ) dx` against the mode's right-hand side and
//! reports the fitted constant (θ̂, C̃ or κ̂) as witness.

use crate::error::{Error, Result};
use crate::funcspace::{integrate_fn, sup_slice, BivariateFn, UnivariateFn};
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::report::Status;

/// Right-hand-side family for the window growth bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthMode {
    /// `(t−s) · θ · a · max_{ξ∈[s,t]} φ(ξ)`
    IntegralTheta,
    /// Pointwise `sup_ζ f(t, ζ) ≤ C̃ · φ(t)`
    Pointwise,
    /// `κ · a · (t−s) / s^α`
    PowerLaw { alpha: f64 },
}

/// Result of a growth-bound check with the fitted constant as witness.
#[derive(Debug, Clone)]
pub struct GrowthCheck {
    pub status: Status,
    /// θ̂, C̃ or κ̂: supremum of the sampled ratios.
    pub fitted: f64,
    /// Per-`s`-group suprema, increasing in `s`.
    pub window_sups: Vec<(f64, f64)>,
    pub pairs: usize,
    pub horizon: f64,
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Check one of the window growth bounds over log-spaced `(s, t)` pairs.
pub fn growth_bound_check(
    f: &BivariateFn,
    a: f64,
    phi: &UnivariateFn,
    mode: GrowthMode,
    config: &CheckConfig,
) -> Result<GrowthCheck> {
    if !(a > 0.0) {
        return Err(Error::Config(format!("state bound must be > 0, got {a}")));
    }
    let (n_s, n_dt) = config.pair_counts;
    if n_s == 0 || n_dt == 0 {
        return Err(Error::Config("growth check needs a non-empty pair sample".into()));
    }
    if let GrowthMode::PowerLaw { alpha } = mode {
        if !(alpha > 0.0) {
            return Err(Error::Config(format!("power-law exponent must be > 0, got {alpha}")));
        }
    }

    let s_values = log_spaced(config.s_min, config.trend_horizon, n_s);
    let slice = |x: f64| sup_slice(f, x, a, config.zeta_grid);

    // one supremum ratio per s-group, computed over the t−s sweep
    let groups = crate::par::map_collect(&s_values, |&s| -> Result<(f64, f64)> {
        let mut sup = 0.0f64;
        match mode {
            GrowthMode::Pointwise => {
                let denom = phi.eval(s)?;
                if !(denom > 0.0) {
                    return Err(Error::Validation(format!(
                        "weight must be positive at t={s}, got {denom}"
                    )));
                }
                sup = slice(s)? / denom;
            }
            _ => {
                let spans = log_spaced(0.1, s.max(0.2), n_dt);
                for &span in &spans {
                    let t = s + span;
                    let lhs = integrate_fn(&slice, s, t, config.quad_tol)?.value;
                    let rhs = match mode {
                        GrowthMode::IntegralTheta => {
                            let (_, max_phi) = phi.extremum_on(s, t, config.interval_samples)?;
                            span * a * max_phi
                        }
                        GrowthMode::PowerLaw { alpha } => a * span / s.powf(alpha),
                        GrowthMode::Pointwise => unreachable!(),
                    };
                    let ratio = if rhs > 0.0 {
                        lhs / rhs
                    } else if lhs.abs() <= 1e-14 {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    sup = sup.max(ratio);
                }
            }
        }
        Ok((s, sup))
    });

    let mut window_sups = Vec::with_capacity(groups.len());
    for g in groups {
        window_sups.push(g?);
    }
    let fitted = window_sups.iter().map(|(_, r)| *r).fold(0.0f64, f64::max);

    let tiny = 1e-12;
    let k = window_sups.len();
    let status = if !fitted.is_finite() {
        Status::Fail
    } else if k < 4 {
        Status::Inconclusive
    } else {
        let last = window_sups[k - 1].1;
        let reference = window_sups[k - 4].1;
        let tail_nondecreasing = window_sups[k - 4..]
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

    Ok(GrowthCheck {
        status,
        fitted,
        window_sups,
        pairs: n_s * n_dt,
        horizon: config.trend_horizon,
    })
}
