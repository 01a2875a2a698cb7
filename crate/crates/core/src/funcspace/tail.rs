//! Doubling-window convergence verdicts for improper integrals.
//!
//! The contract quantifies over `[0, ∞)`, which no finite run can check.
//! Every verdict here is a finite-horizon certificate: windows `[T, 2T]`
//! are integrated until their contributions either fall below tolerance
//! while shrinking geometrically (Converged), keep growing past a
//! divergence bound (Diverged), or the window budget runs out
//! (Inconclusive, reporting the horizon reached).

use crate::error::{Error, Result};
use crate::funcspace::quad::integrate_fn;
use crate::funcspace::UnivariateFn;

/// Window-doubling policy for tail verdicts.
#[derive(Debug, Clone)]
pub struct WindowPolicy {
    /// First window is `[0, initial]`.
    pub initial: f64,
    /// Number of doublings before giving up.
    pub max_windows: u32,
    /// Partial integral beyond this with non-shrinking contributions ⇒ Diverged.
    pub divergence_bound: f64,
    /// Contribution ratio that still counts as geometric decay.
    pub decay_ratio: f64,
    /// Per-window quadrature tolerance.
    pub quad_tol: f64,
    /// Stop doubling past this horizon (tabulation-backed integrands).
    pub horizon_cap: Option<f64>,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy {
            initial: 1.0,
            max_windows: 48,
            divergence_bound: 10.0,
            decay_ratio: 0.9,
            quad_tol: 1e-10,
            horizon_cap: None,
        }
    }
}

impl WindowPolicy {
    pub fn with_horizon_cap(mut self, cap: f64) -> Self {
        self.horizon_cap = Some(cap);
        self
    }
}

/// Finite-horizon verdict on `∫_0^∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum TailVerdict {
    Converged { estimate: f64, horizon: f64 },
    Diverged { partial: f64, horizon: f64 },
    Inconclusive { partial: f64, horizon: f64 },
}

impl TailVerdict {
    pub fn is_converged(&self) -> bool {
        matches!(self, TailVerdict::Converged { .. })
    }

    pub fn is_diverged(&self) -> bool {
        matches!(self, TailVerdict::Diverged { .. })
    }

    pub fn horizon(&self) -> f64 {
        match self {
            TailVerdict::Converged { horizon, .. }
            | TailVerdict::Diverged { horizon, .. }
            | TailVerdict::Inconclusive { horizon, .. } => *horizon,
        }
    }
}

/// Tail verdict for an arbitrary nonnegative integrand closure.
pub fn tail_verdict_fn<F>(f: &F, tol: f64, policy: &WindowPolicy) -> Result<TailVerdict>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tail tolerance must be > 0, got {tol}")));
    }
    if !(policy.initial > 0.0) {
        return Err(Error::Config("window policy needs a positive initial window".into()));
    }
    if !(policy.decay_ratio > 0.0 && policy.decay_ratio < 1.0) {
        return Err(Error::Config(format!(
            "decay ratio must be in (0, 1), got {}",
            policy.decay_ratio
        )));
    }

    let tiny = 1e-300;
    let mut lo = 0.0_f64;
    let mut hi = policy.initial;
    let mut partial = 0.0_f64;
    let mut prev: Option<f64> = None;
    let mut nondecreasing_run = 0u32;
    let mut geometric_run = 0u32;

    for _ in 0..policy.max_windows {
        if let Some(cap) = policy.horizon_cap {
            if lo >= cap {
                return Ok(TailVerdict::Inconclusive { partial, horizon: lo });
            }
            hi = hi.min(cap);
        }
        let c = integrate_fn(f, lo, hi, policy.quad_tol)?.value;
        partial += c;

        if let Some(p) = prev {
            if c >= p * (1.0 - 1e-9) - tiny {
                nondecreasing_run += 1;
            } else {
                nondecreasing_run = 0;
            }
            let ratio = if p > tiny { c / p } else { 0.0 };
            if ratio <= policy.decay_ratio {
                geometric_run += 1;
            } else {
                geometric_run = 0;
            }
            if geometric_run >= 2 && c < tol {
                let extrapolated = if ratio < 1.0 { c * ratio / (1.0 - ratio) } else { c };
                if extrapolated <= tol {
                    return Ok(TailVerdict::Converged {
                        estimate: partial + extrapolated,
                        horizon: hi,
                    });
                }
            }
        }
        if partial > policy.divergence_bound && nondecreasing_run >= 2 {
            return Ok(TailVerdict::Diverged { partial, horizon: hi });
        }
        prev = Some(c);
        lo = hi;
        hi *= 2.0;
    }
    Ok(TailVerdict::Inconclusive { partial, horizon: lo })
}

/// Tail verdict for a `UnivariateFn`; tabulated forms without constant
/// extension cap the window doubling at their horizon.
pub fn tail_verdict(f: &UnivariateFn, tol: f64, policy: &WindowPolicy) -> Result<TailVerdict> {
    let mut policy = policy.clone();
    if let Some(h) = f.horizon() {
        policy.horizon_cap = Some(match policy.horizon_cap {
            Some(cap) => cap.min(h),
            None => h,
        });
    }
    tail_verdict_fn(&|x| f.eval(x), tol, &policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> WindowPolicy {
        WindowPolicy::default()
    }

    #[test]
    fn quadratic_power_law_converges_to_one() {
        // antiderivative -(1+t)^{-1}: the full integral is exactly 1
        let f = UnivariateFn::power_law(1.0, 2.0, 1.0).unwrap();
        match tail_verdict(&f, 1e-6, &policy()).unwrap() {
            TailVerdict::Converged { estimate, .. } => {
                assert!((estimate - 1.0).abs() < 1e-6, "estimate {estimate}")
            }
            v => panic!("expected convergence, got {v:?}"),
        }
    }

    #[test]
    fn harmonic_power_law_diverges() {
        let f = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        assert!(tail_verdict(&f, 1e-6, &policy()).unwrap().is_diverged());
    }

    #[test]
    fn zero_converges_to_zero() {
        let f = UnivariateFn::constant(0.0).unwrap();
        match tail_verdict(&f, 1e-9, &policy()).unwrap() {
            TailVerdict::Converged { estimate, .. } => assert_eq!(estimate, 0.0),
            v => panic!("expected convergence, got {v:?}"),
        }
    }

    #[test]
    fn exponential_tail_matches_antiderivative() {
        let f = UnivariateFn::exponential(1.0, 2.0).unwrap();
        match tail_verdict(&f, 1e-8, &policy()).unwrap() {
            TailVerdict::Converged { estimate, .. } => {
                assert!((estimate - 0.5).abs() < 1e-8, "estimate {estimate}")
            }
            v => panic!("expected convergence, got {v:?}"),
        }
    }

    #[test]
    fn constant_diverges_quickly() {
        let f = UnivariateFn::constant(1.0).unwrap();
        assert!(tail_verdict(&f, 1e-6, &policy()).unwrap().is_diverged());
    }

    #[test]
    fn power_family_sweep_converges_iff_exponent_above_one() {
        for (alpha, converges) in
            [(0.5, false), (1.0, false), (1.5, true), (2.0, true)]
        {
            let f = UnivariateFn::power_law(1.0, alpha, 1.0).unwrap();
            let v = tail_verdict(&f, 1e-6, &policy()).unwrap();
            assert_eq!(
                v.is_converged(),
                converges,
                "alpha {alpha} gave {v:?}"
            );
            if !converges {
                assert!(v.is_diverged(), "alpha {alpha} gave {v:?}");
            }
        }
    }

    #[test]
    fn horizon_cap_leaves_slow_integrands_inconclusive() {
        let f = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let capped = policy().with_horizon_cap(16.0);
        match tail_verdict_fn(&|x| f.eval(x), 1e-6, &capped).unwrap() {
            TailVerdict::Inconclusive { horizon, .. } => assert!(horizon <= 16.0),
            v => panic!("expected inconclusive under a tight cap, got {v:?}"),
        }
    }

    #[test]
    fn more_windows_never_flip_a_converged_integral() {
        // doubling the horizon budget keeps exp(-t) converged, so a
        // divergence hypothesis that failed stays failed
        let f = UnivariateFn::exponential(1.0, 1.0).unwrap();
        let mut short = policy();
        short.max_windows = 20;
        let mut long = policy();
        long.max_windows = 40;
        assert!(tail_verdict(&f, 1e-8, &short).unwrap().is_converged());
        assert!(tail_verdict(&f, 1e-8, &long).unwrap().is_converged());
    }
}
