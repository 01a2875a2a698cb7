//! Decay verdicts on scalar trajectories.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::odesolve::Trajectory;

/// Verdict on whether a trajectory vanishes at its horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayStatus {
    Decays,
    NoDecay,
    Inconclusive,
}

impl DecayStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecayStatus::Decays => "decays",
            DecayStatus::NoDecay => "no_decay",
            DecayStatus::Inconclusive => "inconclusive",
        }
    }
}

/// Doubling-window policy for decay verdicts: `no_decay` demands a stable
/// positive floor across at least `windows` consecutive doubling windows,
/// so slow decay at short horizons stays inconclusive instead.
#[derive(Debug, Clone)]
pub struct VerdictPolicy {
    pub windows: usize,
    /// Relative window-to-window change still counted as a stable floor.
    pub floor_stability: f64,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        VerdictPolicy { windows: 3, floor_stability: 0.1 }
    }
}

/// Decay verdict with its numeric evidence.
#[derive(Debug, Clone, Serialize)]
pub struct DecayVerdict {
    pub status: DecayStatus,
    /// Supremum over the final doubling window.
    pub last_window_sup: f64,
    /// Floor estimate when the verdict is `no_decay`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_estimate: Option<f64>,
    /// Fitted rate exponent of a `y ~ t^(−β)` trend; diagnostic only,
    /// never part of the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate_exponent: Option<f64>,
    pub horizon: f64,
}

fn fit_rate_exponent(traj: &Trajectory) -> Option<f64> {
    let hi = traj.last_time();
    let lo = hi / 10.0;
    let floor = 10.0 * f64::EPSILON;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, t) in traj.times().iter().enumerate() {
        if *t >= lo && *t > 0.0 {
            let v = traj.value(i);
            if v <= floor {
                return None;
            }
            xs.push(t.ln());
            ys.push(v.ln());
        }
    }
    if xs.len() < 4 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        None
    } else {
        Some(-num / den)
    }
}

/// Classify a nonnegative scalar trajectory: `decays` when the final
/// doubling window stays below `eps`, `no_decay` when the window infima
/// hold a stable floor above `eps`, `inconclusive` otherwise.
pub fn decay_verdict(
    traj: &Trajectory,
    eps: f64,
    policy: &VerdictPolicy,
) -> Result<DecayVerdict> {
    if traj.width() != 1 {
        return Err(Error::Config("decay verdicts apply to scalar trajectories".into()));
    }
    if !traj.is_nonnegative() {
        return Err(Error::Validation("decay verdicts need a nonnegative trajectory".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Config(format!("threshold must be > 0, got {eps}")));
    }
    if policy.windows < 1 {
        return Err(Error::Config("verdict policy needs at least one window".into()));
    }
    let hi = traj.last_time();
    if !(hi > 0.0) {
        return Err(Error::Config("trajectory must extend past t = 0".into()));
    }
    // every window needs data in it, the final one enough to take a sup
    let samples_in_final = traj.times().iter().filter(|t| **t >= hi / 2.0).count();
    let mut underfilled = samples_in_final < 2;
    for k in 0..policy.windows {
        let w_hi = hi / 2f64.powi(k as i32);
        let count =
            traj.times().iter().filter(|t| **t > w_hi / 2.0 && **t <= w_hi).count();
        if count == 0 {
            underfilled = true;
        }
    }
    if underfilled {
        return Err(Error::Config(format!(
            "trajectory too short for {} doubling windows ending at {hi}",
            policy.windows
        )));
    }

    let last_window_sup = traj.sup_on(hi / 2.0, hi);
    let horizon = hi;
    let rate_exponent = fit_rate_exponent(traj);

    if last_window_sup <= eps {
        return Ok(DecayVerdict {
            status: DecayStatus::Decays,
            last_window_sup,
            limit_estimate: None,
            rate_exponent,
            horizon,
        });
    }

    let mut infima = Vec::with_capacity(policy.windows);
    for k in 0..policy.windows {
        let w_hi = hi / 2f64.powi(k as i32);
        infima.push(traj.inf_on(w_hi / 2.0, w_hi));
    }
    infima.reverse(); // oldest window first
    let all_above = infima.iter().all(|v| *v > eps);
    let stable = infima.windows(2).all(|w| {
        let scale = w[0].max(w[1]);
        (w[0] - w[1]).abs() <= policy.floor_stability * scale
    });
    if all_above && stable {
        return Ok(DecayVerdict {
            status: DecayStatus::NoDecay,
            last_window_sup,
            limit_estimate: Some(*infima.last().unwrap()),
            rate_exponent,
            horizon,
        });
    }
    Ok(DecayVerdict {
        status: DecayStatus::Inconclusive,
        last_window_sup,
        limit_estimate: None,
        rate_exponent,
        horizon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odesolve::TrajectoryMeta;

    fn traj_of(f: impl Fn(f64) -> f64, t_end: f64, n: usize) -> Trajectory {
        let times: Vec<f64> = (0..=n).map(|i| t_end * i as f64 / n as f64).collect();
        let values: Vec<f64> = times.iter().map(|t| f(*t)).collect();
        Trajectory::scalar(times, values, TrajectoryMeta::default()).unwrap()
    }

    #[test]
    fn exponential_decay_is_detected() {
        let tr = traj_of(|t| (-t).exp(), 20.0, 2000);
        let v = decay_verdict(&tr, 1e-3, &VerdictPolicy::default()).unwrap();
        assert_eq!(v.status, DecayStatus::Decays);
        assert!(v.last_window_sup < 1e-4);
    }

    #[test]
    fn constant_one_is_a_floor() {
        let tr = traj_of(|_| 1.0, 20.0, 2000);
        let v = decay_verdict(&tr, 1e-3, &VerdictPolicy::default()).unwrap();
        assert_eq!(v.status, DecayStatus::NoDecay);
        assert!((v.limit_estimate.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_exponential_reports_its_floor() {
        let tr = traj_of(|t| (-t).exp() + 0.1, 20.0, 2000);
        let v = decay_verdict(&tr, 1e-3, &VerdictPolicy::default()).unwrap();
        assert_eq!(v.status, DecayStatus::NoDecay);
        assert!((v.limit_estimate.unwrap() - 0.1).abs() <= 1e-3);
    }

    #[test]
    fn slow_logarithmic_decay_stays_inconclusive() {
        let tr = traj_of(|t| 1.0 / (t + 2.0).ln(), 100.0, 4000);
        let v = decay_verdict(&tr, 1e-3, &VerdictPolicy::default()).unwrap();
        assert_eq!(v.status, DecayStatus::Inconclusive);
    }

    #[test]
    fn short_trajectories_are_config_errors() {
        let tr = traj_of(|t| (-t).exp(), 1.0, 2);
        assert!(matches!(
            decay_verdict(&tr, 1e-3, &VerdictPolicy::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn scale_equivariance_of_the_status() {
        let policy = VerdictPolicy::default();
        let cases: [(fn(f64) -> f64, f64); 3] = [
            (|t| (-t).exp(), 1e-3),
            (|t| (-t).exp() + 0.1, 1e-3),
            (|_| 1.0, 1e-3),
        ];
        for lambda in [1e-6, 0.5, 1.0, 3.0, 1e6] {
            for (f, eps) in cases {
                let base = decay_verdict(&traj_of(f, 20.0, 1000), eps, &policy).unwrap();
                let scaled = decay_verdict(
                    &traj_of(|t| lambda * f(t), 20.0, 1000),
                    lambda * eps,
                    &policy,
                )
                .unwrap();
                assert_eq!(base.status, scaled.status, "lambda = {lambda}");
            }
        }
    }

    #[test]
    fn rate_fit_recovers_a_power_law() {
        let tr = traj_of(|t| (1.0 + t).powi(-2), 1000.0, 5000);
        let v = decay_verdict(&tr, 1e-2, &VerdictPolicy::default()).unwrap();
        let beta = v.rate_exponent.unwrap();
        assert!((beta - 2.0).abs() < 0.05, "fitted exponent {beta}");
    }
}
