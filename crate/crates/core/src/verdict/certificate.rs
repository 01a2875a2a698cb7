//! Integral certificate along a computed trajectory: the tail verdict of
//! `ω(y(t))·φ(t)` tabulated on the trajectory's own grid.

use crate::error::Result;
use crate::funcspace::{tail_verdict, OmegaFn, TailVerdict, UnivariateFn, WindowPolicy};
use crate::odesolve::Trajectory;

/// Finite-horizon certificate for `∫ ω(y(t))·φ(t) dt` along `y`.
pub fn integral_certificate(
    y: &Trajectory,
    omega: &OmegaFn,
    phi: &UnivariateFn,
    tol: f64,
    policy: &WindowPolicy,
) -> Result<TailVerdict> {
    let mut values = Vec::with_capacity(y.len());
    for (i, t) in y.times().iter().enumerate() {
        values.push(omega.eval(y.value(i))? * phi.eval(*t)?);
    }
    let integrand = UnivariateFn::tabulated(y.times().to_vec(), values, false)?;
    tail_verdict(&integrand, tol, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odesolve::TrajectoryMeta;

    fn traj_of(f: impl Fn(f64) -> f64, times: Vec<f64>) -> Trajectory {
        let values: Vec<f64> = times.iter().map(|t| f(*t)).collect();
        Trajectory::scalar(times, values, TrajectoryMeta::default()).unwrap()
    }

    fn identity_omega() -> OmegaFn {
        OmegaFn::certified(UnivariateFn::identity(), 10.0, 64).unwrap()
    }

    fn uniform(t_end: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| t_end * i as f64 / n as f64).collect()
    }

    fn log_grid(t_end: f64, n: usize) -> Vec<f64> {
        let mut grid = vec![0.0];
        for i in 0..=n {
            grid.push(1e-2 * (t_end / 1e-2).powf(i as f64 / n as f64));
        }
        grid
    }

    #[test]
    fn exponential_trajectory_integrates_to_one() {
        let y = traj_of(|t| (-t).exp(), uniform(60.0, 6000));
        let phi = UnivariateFn::constant(1.0).unwrap();
        let v = integral_certificate(&y, &identity_omega(), &phi, 1e-4, &WindowPolicy::default())
            .unwrap();
        match v {
            TailVerdict::Converged { estimate, .. } => {
                assert!((estimate - 1.0).abs() < 1e-3, "estimate {estimate}")
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn combined_power_tail_converges() {
        // y = 1/(1+t), φ = (1+t)^{-1/2}: integrand exponent 3/2
        let y = traj_of(|t| 1.0 / (1.0 + t), log_grid(1e6, 4000));
        let phi = UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap();
        let v = integral_certificate(&y, &identity_omega(), &phi, 5e-3, &WindowPolicy::default())
            .unwrap();
        assert!(v.is_converged(), "got {v:?}");
    }

    #[test]
    fn harmonic_tail_diverges() {
        let y = traj_of(|_| 1.0, log_grid(1e6, 2000));
        let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let v = integral_certificate(&y, &identity_omega(), &phi, 1e-6, &WindowPolicy::default())
            .unwrap();
        assert!(v.is_diverged(), "got {v:?}");
    }
}
