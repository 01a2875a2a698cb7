//! The scalar surrogate `ġ = −a(t)·f(g) + b(t)`.
//!
//! The differential inequality is integrated as an equality: the equality
//! trajectory is the extremal admissible one, so a decay conclusion for it
//! exercises the sharp case. `g` models a norm, so negative under/overshoot
//! is clipped to 0 with a recorded event.

use crate::error::{Error, Result};
use crate::funcspace::UnivariateFn;
use crate::odesolve::solver::SolverConfig;
use crate::odesolve::trajectory::{Trajectory, TrajectoryMeta};

/// Integrate `ġ = −a(t)·f(g) + b(t)` from `g(0) = g0 ≥ 0`.
///
/// Preconditions: `a > 0` along the run, `b ≥ 0`, `f(0) = 0` and `f ≥ 0`
/// on states. The nonlinearity is evaluated at the clipped state, so RK4
/// stages never see a negative argument.
pub fn solve_surrogate(
    rate: &UnivariateFn,
    nonlinearity: &UnivariateFn,
    forcing: &UnivariateFn,
    g0: f64,
    config: &SolverConfig,
) -> Result<Trajectory> {
    config.validate()?;
    if !(g0 >= 0.0) {
        return Err(Error::Config(format!("initial state must be ≥ 0, got {g0}")));
    }
    let f0 = nonlinearity.eval(0.0)?;
    if f0.abs() > 1e-9 {
        return Err(Error::Validation(format!("nonlinearity must vanish at 0, f(0) = {f0}")));
    }

    let deriv = |t: f64, g: f64| -> Result<f64> {
        let a = rate.eval(t)?;
        if !(a > 0.0) {
            return Err(Error::Validation(format!("rate must be positive, a({t}) = {a}")));
        }
        let b = forcing.eval(t)?;
        Ok(-a * nonlinearity.eval(g.max(0.0))? + b)
    };

    let mut times = vec![0.0];
    let mut values = vec![g0];
    let mut g = g0;
    let mut t = 0.0f64;
    let mut clip_events = 0usize;
    let mut complete = true;
    let mut steps = 0usize;
    let mut since_recorded = 0usize;

    while t < config.t_end {
        if steps >= config.max_steps {
            complete = false;
            break;
        }
        let dt = config.dt.min(config.t_end - t);
        let k1 = deriv(t, g)?;
        let k2 = deriv(t + 0.5 * dt, g + 0.5 * dt * k1)?;
        let k3 = deriv(t + 0.5 * dt, g + 0.5 * dt * k2)?;
        let k4 = deriv(t + dt, g + dt * k3)?;
        let mut next = g + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !next.is_finite() {
            complete = false;
            break;
        }
        if next < 0.0 {
            next = 0.0;
            clip_events += 1;
        }
        t += dt;
        g = next;
        steps += 1;
        since_recorded += 1;
        if since_recorded >= config.record_every || t >= config.t_end {
            times.push(t);
            values.push(g);
            since_recorded = 0;
        }
    }

    let meta = TrajectoryMeta {
        scheme: "rk4".into(),
        dt: config.dt,
        clip_events,
        complete,
        ..Default::default()
    };
    Trajectory::scalar(times, values, meta)
}
