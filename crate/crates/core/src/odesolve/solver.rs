//! Fixed-step reference solver for `u̇ = field(t, u)`.
//!
//! Classic RK4 is the default: reproducible trajectories for golden tests,
//! with optional step halving when an embedded two-half-steps error
//! estimate exceeds tolerance. A Picard-iterated backward Euler variant is
//! available for mildly stiff scalar problems.

use crate::error::{Error, Result};
use crate::odesolve::trajectory::{Trajectory, TrajectoryMeta};

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Explicit classic Runge–Kutta.
    Rk4,
    /// Backward Euler with fixed-point iteration on the implicit stage.
    SemiImplicit,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Rk4 => "rk4",
            Scheme::SemiImplicit => "semi-implicit",
        }
    }
}

/// Solver configuration; `max_steps` bounds runtime.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub scheme: Scheme,
    pub dt: f64,
    pub t_end: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
    /// Keep every k-th step (the initial and final states are always kept).
    pub record_every: usize,
    /// Halve the step when the embedded error estimate exceeds tolerance.
    pub adaptive: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            scheme: Scheme::Rk4,
            dt: 1e-3,
            t_end: 10.0,
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_steps: 100_000_000,
            record_every: 1,
            adaptive: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0) {
            return Err(Error::Config(format!("t_end must be > 0, got {}", self.t_end)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_end) {
            return Err(Error::Config(format!(
                "step {} must be positive and at most t_end {}",
                self.dt, self.t_end
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Config("solver tolerances must be > 0".into()));
        }
        if self.max_steps == 0 || self.record_every == 0 {
            return Err(Error::Config("max_steps and record_every must be ≥ 1".into()));
        }
        Ok(())
    }
}

fn rk4_step<F>(field: &F, t: f64, u: &[f64], dt: f64, out: &mut [f64])
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = u.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    field(t, u, &mut k1);
    for i in 0..n {
        tmp[i] = u[i] + 0.5 * dt * k1[i];
    }
    field(t + 0.5 * dt, &tmp, &mut k2);
    for i in 0..n {
        tmp[i] = u[i] + 0.5 * dt * k2[i];
    }
    field(t + 0.5 * dt, &tmp, &mut k3);
    for i in 0..n {
        tmp[i] = u[i] + dt * k3[i];
    }
    field(t + dt, &tmp, &mut k4);
    for i in 0..n {
        out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

fn backward_euler_step<F>(
    field: &F,
    t: f64,
    u: &[f64],
    dt: f64,
    tol: f64,
    out: &mut [f64],
) -> Result<()>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = u.len();
    let mut rhs = vec![0.0; n];
    out.copy_from_slice(u);
    for _ in 0..64 {
        field(t + dt, out, &mut rhs);
        let mut delta = 0.0f64;
        for i in 0..n {
            let next = u[i] + dt * rhs[i];
            delta = delta.max((next - out[i]).abs());
            out[i] = next;
        }
        if delta <= tol * (1.0 + out.iter().fold(0.0f64, |a, v| a.max(v.abs()))) {
            return Ok(());
        }
    }
    Err(Error::Numeric(format!(
        "implicit stage did not converge at t={t} with dt={dt}"
    )))
}

/// Integrate `u̇ = field(t, u)` on `[0, t_end]`. Non-finite states abort
/// the run and the partial trajectory comes back flagged incomplete, as
/// does step-budget exhaustion.
pub fn solve_system<F>(field: F, u0: &[f64], config: &SolverConfig) -> Result<Trajectory>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    config.validate()?;
    let n = u0.len();
    if n == 0 {
        return Err(Error::Config("state must have at least one component".into()));
    }

    let mut times = vec![0.0];
    let mut data = u0.to_vec();
    let mut u = u0.to_vec();
    let mut next = vec![0.0; n];
    let mut t = 0.0f64;
    let mut dt_cur = config.dt;
    let mut steps = 0usize;
    let mut complete = true;
    let mut since_recorded = 0usize;

    while t < config.t_end {
        if steps >= config.max_steps {
            complete = false;
            break;
        }
        let dt = dt_cur.min(config.t_end - t);
        match config.scheme {
            Scheme::Rk4 => {
                rk4_step(&field, t, &u, dt, &mut next);
                if config.adaptive {
                    // embedded estimate: one full step vs two half steps
                    let mut half = vec![0.0; n];
                    let mut half2 = vec![0.0; n];
                    rk4_step(&field, t, &u, 0.5 * dt, &mut half);
                    rk4_step(&field, t + 0.5 * dt, &half, 0.5 * dt, &mut half2);
                    let mut err = 0.0f64;
                    let mut scale = config.abs_tol;
                    for i in 0..n {
                        err = err.max((next[i] - half2[i]).abs());
                        scale = scale.max(config.rel_tol * half2[i].abs());
                    }
                    if err > scale && dt_cur > config.dt * 2f64.powi(-24) {
                        dt_cur *= 0.5;
                        steps += 1;
                        continue;
                    }
                    next.copy_from_slice(&half2);
                    if err < 0.01 * scale && dt_cur < config.dt {
                        dt_cur = (dt_cur * 2.0).min(config.dt);
                    }
                }
            }
            Scheme::SemiImplicit => {
                backward_euler_step(&field, t, &u, dt, config.rel_tol.max(1e-13), &mut next)?;
            }
        }
        if next.iter().any(|v| !v.is_finite()) {
            complete = false;
            break;
        }
        t += dt;
        u.copy_from_slice(&next);
        steps += 1;
        since_recorded += 1;
        if since_recorded >= config.record_every || t >= config.t_end {
            times.push(t);
            data.extend_from_slice(&u);
            since_recorded = 0;
        }
    }

    let meta = TrajectoryMeta {
        scheme: config.scheme.name().to_string(),
        dt: config.dt,
        complete,
        ..Default::default()
    };
    Trajectory::new(times, data, n, meta)
}
