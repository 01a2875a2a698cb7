//! The monotone clock `s(t) = ∫_0^t a(ξ) dξ` and trajectory resampling
//! into it.

use crate::error::{Error, Result};
use crate::funcspace::{integrate_fn, UnivariateFn};
use crate::odesolve::trajectory::{Clock, Trajectory, TrajectoryMeta};

const KNOTS: usize = 1024;

/// Forward tabulation of `s(t)` with an inverse by monotone bisection on
/// the tabulation, refined by quadrature inside each cell.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    knot_t: Vec<f64>,
    knot_s: Vec<f64>,
    rate: UnivariateFn,
    quad_tol: f64,
}

/// Tabulate `s(t) = ∫_0^t a` by cumulative quadrature on `[0, t_end]`.
/// The rate must be strictly positive at every sample.
pub fn reparameterize(rate: &UnivariateFn, t_end: f64, tol: f64) -> Result<MonotoneMap> {
    if !(t_end > 0.0) {
        return Err(Error::Config(format!("t_end must be > 0, got {t_end}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be > 0, got {tol}")));
    }
    let knot_t: Vec<f64> = (0..=KNOTS).map(|i| t_end * i as f64 / KNOTS as f64).collect();
    for &t in &knot_t {
        let a = rate.eval(t)?;
        if !(a > 0.0) {
            return Err(Error::Validation(format!(
                "clock rate must be positive, a({t}) = {a}"
            )));
        }
    }
    let knot_s =
        crate::funcspace::cumulative_on_grid(&|x| rate.eval(x), &knot_t, tol)?;
    for w in knot_s.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Validation(
                "clock tabulation failed to be strictly increasing".into(),
            ));
        }
    }
    Ok(MonotoneMap { knot_t, knot_s, rate: rate.clone(), quad_tol: tol })
}

impl MonotoneMap {
    pub fn t_end(&self) -> f64 {
        *self.knot_t.last().unwrap()
    }

    pub fn s_end(&self) -> f64 {
        *self.knot_s.last().unwrap()
    }

    /// `s(t)`: tabulated prefix plus a quadrature remainder inside the cell.
    pub fn forward(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t > self.t_end() {
            return Err(Error::Domain(format!(
                "t={t} outside the map range [0, {}]",
                self.t_end()
            )));
        }
        let i = match self.knot_t.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return Ok(self.knot_s[i]),
            Err(i) => i - 1,
        };
        let rest =
            integrate_fn(&|x| self.rate.eval(x), self.knot_t[i], t, self.quad_tol)?.value;
        Ok(self.knot_s[i] + rest)
    }

    /// `t(s)` by bisection on the bracketing tabulation cell.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if s < 0.0 || s > self.s_end() {
            return Err(Error::Domain(format!(
                "s={s} outside the map range [0, {}]",
                self.s_end()
            )));
        }
        let i = match self.knot_s.binary_search_by(|x| x.partial_cmp(&s).unwrap()) {
            Ok(i) => return Ok(self.knot_t[i]),
            Err(i) => i - 1,
        };
        let mut lo = self.knot_t[i];
        let mut hi = self.knot_t[i + 1];
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.forward(mid)? < s {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-13 * (1.0 + hi.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Resample a scalar trajectory from the `t`-clock onto a uniform grid of
/// the `s`-clock; `w(0) = g(0)` by construction. Also returns the `t`
/// preimages of the output grid.
pub fn transform_trajectory_with_times(
    traj: &Trajectory,
    map: &MonotoneMap,
) -> Result<(Trajectory, Vec<f64>)> {
    if traj.last_time() > map.t_end() + 1e-12 {
        return Err(Error::Domain(format!(
            "trajectory reaches t={} beyond the map range {}",
            traj.last_time(),
            map.t_end()
        )));
    }
    let s_hi = map.forward(traj.last_time())?;
    let n = traj.len().max(2);
    let mut s_grid = Vec::with_capacity(n);
    let mut t_grid = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let s = s_hi * k as f64 / (n - 1) as f64;
        let t = if k == 0 {
            traj.first_time()
        } else if k == n - 1 {
            traj.last_time()
        } else {
            map.inverse(s)?
        };
        s_grid.push(s);
        t_grid.push(t);
        values.push(traj.value_at(t)?);
    }
    let meta = TrajectoryMeta {
        scheme: traj.meta.scheme.clone(),
        dt: traj.meta.dt,
        scenario: traj.meta.scenario.clone(),
        clip_events: traj.meta.clip_events,
        complete: traj.meta.complete,
        clock: Clock::S { map_horizon: map.s_end() },
    };
    Ok((Trajectory::scalar(s_grid, values, meta)?, t_grid))
}

/// Resample a scalar trajectory into the `s`-clock.
pub fn transform_trajectory(traj: &Trajectory, map: &MonotoneMap) -> Result<Trajectory> {
    transform_trajectory_with_times(traj, map).map(|(t, _)| t)
}
