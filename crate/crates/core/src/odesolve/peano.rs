//! Constructive delayed-argument iteration: the state driving the field at
//! time `s` is the stored state at `s − 1/n` (initial data for arguments
//! ≤ 0), advanced by cumulative trapezoid.

use crate::error::{Error, Result};
use crate::odesolve::trajectory::{Trajectory, TrajectoryMeta};

/// History buffer over a fixed grid with linear interpolation between
/// stored states; the delay rarely aligns with the step.
struct History {
    dt: f64,
    states: Vec<Vec<f64>>,
    initial: Vec<f64>,
}

impl History {
    fn state_at(&self, tau: f64, out: &mut [f64]) {
        if tau <= 0.0 {
            out.copy_from_slice(&self.initial);
            return;
        }
        let pos = tau / self.dt;
        let i = pos.floor() as usize;
        if i + 1 >= self.states.len() {
            // delayed argument lands on the newest stored state
            out.copy_from_slice(self.states.last().unwrap());
            return;
        }
        let w = pos - i as f64;
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.states[i][k] * (1.0 - w) + self.states[i + 1][k] * w;
        }
    }
}

/// Advance the delayed integral iteration for each delay index in
/// `n_list`; the step must satisfy `dt ≤ 1/(2·max n)` so the delay spans
/// at least two grid steps.
pub fn peano_iterates<A, Ff>(
    field: A,
    forcing: Ff,
    u0: &[f64],
    n_list: &[u32],
    t_end: f64,
    dt: f64,
) -> Result<Vec<Trajectory>>
where
    A: Fn(f64, &[f64], &mut [f64]) + Sync,
    Ff: Fn(f64, &mut [f64]) + Sync,
{
    if u0.is_empty() {
        return Err(Error::Config("initial state must have at least one component".into()));
    }
    if n_list.is_empty() {
        return Err(Error::Config("need at least one delay index".into()));
    }
    if n_list.iter().any(|n| *n < 1) {
        return Err(Error::Config("delay indices must be ≥ 1".into()));
    }
    if !(t_end > 0.0 && dt > 0.0) {
        return Err(Error::Config("t_end and dt must be positive".into()));
    }
    let max_n = *n_list.iter().max().unwrap();
    if dt > 1.0 / (2.0 * max_n as f64) {
        return Err(Error::Config(format!(
            "step {dt} too coarse for delay 1/{max_n}; need dt ≤ {}",
            1.0 / (2.0 * max_n as f64)
        )));
    }

    let dim = u0.len();
    let steps = (t_end / dt).ceil() as usize;

    let run_one = |&n: &u32| -> Result<Trajectory> {
        let delay = 1.0 / n as f64;
        let mut history =
            History { dt, states: vec![u0.to_vec()], initial: u0.to_vec() };
        let mut delayed = vec![0.0; dim];
        let mut rate = vec![0.0; dim];
        let mut force = vec![0.0; dim];

        // integrand at the grid times, built incrementally
        let eval_integrand = |history: &History,
                              t: f64,
                              delayed: &mut [f64],
                              rate: &mut [f64],
                              force: &mut [f64]|
         -> Vec<f64> {
            history.state_at(t - delay, delayed);
            field(t, delayed, rate);
            force.iter_mut().for_each(|v| *v = 0.0);
            forcing(t, force);
            rate.iter().zip(force.iter()).map(|(a, f)| a + f).collect()
        };

        let mut integrand_prev =
            eval_integrand(&history, 0.0, &mut delayed, &mut rate, &mut force);
        let mut times = vec![0.0];
        let mut data = u0.to_vec();
        for k in 0..steps {
            let t_next = ((k + 1) as f64 * dt).min(t_end);
            // the delay spans ≥ 2 steps, so the delayed argument only needs
            // already-stored history
            let integrand_next =
                eval_integrand(&history, t_next, &mut delayed, &mut rate, &mut force);
            let h = t_next - k as f64 * dt;
            let prev = history.states.last().unwrap().clone();
            let mut next = vec![0.0; dim];
            for i in 0..dim {
                next[i] = prev[i] + 0.5 * h * (integrand_prev[i] + integrand_next[i]);
            }
            if next.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numeric(format!(
                    "delayed iteration produced a non-finite state at t={t_next}"
                )));
            }
            history.states.push(next.clone());
            times.push(t_next);
            data.extend_from_slice(&next);
            integrand_prev = integrand_next;
        }

        let meta = TrajectoryMeta {
            scheme: format!("peano(n={n})"),
            dt,
            ..Default::default()
        };
        Trajectory::new(times, data, dim, meta)
    };

    let results = crate::par::map_collect(n_list, run_one);
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        out.push(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odesolve::solver::{solve_system, SolverConfig};

    fn negation(_t: f64, u: &[f64], du: &mut [f64]) {
        du[0] = -u[0];
    }

    fn no_forcing(_t: f64, _f: &mut [f64]) {}

    #[test]
    fn unit_delay_gives_a_straight_line() {
        // with n = 1 the delayed argument stays ≤ 0 on [0, 1], so the
        // integrand is the constant −1 and the iterate is 1 − t
        let iterates =
            peano_iterates(negation, no_forcing, &[1.0], &[1], 1.0, 1.0 / 8.0).unwrap();
        let tr = &iterates[0];
        for k in 0..tr.len() {
            let t = tr.times()[k];
            assert!((tr.value(k) - (1.0 - t)).abs() < 1e-12, "t={t}: {}", tr.value(k));
        }
    }

    #[test]
    fn zero_initial_state_stays_zero() {
        let iterates =
            peano_iterates(negation, no_forcing, &[0.0], &[1, 4], 2.0, 1.0 / 16.0).unwrap();
        for tr in &iterates {
            for k in 0..tr.len() {
                assert_eq!(tr.value(k), 0.0);
            }
        }
    }

    #[test]
    fn iterates_converge_to_the_reference_solution() {
        let dt = 1.0 / 1024.0;
        let n_list = [8u32, 16, 32, 64];
        let iterates =
            peano_iterates(negation, no_forcing, &[1.0], &n_list, 2.0, dt).unwrap();
        let config = SolverConfig { t_end: 2.0, dt, ..Default::default() };
        let reference = solve_system(negation, &[1.0], &config).unwrap();

        let sup_err = |tr: &Trajectory| -> f64 {
            (0..tr.len())
                .map(|k| {
                    let t = tr.times()[k];
                    (tr.value(k) - reference.value_at(t).unwrap()).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let errors: Vec<f64> = iterates.iter().map(sup_err).collect();
        for w in errors.windows(2) {
            let ratio = w[1] / w[0];
            assert!(ratio <= 0.75, "halving the delay only shrank the error by {ratio}");
        }
    }

    #[test]
    fn coarse_step_is_a_config_error() {
        let e = peano_iterates(negation, no_forcing, &[1.0], &[64], 1.0, 0.01);
        assert!(matches!(e, Err(Error::Config(_))));
    }
}
