//! Semi-implicit time stepping for the 1D semilinear scenario.
//!
//! The stiff linear part `γ(t)L` is treated implicitly (trapezoidal
//! weighting, one tridiagonal solve per step), the nonlinearity and the
//! forcing explicitly; `γ` is evaluated at the step midpoint. Along the
//! run the discrete norm inequality
//! `Δ‖u‖/Δt ≤ −γ·λ₁·‖u‖ + ‖f‖ + tol` is recorded at every step.

use crate::error::{Error, Result};
use crate::odesolve::{Trajectory, TrajectoryMeta};
use crate::pde::grid::Grid1D;
use crate::pde::operator::{assemble_operator, DiscreteOperator};
use crate::pde::scenario::PdeScenario;

/// Stepping configuration for the PDE simulator.
#[derive(Debug, Clone)]
pub struct PdeConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Keep every k-th norm sample (initial and final always kept).
    pub record_every: usize,
    /// Capture full states at (the step closest after) these times.
    pub snapshot_times: Vec<f64>,
    /// Slack for the per-step norm residual check.
    pub residual_tol: f64,
    pub max_steps: usize,
}

impl Default for PdeConfig {
    fn default() -> Self {
        PdeConfig {
            dt: 1e-3,
            t_end: 1.0,
            record_every: 1,
            snapshot_times: Vec::new(),
            residual_tol: 1e-8,
            max_steps: 100_000_000,
        }
    }
}

impl PdeConfig {
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
        if self.record_every == 0 || self.max_steps == 0 {
            return Err(Error::Config("record_every and max_steps must be ≥ 1".into()));
        }
        if !(self.residual_tol > 0.0) {
            return Err(Error::Config("residual tolerance must be > 0".into()));
        }
        Ok(())
    }
}

/// Full interior state at one capture time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub time: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
}

/// Outcome of a simulation: the norm trajectory, captured snapshots, the
/// per-step residual record and the running norm supremum.
#[derive(Debug)]
pub struct PdeRun {
    pub norm_trajectory: Trajectory,
    pub snapshots: Vec<Snapshot>,
    pub residual_violations: usize,
    /// Largest `Δ‖u‖/Δt − (−γλ₁‖u‖ + ‖f‖)` observed.
    pub worst_residual: f64,
    pub sup_norm: f64,
    pub lambda1: f64,
    pub aborted: bool,
}

struct Stepper<'a> {
    op: DiscreteOperator,
    grid: &'a Grid1D,
    scenario: &'a PdeScenario,
    profile: Vec<f64>,
    profile_norm: f64,
    // work buffers
    lu: Vec<f64>,
    hu: Vec<f64>,
    rhs: Vec<f64>,
}

impl<'a> Stepper<'a> {
    fn new(scenario: &'a PdeScenario, grid: &'a Grid1D) -> Result<Self> {
        let op = assemble_operator(grid);
        let (profile, profile_norm) = match &scenario.forcing {
            Some(f) => {
                let p = f.profile.realize(grid)?;
                let norm = grid.norm(&p);
                (p, norm)
            }
            None => (vec![0.0; grid.n()], 0.0),
        };
        let n = grid.n();
        Ok(Stepper {
            op,
            grid,
            scenario,
            profile,
            profile_norm,
            lu: vec![0.0; n],
            hu: vec![0.0; n],
            rhs: vec![0.0; n],
        })
    }

    /// One trapezoidal-implicit step from `t`; returns `(γ_mid, ‖f_mid‖)`.
    fn advance(&mut self, t: f64, dt: f64, u: &mut [f64]) -> Result<(f64, f64)> {
        let t_mid = t + 0.5 * dt;
        let gamma = self.scenario.gamma.eval(t_mid)?;
        if !(gamma > 0.0) {
            return Err(Error::Validation(format!(
                "dissipation rate must be positive, γ({t_mid}) = {gamma}"
            )));
        }
        let amp = match &self.scenario.forcing {
            Some(f) => f.amplitude.eval(t_mid)?,
            None => 0.0,
        };
        self.op.apply(u, &mut self.lu);
        self.scenario.nonlinearity.apply(u, &mut self.hu);
        let half = 0.5 * dt * gamma;
        for i in 0..u.len() {
            self.rhs[i] =
                u[i] + half * self.lu[i] - dt * gamma * self.hu[i] + dt * amp * self.profile[i];
        }
        let c = half / (self.grid.h() * self.grid.h());
        self.op.solve_shifted(c, &mut self.rhs)?;
        u.copy_from_slice(&self.rhs);
        Ok((gamma, amp.abs() * self.profile_norm))
    }
}

/// Simulate the scenario, recording the norm trajectory, snapshots at the
/// configured times and the per-step norm residual check.
pub fn simulate(scenario: &PdeScenario, grid: &Grid1D, config: &PdeConfig) -> Result<PdeRun> {
    config.validate()?;
    scenario.validate(grid)?;
    let mut stepper = Stepper::new(scenario, grid)?;
    let lambda1 = stepper.op.lambda1();

    let mut u = scenario.initial.realize(grid)?;
    let x = grid.points();

    let mut snapshot_times = config.snapshot_times.clone();
    snapshot_times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    snapshot_times.dedup();
    let mut next_snapshot = 0usize;
    let mut snapshots = Vec::new();
    // capture t = 0 snapshots immediately
    while next_snapshot < snapshot_times.len() && snapshot_times[next_snapshot] <= 0.0 {
        snapshots.push(Snapshot { time: 0.0, x: x.clone(), u: u.clone() });
        next_snapshot += 1;
    }

    let mut norm = grid.norm(&u);
    let mut times = vec![0.0];
    let mut norms = vec![norm];
    let mut sup_norm = norm;
    let mut worst_residual = f64::NEG_INFINITY;
    let mut residual_violations = 0usize;
    let mut aborted = false;

    let mut t = 0.0f64;
    let mut steps = 0usize;
    let mut since_recorded = 0usize;
    while t < config.t_end {
        if steps >= config.max_steps {
            aborted = true;
            break;
        }
        let dt = config.dt.min(config.t_end - t);
        let (gamma, f_norm) = stepper.advance(t, dt, &mut u)?;
        if u.iter().any(|v| !v.is_finite()) {
            aborted = true;
            break;
        }
        let new_norm = grid.norm(&u);
        let mid = 0.5 * (norm + new_norm);
        let residual = (new_norm - norm) / dt - (-gamma * lambda1 * mid + f_norm);
        worst_residual = worst_residual.max(residual);
        if residual > config.residual_tol {
            residual_violations += 1;
        }
        t += dt;
        norm = new_norm;
        sup_norm = sup_norm.max(norm);
        steps += 1;
        since_recorded += 1;
        if since_recorded >= config.record_every || t >= config.t_end {
            times.push(t);
            norms.push(norm);
            since_recorded = 0;
        }
        while next_snapshot < snapshot_times.len() && t >= snapshot_times[next_snapshot] {
            snapshots.push(Snapshot { time: t, x: x.clone(), u: u.clone() });
            next_snapshot += 1;
        }
    }

    let meta = TrajectoryMeta {
        scheme: "semi-implicit".into(),
        dt: config.dt,
        complete: !aborted,
        ..Default::default()
    };
    Ok(PdeRun {
        norm_trajectory: Trajectory::scalar(times, norms, meta)?,
        snapshots,
        residual_violations,
        worst_residual,
        sup_norm,
        lambda1,
        aborted,
    })
}

/// Evolve two initial states in lockstep under identical dynamics and
/// return `‖u − v‖` at every step (index 0 is the initial difference).
pub fn difference_norms(
    scenario: &PdeScenario,
    grid: &Grid1D,
    config: &PdeConfig,
    initial_a: &[f64],
    initial_b: &[f64],
) -> Result<Vec<f64>> {
    config.validate()?;
    scenario.validate(grid)?;
    if initial_a.len() != grid.n() || initial_b.len() != grid.n() {
        return Err(Error::Config("initial states must match the grid".into()));
    }
    let mut stepper_a = Stepper::new(scenario, grid)?;
    let mut stepper_b = Stepper::new(scenario, grid)?;
    let mut ua = initial_a.to_vec();
    let mut ub = initial_b.to_vec();
    let diff = |a: &[f64], b: &[f64]| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let mut out = vec![grid.norm(&diff(&ua, &ub))];
    let mut t = 0.0;
    let mut steps = 0usize;
    while t < config.t_end && steps < config.max_steps {
        let dt = config.dt.min(config.t_end - t);
        stepper_a.advance(t, dt, &mut ua)?;
        stepper_b.advance(t, dt, &mut ub)?;
        t += dt;
        steps += 1;
        out.push(grid.norm(&diff(&ua, &ub)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::UnivariateFn;
    use crate::pde::scenario::{Forcing, Nonlinearity, SpaceProfile};

    fn heat_scenario(nonlinearity: Nonlinearity) -> PdeScenario {
        PdeScenario {
            gamma: UnivariateFn::constant(1.0).unwrap(),
            nonlinearity,
            forcing: None,
            initial: SpaceProfile::Sine { mode: 1, scale: 1.0 },
            forcing_decay_exponent: None,
        }
    }

    #[test]
    fn linear_benchmark_matches_the_spectral_solution() {
        let grid = Grid1D::unit_pi(199).unwrap();
        let config = PdeConfig { dt: 1e-3, t_end: 1.0, ..Default::default() };
        let run = simulate(&heat_scenario(Nonlinearity::None), &grid, &config).unwrap();
        let lambda1 = run.lambda1;
        let expected = (-lambda1).exp() * (std::f64::consts::PI / 2.0).sqrt();
        let got = run.norm_trajectory.value(run.norm_trajectory.len() - 1);
        assert!((got - expected).abs() < 2e-3, "{got} vs {expected}");
        assert!((got - 0.4611).abs() < 2e-3, "{got}");
        assert_eq!(run.residual_violations, 0, "worst residual {}", run.worst_residual);
    }

    #[test]
    fn zero_initial_state_stays_zero() {
        let grid = Grid1D::unit_pi(20).unwrap();
        let mut scenario = heat_scenario(Nonlinearity::Cubic);
        scenario.initial = SpaceProfile::Zero;
        let config = PdeConfig { dt: 1e-2, t_end: 2.0, ..Default::default() };
        let run = simulate(&scenario, &grid, &config).unwrap();
        assert_eq!(run.sup_norm, 0.0);
    }

    #[test]
    fn cubic_damping_stays_below_the_linear_run() {
        let grid = Grid1D::unit_pi(99).unwrap();
        let config = PdeConfig { dt: 1e-3, t_end: 1.0, record_every: 10, ..Default::default() };
        let linear = simulate(&heat_scenario(Nonlinearity::None), &grid, &config).unwrap();
        let cubic = simulate(&heat_scenario(Nonlinearity::Cubic), &grid, &config).unwrap();
        assert_eq!(linear.norm_trajectory.len(), cubic.norm_trajectory.len());
        for i in 0..linear.norm_trajectory.len() {
            assert!(
                cubic.norm_trajectory.value(i) <= linear.norm_trajectory.value(i) + 1e-9,
                "cubic run exceeded the linear run at index {i}"
            );
        }
    }

    #[test]
    fn zero_forcing_norm_is_nonincreasing_and_tracks_the_rate() {
        let grid = Grid1D::unit_pi(199).unwrap();
        let config = PdeConfig { dt: 1e-3, t_end: 1.0, record_every: 50, ..Default::default() };
        let run = simulate(&heat_scenario(Nonlinearity::None), &grid, &config).unwrap();
        let tr = &run.norm_trajectory;
        let norm0 = (std::f64::consts::PI / 2.0).sqrt();
        for i in 1..tr.len() {
            assert!(tr.value(i) <= tr.value(i - 1) + 1e-12);
            let expected = norm0 * (-run.lambda1 * tr.times()[i]).exp();
            let rel = (tr.value(i) - expected).abs() / expected;
            assert!(rel < 2e-3, "relative drift {rel} at t={}", tr.times()[i]);
        }
    }

    #[test]
    fn snapshots_are_captured_at_requested_times() {
        let grid = Grid1D::unit_pi(30).unwrap();
        let config = PdeConfig {
            dt: 1e-2,
            t_end: 1.0,
            snapshot_times: vec![0.0, 0.5, 1.0],
            ..Default::default()
        };
        let run = simulate(&heat_scenario(Nonlinearity::None), &grid, &config).unwrap();
        assert_eq!(run.snapshots.len(), 3);
        assert!(run.snapshots[0].time <= 1e-12);
        assert!((run.snapshots[1].time - 0.5).abs() < 1.1e-2);
        assert!((run.snapshots[2].time - 1.0).abs() < 1.1e-2);
        assert_eq!(run.snapshots[1].u.len(), grid.n());
    }

    #[test]
    fn forced_run_respects_the_norm_residual() {
        let grid = Grid1D::unit_pi(99).unwrap();
        let scenario = PdeScenario {
            gamma: UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap(),
            nonlinearity: Nonlinearity::Cubic,
            forcing: Some(Forcing {
                amplitude: UnivariateFn::power_law(0.5, 2.0, 1.0).unwrap(),
                profile: SpaceProfile::UnitSine { mode: 1 },
            }),
            initial: SpaceProfile::Zero,
            forcing_decay_exponent: Some(2.0),
        };
        let config = PdeConfig { dt: 1e-2, t_end: 20.0, record_every: 10, ..Default::default() };
        let run = simulate(&scenario, &grid, &config).unwrap();
        assert_eq!(run.residual_violations, 0, "worst residual {}", run.worst_residual);
        assert!(run.sup_norm > 0.0);
        assert!(run.sup_norm < 1.0, "sup norm {}", run.sup_norm);
    }

    #[test]
    fn grid_refinement_improves_the_benchmark_at_second_order() {
        let continuum = (-1.0f64).exp() * (std::f64::consts::PI / 2.0).sqrt();
        let mut errors = Vec::new();
        for n in [99usize, 199, 399] {
            let grid = Grid1D::unit_pi(n).unwrap();
            let config = PdeConfig { dt: 1e-3, t_end: 1.0, record_every: 1000, ..Default::default() };
            let run = simulate(&heat_scenario(Nonlinearity::None), &grid, &config).unwrap();
            let got = run.norm_trajectory.value(run.norm_trajectory.len() - 1);
            errors.push((got - continuum).abs());
        }
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order >= 1.8, "observed order {order} (errors {errors:?})");
        }
    }

    #[test]
    fn contractivity_of_difference_norms() {
        let grid = Grid1D::unit_pi(99).unwrap();
        let scenario = heat_scenario(Nonlinearity::Cubic);
        let config = PdeConfig { dt: 1e-3, t_end: 2.0, ..Default::default() };
        let a = SpaceProfile::Sine { mode: 1, scale: 1.0 }.realize(&grid).unwrap();
        let b = SpaceProfile::Sine { mode: 2, scale: 0.5 }.realize(&grid).unwrap();
        let norms = difference_norms(&scenario, &grid, &config, &a, &b).unwrap();
        for w in norms.windows(2) {
            assert!(w[1] <= w[0] + 1e-8, "difference grew: {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn energy_inequality_along_the_trajectory() {
        let grid = Grid1D::unit_pi(99).unwrap();
        let scenario = PdeScenario {
            gamma: UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap(),
            nonlinearity: Nonlinearity::Cubic,
            forcing: Some(Forcing {
                amplitude: UnivariateFn::power_law(0.5, 2.0, 1.0).unwrap(),
                profile: SpaceProfile::UnitSine { mode: 1 },
            }),
            initial: SpaceProfile::Sine { mode: 1, scale: 0.5 },
            forcing_decay_exponent: Some(2.0),
        };
        let config = PdeConfig { dt: 1e-3, t_end: 5.0, ..Default::default() };
        let run = simulate(&scenario, &grid, &config).unwrap();
        let tr = &run.norm_trajectory;
        for i in 1..tr.len() {
            let (t0, t1) = (tr.times()[i - 1], tr.times()[i]);
            let (n0, n1) = (tr.value(i - 1), tr.value(i));
            let g0 = n0 * n0;
            let g1 = n1 * n1;
            let g_mid = 0.5 * (g0 + g1);
            let t_mid = 0.5 * (t0 + t1);
            let gamma = scenario.gamma.eval(t_mid).unwrap();
            let f_norm = 0.5 / (1.0 + t_mid) / (1.0 + t_mid);
            let lhs = (g1 - g0) / (t1 - t0);
            let rhs = -2.0 * run.lambda1 * gamma * g_mid + 2.0 * f_norm * g_mid.sqrt();
            assert!(
                lhs <= rhs + 1e-6 * (1.0 + g_mid),
                "energy inequality violated at t={t_mid}: {lhs} vs {rhs}"
            );
        }
    }
}
