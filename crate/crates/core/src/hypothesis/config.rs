//! Shared knobs for the hypothesis checkers.

use crate::error::{Error, Result};
use crate::funcspace::WindowPolicy;

/// Configuration for the hypothesis checkers. `s_min` realizes the
/// "for all sufficiently large s" threshold (default 10), and every
/// limit-style condition is probed up to `trend_horizon` with doubling
/// windows.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Horizon for tabulated majorants and the uniform-continuity grid.
    pub horizon: f64,
    /// Threshold realizing `t > s ≫ 1` in window growth bounds.
    pub s_min: f64,
    /// Horizon for limit trends (regularity, ratio windows, pair sampling).
    pub trend_horizon: f64,
    /// Step sizes probed by the uniform-continuity modulus.
    pub deltas: Vec<f64>,
    /// Log-spaced `s` × `t−s` counts for growth-bound pair sampling.
    pub pair_counts: (usize, usize),
    /// Relative stability tolerance for trend tests.
    pub rel_tol: f64,
    /// Absolute threshold under which a windowed ratio counts as vanished.
    pub vanish_tol: f64,
    /// Quadrature tolerance.
    pub quad_tol: f64,
    /// Tail-verdict tolerance.
    pub tail_tol: f64,
    /// Divergence bound for tail verdicts.
    pub divergence_bound: f64,
    /// ζ-grid resolution for state-sliced suprema.
    pub zeta_grid: usize,
    /// Samples for interval extrema scans.
    pub interval_samples: usize,
    /// Log-spaced samples for limit trends.
    pub trend_samples: usize,
    /// State-axis horizon for nonlinearity checks (`inf_tail`, monotonicity).
    pub state_horizon: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            horizon: 200.0,
            s_min: 10.0,
            trend_horizon: 1e5,
            deltas: vec![0.1, 0.5, 1.0],
            pair_counts: (16, 16),
            rel_tol: 0.05,
            vanish_tol: 1e-3,
            quad_tol: 1e-10,
            tail_tol: 1e-6,
            divergence_bound: 10.0,
            zeta_grid: 64,
            interval_samples: 65,
            trend_samples: 48,
            state_horizon: 100.0,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_min > 0.0) {
            return Err(Error::Config(format!("s_min must be > 0, got {}", self.s_min)));
        }
        if !(self.horizon > self.s_min) {
            return Err(Error::Config(format!(
                "horizon {} must exceed s_min {}",
                self.horizon, self.s_min
            )));
        }
        for (name, v) in [
            ("rel_tol", self.rel_tol),
            ("vanish_tol", self.vanish_tol),
            ("quad_tol", self.quad_tol),
            ("tail_tol", self.tail_tol),
            ("divergence_bound", self.divergence_bound),
        ] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.deltas.is_empty() || self.deltas.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::Config("delta grid must be non-empty and positive".into()));
        }
        Ok(())
    }

    pub fn window_policy(&self) -> WindowPolicy {
        WindowPolicy {
            divergence_bound: self.divergence_bound,
            quad_tol: self.quad_tol,
            ..WindowPolicy::default()
        }
    }
}
