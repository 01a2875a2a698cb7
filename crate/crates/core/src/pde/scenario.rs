//! Declarative description of a 1D semilinear heat scenario.

use crate::error::{Error, Result};
use crate::funcspace::UnivariateFn;
use crate::pde::grid::Grid1D;

/// Nonlinearity from the closed sign-compatible family: every member
/// satisfies `u·h(u) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Nonlinearity {
    None,
    /// `h(u) = u³`
    Cubic,
    /// `h(u) = u·|u|^(p−1)`, `p ≥ 1`
    OddPower(f64),
}

impl Nonlinearity {
    pub fn validate(&self) -> Result<()> {
        if let Nonlinearity::OddPower(p) = self {
            if !(*p >= 1.0) {
                return Err(Error::Validation(format!(
                    "odd-power nonlinearity needs p ≥ 1, got {p}"
                )));
            }
        }
        // sign compatibility sampled over a state grid
        for i in 0..=60 {
            let u = -3.0 + 6.0 * i as f64 / 60.0;
            if u * self.eval(u) < -1e-12 {
                return Err(Error::Validation(format!(
                    "nonlinearity violates u·h(u) ≥ 0 at u = {u}"
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::None => 0.0,
            Nonlinearity::Cubic => u * u * u,
            Nonlinearity::OddPower(p) => u * u.abs().powf(p - 1.0),
        }
    }

    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        for (o, v) in out.iter_mut().zip(u) {
            *o = self.eval(*v);
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Nonlinearity::None)
    }
}

/// Spatial profile realized on a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceProfile {
    Zero,
    /// `scale·sin(mode·π·x/L)`
    Sine { mode: u32, scale: f64 },
    /// First-kind sine normalized to unit discrete norm.
    UnitSine { mode: u32 },
    /// Explicit interior values.
    Values(Vec<f64>),
}

impl SpaceProfile {
    pub fn realize(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        let wave = |mode: u32| -> Vec<f64> {
            let k = mode as f64 * std::f64::consts::PI / grid.len_domain();
            grid.points().iter().map(|x| (k * x).sin()).collect()
        };
        match self {
            SpaceProfile::Zero => Ok(vec![0.0; grid.n()]),
            SpaceProfile::Sine { mode, scale } => {
                if *mode == 0 {
                    return Err(Error::Config("sine profile needs mode ≥ 1".into()));
                }
                Ok(wave(*mode).into_iter().map(|v| v * scale).collect())
            }
            SpaceProfile::UnitSine { mode } => {
                if *mode == 0 {
                    return Err(Error::Config("sine profile needs mode ≥ 1".into()));
                }
                let v = wave(*mode);
                let norm = grid.norm(&v);
                Ok(v.into_iter().map(|x| x / norm).collect())
            }
            SpaceProfile::Values(v) => {
                if v.len() != grid.n() {
                    return Err(Error::Config(format!(
                        "profile has {} values but the grid has {} interior points",
                        v.len(),
                        grid.n()
                    )));
                }
                Ok(v.clone())
            }
        }
    }
}

/// Separable forcing `amplitude(t)·profile(x)`; `‖f(t)‖` is precomputed as
/// `amplitude(t)·‖profile‖` in the discrete norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Forcing {
    pub amplitude: UnivariateFn,
    pub profile: SpaceProfile,
}

/// The full scenario: `u̇ = γ(t)[Lu − h(u)] + f(t)` with Dirichlet
/// boundary on a 1D interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeScenario {
    pub gamma: UnivariateFn,
    pub nonlinearity: Nonlinearity,
    pub forcing: Option<Forcing>,
    pub initial: SpaceProfile,
    /// Power-law decay exponent `k` of the forcing norm, when declared.
    pub forcing_decay_exponent: Option<f64>,
}

impl PdeScenario {
    pub fn validate(&self, grid: &Grid1D) -> Result<()> {
        self.nonlinearity.validate()?;
        for i in 0..=32 {
            let t = 10.0 * i as f64 / 32.0;
            let g = self.gamma.eval(t)?;
            if !(g > 0.0) {
                return Err(Error::Validation(format!(
                    "dissipation rate must be positive, γ({t}) = {g}"
                )));
            }
        }
        self.initial.realize(grid)?;
        if let Some(f) = &self.forcing {
            f.profile.realize(grid)?;
        }
        Ok(())
    }

    /// `‖f(t)‖` as a function of time for this grid, `None` when unforced.
    pub fn forcing_norm(&self, grid: &Grid1D) -> Result<Option<(UnivariateFn, f64)>> {
        match &self.forcing {
            None => Ok(None),
            Some(f) => {
                let profile = f.profile.realize(grid)?;
                Ok(Some((f.amplitude.clone(), grid.norm(&profile))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonlinearity_family_is_sign_compatible() {
        assert!(Nonlinearity::None.validate().is_ok());
        assert!(Nonlinearity::Cubic.validate().is_ok());
        assert!(Nonlinearity::OddPower(5.0).validate().is_ok());
        assert!(Nonlinearity::OddPower(0.5).validate().is_err());
        assert!((Nonlinearity::Cubic.eval(-2.0) - (-8.0)).abs() < 1e-12);
        assert!((Nonlinearity::OddPower(3.0).eval(-2.0) - (-8.0)).abs() < 1e-12);
    }

    #[test]
    fn unit_sine_has_unit_norm() {
        let grid = Grid1D::unit_pi(25).unwrap();
        let v = SpaceProfile::UnitSine { mode: 1 }.realize(&grid).unwrap();
        assert!((grid.norm(&v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn value_profile_must_match_the_grid() {
        let grid = Grid1D::unit_pi(10).unwrap();
        assert!(SpaceProfile::Values(vec![0.0; 9]).realize(&grid).is_err());
    }
}
