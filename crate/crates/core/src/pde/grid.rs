//! 1D interior grid with Dirichlet boundary and the weighted discrete norm.

use crate::error::{Error, Result};

/// Interior points of `(0, length)` with spacing `h = length/(n+1)`.
/// The discrete L² norm carries the weight `h`: `‖u‖² = h·Σ u_i²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    length: f64,
    n: usize,
    h: f64,
}

impl Grid1D {
    pub fn new(length: f64, n: usize) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::Config(format!("domain length must be > 0, got {length}")));
        }
        if n < 3 {
            return Err(Error::Config(format!("grid needs at least 3 interior points, got {n}")));
        }
        Ok(Grid1D { length, n, h: length / (n + 1) as f64 })
    }

    /// Interior grid on `(0, π)`.
    pub fn unit_pi(n: usize) -> Result<Self> {
        Grid1D::new(std::f64::consts::PI, n)
    }

    pub fn len_domain(&self) -> f64 {
        self.length
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Interior abscissae `x_i = i·h`, `i = 1..=n`.
    pub fn points(&self) -> Vec<f64> {
        (1..=self.n).map(|i| i as f64 * self.h).collect()
    }

    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.n);
        debug_assert_eq!(v.len(), self.n);
        self.h * u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn norm_sq(&self, u: &[f64]) -> f64 {
        self.inner(u, u)
    }

    pub fn norm(&self, u: &[f64]) -> f64 {
        self.norm_sq(u).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_has_the_continuum_norm_on_every_grid() {
        // h·Σ sin²(x_i) = L/2 exactly for the first mode
        for n in [3, 9, 100, 199] {
            let grid = Grid1D::unit_pi(n).unwrap();
            let u: Vec<f64> = grid.points().iter().map(|x| x.sin()).collect();
            let expected = (std::f64::consts::PI / 2.0).sqrt();
            assert!((grid.norm(&u) - expected).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn small_grids_are_rejected() {
        assert!(Grid1D::unit_pi(2).is_err());
        assert!(Grid1D::new(0.0, 10).is_err());
    }
}
