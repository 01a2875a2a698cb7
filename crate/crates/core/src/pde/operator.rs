//! The tridiagonal second-difference operator with Dirichlet elimination
//! and its implicit shifted solves.

use crate::error::Result;
use crate::pde::grid::Grid1D;

/// `(1, −2, 1)/h²` with Dirichlet boundary, negative definite. The cached
/// `lambda1` is the smallest eigenvalue of the negated operator:
/// `⟨-Lu, u⟩ ≥ λ₁‖u‖²`, with `λ₁ = (4/h²)·sin²(π·h/(2·L))`.
#[derive(Debug, Clone, Copy)]
pub struct DiscreteOperator {
    n: usize,
    h: f64,
    lambda1: f64,
}

/// Assemble the operator for a grid; application costs one tridiagonal
/// sweep.
pub fn assemble_operator(grid: &Grid1D) -> DiscreteOperator {
    let h = grid.h();
    let arg = std::f64::consts::PI * h / (2.0 * grid.len_domain());
    DiscreteOperator { n: grid.n(), h, lambda1: 4.0 / (h * h) * arg.sin().powi(2) }
}

impl DiscreteOperator {
    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `out = Lu` with homogeneous Dirichlet values beyond the ends.
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        debug_assert_eq!(u.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        let inv_h2 = 1.0 / (self.h * self.h);
        for i in 0..self.n {
            let left = if i == 0 { 0.0 } else { u[i - 1] };
            let right = if i + 1 == self.n { 0.0 } else { u[i + 1] };
            out[i] = (left - 2.0 * u[i] + right) * inv_h2;
        }
    }

    /// Solve `(I + c·(−L)·h²/h²)x = rhs`, i.e. the constant tridiagonal
    /// system with diagonal `1 + 2c` and off-diagonals `−c`, in place.
    /// `c = θ·dt·γ/h²` for the implicit fraction of a step. Thomas sweep;
    /// the matrix is strictly diagonally dominant for `c > 0`.
    pub fn solve_shifted(&self, c: f64, rhs: &mut [f64]) -> Result<()> {
        debug_assert_eq!(rhs.len(), self.n);
        let n = self.n;
        let diag = 1.0 + 2.0 * c;
        let off = -c;
        let mut w = vec![0.0; n];
        // forward elimination
        let mut pivot = diag;
        rhs[0] /= pivot;
        for i in 1..n {
            w[i] = off / pivot;
            pivot = diag - off * w[i];
            rhs[i] = (rhs[i] - off * rhs[i - 1]) / pivot;
        }
        // back substitution
        for i in (0..n - 1).rev() {
            rhs[i] -= w[i + 1] * rhs[i + 1];
        }
        Ok(())
    }
}
