//! Sampled dissipativity check for the discretized operator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pde::grid::Grid1D;
use crate::pde::operator::assemble_operator;
use crate::pde::scenario::PdeScenario;

/// Outcome of a dissipativity probe sweep.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub pairs: usize,
    /// Largest `⟨A(t,u)−A(t,v), u−v⟩ + γ(t)·λ₁·‖u−v‖²` observed (≤ 0 means
    /// the quantitative dissipativity bound held with margin).
    pub worst_margin: f64,
    pub satisfied: bool,
    pub lambda1: f64,
}

/// For seeded random state pairs `u, v ∈ [−2, 2]^n` and each sampled time,
/// check `⟨A(t,u)−A(t,v), u−v⟩ ≤ −γ(t)·λ₁·‖u−v‖² + tol` with
/// `A(t,u) = γ(t)[Lu − h(u)]`.
pub fn dissipativity_probe(
    scenario: &PdeScenario,
    grid: &Grid1D,
    pair_count: usize,
    t_samples: &[f64],
    tol: f64,
    seed: u64,
) -> Result<ProbeReport> {
    if pair_count == 0 || t_samples.is_empty() {
        return Err(Error::Config("probe needs pairs and at least one time sample".into()));
    }
    scenario.validate(grid)?;
    let op = assemble_operator(grid);
    let n = grid.n();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..pair_count)
        .map(|_| {
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            (u, v)
        })
        .collect();

    let margins = crate::par::map_collect(&pairs, |(u, v)| -> Result<f64> {
        let mut w = vec![0.0; n];
        let mut lw = vec![0.0; n];
        let mut dh = vec![0.0; n];
        for i in 0..n {
            w[i] = u[i] - v[i];
        }
        op.apply(&w, &mut lw);
        for i in 0..n {
            dh[i] = scenario.nonlinearity.eval(u[i]) - scenario.nonlinearity.eval(v[i]);
        }
        let quad = grid.inner(&lw, &w);
        let mixed = grid.inner(&dh, &w);
        let norm_sq = grid.norm_sq(&w);
        let mut worst = f64::NEG_INFINITY;
        for &t in t_samples {
            let gamma = scenario.gamma.eval(t)?;
            let lhs = gamma * (quad - mixed);
            let rhs = -gamma * op.lambda1() * norm_sq;
            worst = worst.max(lhs - rhs);
        }
        Ok(worst)
    });

    let mut worst_margin = f64::NEG_INFINITY;
    for m in margins {
        worst_margin = worst_margin.max(m?);
    }
    Ok(ProbeReport {
        pairs: pair_count,
        worst_margin,
        satisfied: worst_margin <= tol,
        lambda1: op.lambda1(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::UnivariateFn;
    use crate::pde::scenario::{Nonlinearity, SpaceProfile};

    fn scenario(nonlinearity: Nonlinearity) -> PdeScenario {
        PdeScenario {
            gamma: UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap(),
            nonlinearity,
            forcing: None,
            initial: SpaceProfile::Zero,
            forcing_decay_exponent: None,
        }
    }

    #[test]
    fn identical_states_sit_on_the_boundary() {
        let grid = Grid1D::unit_pi(40).unwrap();
        let sc = scenario(Nonlinearity::Cubic);
        let op = assemble_operator(&grid);
        let u = vec![0.3; 40];
        let w: Vec<f64> = vec![0.0; 40];
        // both sides collapse to zero
        assert_eq!(grid.norm_sq(&w), 0.0);
        let mut lw = vec![0.0; 40];
        op.apply(&w, &mut lw);
        assert_eq!(grid.inner(&lw, &w), 0.0);
        drop((sc, u));
    }

    #[test]
    fn cubic_probe_margins_stay_nonpositive() {
        let grid = Grid1D::unit_pi(199).unwrap();
        let report = dissipativity_probe(
            &scenario(Nonlinearity::Cubic),
            &grid,
            200,
            &[0.0, 1.0, 10.0],
            1e-10,
            42,
        )
        .unwrap();
        assert!(report.satisfied, "worst margin {}", report.worst_margin);
        assert!(report.worst_margin <= 1e-10);
    }

    #[test]
    fn linear_probe_attains_equality_on_the_first_eigenvector() {
        let grid = Grid1D::unit_pi(99).unwrap();
        let op = assemble_operator(&grid);
        let sc = scenario(Nonlinearity::None);
        let w: Vec<f64> = grid.points().iter().map(|x| x.sin()).collect();
        let mut lw = vec![0.0; grid.n()];
        op.apply(&w, &mut lw);
        let gamma = sc.gamma.eval(1.0).unwrap();
        let lhs = gamma * grid.inner(&lw, &w);
        let rhs = -gamma * op.lambda1() * grid.norm_sq(&w);
        assert!((lhs - rhs).abs() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn empty_probe_is_a_config_error() {
        let grid = Grid1D::unit_pi(10).unwrap();
        assert!(dissipativity_probe(
            &scenario(Nonlinearity::None),
            &grid,
            0,
            &[0.0],
            1e-10,
            1
        )
        .is_err());
    }
}
