//! The state-sliced majorant `F(t, v) = ∫_0^t max_{0≤ζ≤v} f(ξ, ζ) dξ` and
//! its finite-horizon uniform-continuity certificate.

use crate::error::{Error, Result};
use crate::funcspace::{cumulative_on_grid, sup_slice, BivariateFn, UnivariateFn};
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::report::Status;

/// Cumulative integral of the state-sliced supremum, tabulated on `t_grid`.
/// `F(0) = 0` and the tabulation is non-decreasing.
pub fn build_f(
    f: &BivariateFn,
    v: f64,
    t_grid: &[f64],
    config: &CheckConfig,
) -> Result<UnivariateFn> {
    if v < 0.0 {
        return Err(Error::Domain(format!("state bound must be ≥ 0, got {v}")));
    }
    if t_grid.first() != Some(&0.0) {
        return Err(Error::Config("majorant grid must start at 0".into()));
    }
    let zeta = config.zeta_grid;
    let slice = |x: f64| sup_slice(f, x, v, zeta);
    let mut values = cumulative_on_grid(&slice, t_grid, config.quad_tol)?;
    // quadrature noise must not break monotonicity of a cumulative
    // nonnegative integral
    for i in 1..values.len() {
        if values[i] < values[i - 1] {
            values[i] = values[i - 1];
        }
    }
    UnivariateFn::tabulated(t_grid.to_vec(), values, false)
}

/// Modulus-of-continuity table: `values[i][k]` is
/// `max_{t ≤ T_k − δ_i} F(t + δ_i) − F(t)` for doubling subhorizons `T_k`.
#[derive(Debug, Clone)]
pub struct ModulusTable {
    pub deltas: Vec<f64>,
    pub subhorizons: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Finite-horizon uniform-continuity certificate for a tabulated majorant.
#[derive(Debug, Clone)]
pub struct UcCertificate {
    pub status: Status,
    pub modulus: ModulusTable,
    pub horizon: f64,
    /// Least-squares slope of `m(δ, T)` against `T` for the largest δ.
    pub fitted_slope: f64,
}

impl UcCertificate {
    /// Modulus at the full horizon for the given δ.
    pub fn final_modulus(&self, delta: f64) -> Option<f64> {
        self.modulus
            .deltas
            .iter()
            .position(|d| (*d - delta).abs() <= 1e-12 * (1.0 + delta.abs()))
            .map(|i| *self.modulus.values[i].last().unwrap())
    }
}

fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Decide whether the tabulated majorant looks uniformly continuous in `t`.
///
/// For each δ the modulus `m(δ, T_k)` is computed on doubling subhorizons
/// `T/8, T/4, T/2, T`. The verdict is a finite-horizon certificate:
/// fail when the modulus grows monotonically and at least doubles across
/// the subhorizons, pass when it stabilizes for every δ, inconclusive
/// otherwise.
pub fn uc_certificate(majorant: &UnivariateFn, config: &CheckConfig) -> Result<UcCertificate> {
    let tab = match majorant {
        UnivariateFn::Tabulated(tab) => tab,
        _ => {
            return Err(Error::Config(
                "uniform-continuity certificate needs a tabulated majorant".into(),
            ))
        }
    };
    let horizon = tab.horizon();
    let delta_max = config.deltas.iter().cloned().fold(0.0, f64::max);
    for d in &config.deltas {
        if *d >= horizon {
            return Err(Error::Config(format!(
                "modulus step {d} is not below the horizon {horizon}"
            )));
        }
    }
    let mut subhorizons: Vec<f64> =
        [horizon / 8.0, horizon / 4.0, horizon / 2.0, horizon]
            .into_iter()
            .filter(|t| *t > 4.0 * delta_max)
            .collect();
    if subhorizons.len() < 2 {
        subhorizons = vec![horizon / 2.0, horizon];
        if horizon / 2.0 <= 2.0 * delta_max {
            return Err(Error::Config(format!(
                "horizon {horizon} too short for modulus steps up to {delta_max}"
            )));
        }
    }

    let times = tab.times().to_vec();
    let rows = crate::par::map_collect(&config.deltas, |&delta| -> Result<Vec<f64>> {
        let mut row = Vec::with_capacity(subhorizons.len());
        for &sub in &subhorizons {
            let mut m = 0.0f64;
            for &t in &times {
                if t + delta > sub {
                    break;
                }
                let jump = majorant.eval(t + delta)? - majorant.eval(t)?;
                m = m.max(jump);
            }
            row.push(m);
        }
        Ok(row)
    });
    let mut values = Vec::with_capacity(rows.len());
    for row in rows {
        values.push(row?);
    }

    let tiny = 1e-12;
    let mut statuses = Vec::new();
    for row in &values {
        let first = row[0];
        let last = *row.last().unwrap();
        let monotone_growth = row.windows(2).all(|w| w[1] >= w[0] - tiny);
        let status = if last <= (1.0 + config.rel_tol) * first + tiny {
            Status::Pass
        } else if monotone_growth && last >= 2.0 * first + tiny {
            Status::Fail
        } else {
            Status::Inconclusive
        };
        statuses.push(status);
    }
    let status = statuses.into_iter().max().unwrap_or(Status::Pass);
    let fitted_slope = lsq_slope(&subhorizons, values.last().unwrap());

    Ok(UcCertificate {
        status,
        modulus: ModulusTable { deltas: config.deltas.clone(), subhorizons, values },
        horizon,
        fitted_slope,
    })
}
