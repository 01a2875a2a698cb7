//! Integrated increment bound along a trajectory: checks
//! `w(s_j) − w(s_i) ≤ ∫_{s_i}^{s_j} β + tol` for sampled index pairs.

use crate::error::{Error, Result};
use crate::odesolve::trajectory::Trajectory;

/// Outcome of an increment-bound sweep.
#[derive(Debug, Clone)]
pub struct IncrementCheck {
    pub satisfied: bool,
    /// Largest `w(s_j) − w(s_i) − ∫β` over the sampled pairs.
    pub worst_excess: f64,
    pub pairs: usize,
}

/// Sample up to `anchors` log-spaced indices (always including the first
/// and last) and check every ordered pair against the cumulative trapezoid
/// of `bound` at the trajectory's own grid.
pub fn increment_bound_check<F>(
    traj: &Trajectory,
    bound: F,
    tol: f64,
    anchors: usize,
) -> Result<IncrementCheck>
where
    F: Fn(f64) -> Result<f64>,
{
    if traj.len() < 2 {
        return Err(Error::Config("increment check needs at least two samples".into()));
    }
    if anchors < 2 {
        return Err(Error::Config("increment check needs at least two anchors".into()));
    }
    let n = traj.len();
    let times = traj.times();

    let mut cumulative = Vec::with_capacity(n);
    cumulative.push(0.0);
    let mut prev = bound(times[0])?;
    let mut acc = 0.0;
    for k in 1..n {
        let cur = bound(times[k])?;
        acc += 0.5 * (times[k] - times[k - 1]) * (prev + cur);
        cumulative.push(acc);
        prev = cur;
    }

    let mut indices: Vec<usize> = (0..anchors)
        .map(|i| {
            let frac = i as f64 / (anchors - 1) as f64;
            // log-like spacing that still starts at 0
            (((n - 1) as f64).powf(frac).round() as usize).min(n - 1)
        })
        .collect();
    indices.dedup();

    let mut worst = f64::NEG_INFINITY;
    let mut pairs = 0usize;
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            let excess = (traj.value(j) - traj.value(i)) - (cumulative[j] - cumulative[i]);
            worst = worst.max(excess);
            pairs += 1;
        }
    }
    Ok(IncrementCheck { satisfied: worst <= tol, worst_excess: worst, pairs })
}
