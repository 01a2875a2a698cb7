//! Adaptive Simpson quadrature.
//!
//! Interval-bisecting Simpson with a Richardson error estimate; smooth
//! integrands dominate this crate, so the classic scheme is both cheap and
//! sharp. The closure-based entry point also serves integrands that are not
//! `UnivariateFn`s (ratios, composed trajectory integrands).

use crate::error::{Error, Result};
use crate::funcspace::UnivariateFn;

const MAX_DEPTH: u32 = 60;

/// Quadrature result with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

fn eval_checked<F>(f: &F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let v = f(x)?;
    if !v.is_finite() {
        return Err(Error::Numeric(format!("non-finite integrand value {v} at x={x}")));
    }
    Ok(v)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval_checked(f, lm)?;
    let frm = eval_checked(f, rm)?;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH {
        return Err(Error::Numeric(format!(
            "quadrature did not reach tolerance on [{a}, {b}] (max depth)"
        )));
    }
    if delta.abs() <= 15.0 * tol || (b - a).abs() < 1e-14 * (1.0 + a.abs()) {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    let (lv, le) = adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
    let (rv, re) = adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
    Ok((lv + rv, le + re))
}

/// Integrate a closure over `[a, b]` with estimated error at most
/// `tol * (1 + |result|)`.
pub fn integrate_fn<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Config(format!("quadrature tolerance must be > 0, got {tol}")));
    }
    if !(b >= a) {
        return Err(Error::Config(format!("integration bounds out of order: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0 });
    }
    let fa = eval_checked(f, a)?;
    let m = 0.5 * (a + b);
    let fm = eval_checked(f, m)?;
    let fb = eval_checked(f, b)?;
    let whole = simpson(fa, fm, fb, b - a);
    // scale the absolute budget by a coarse magnitude estimate
    let abs_tol = tol * (1.0 + whole.abs());
    let (value, error_estimate) = adapt(f, a, b, fa, fm, fb, whole, abs_tol, 0)?;
    Ok(Quadrature { value, error_estimate })
}

/// Integrate a `UnivariateFn` over `[s, t]`, `0 ≤ s ≤ t`.
pub fn integrate(f: &UnivariateFn, s: f64, t: f64, tol: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Config(format!("lower bound must be ≥ 0, got {s}")));
    }
    Ok(integrate_fn(&|x| f.eval(x), s, t, tol)?.value)
}

/// Cumulative integral of `f` tabulated on `grid` (per-cell adaptive
/// quadrature followed by a sequential prefix sum, so results do not depend
/// on the parallel feature).
pub fn cumulative_on_grid<F>(f: &F, grid: &[f64], tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if grid.len() < 2 {
        return Err(Error::Config("cumulative grid needs at least two points".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Config(format!(
                "cumulative grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    let cells = crate::par::map_range(grid.len() - 1, |i| {
        integrate_fn(f, grid[i], grid[i + 1], tol).map(|q| q.value)
    });
    let mut out = Vec::with_capacity(grid.len());
    out.push(0.0);
    let mut acc = 0.0;
    for cell in cells {
        acc += cell?;
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_over_unit_interval() {
        let f = UnivariateFn::constant(1.0).unwrap();
        assert!((integrate(&f, 0.0, 1.0, 1e-10).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_antiderivative_oracle() {
        // ∫_0^{e-1} (1+t)^{-1} dt = ln(e) = 1
        let f = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let v = integrate(&f, 0.0, std::f64::consts::E - 1.0, 1e-10).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn exponential_antiderivative_oracle() {
        // ∫_0^{50} e^{-2t} dt = (1 - e^{-100}) / 2
        let f = UnivariateFn::exponential(1.0, 2.0).unwrap();
        let v = integrate(&f, 0.0, 50.0, 1e-10).unwrap();
        assert!((v - 0.5).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn pole_inside_interval_is_numeric_error() {
        // (0+t)^{-1} is infinite at the left endpoint
        let f = UnivariateFn::power_law(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(integrate(&f, 0.0, 1.0, 1e-8), Err(Error::Numeric(_))));
    }

    #[test]
    fn bad_bounds_are_config_errors() {
        let f = UnivariateFn::constant(1.0).unwrap();
        assert!(matches!(integrate(&f, 1.0, 0.0, 1e-8), Err(Error::Config(_))));
        assert!(matches!(integrate(&f, -1.0, 1.0, 1e-8), Err(Error::Config(_))));
        assert!(matches!(integrate(&f, 0.0, 1.0, 0.0), Err(Error::Config(_))));
    }

    #[test]
    fn cumulative_matches_direct() {
        let f = UnivariateFn::exponential(1.0, 1.0).unwrap();
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.25).collect();
        let cum = cumulative_on_grid(&|x| f.eval(x), &grid, 1e-11).unwrap();
        for (i, t) in grid.iter().enumerate() {
            let direct = 1.0 - (-t).exp();
            assert!((cum[i] - direct).abs() < 1e-9, "t={t}: {} vs {direct}", cum[i]);
        }
    }
}
