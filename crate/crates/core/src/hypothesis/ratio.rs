//! Windowed limsup estimates for ratios of weights.

use crate::error::{Error, Result};
use crate::funcspace::UnivariateFn;
use crate::hypothesis::config::CheckConfig;
use crate::hypothesis::report::Status;

/// Finite-horizon limsup estimate of `h/φ` over doubling windows.
#[derive(Debug, Clone)]
pub struct RatioLimsup {
    pub status: Status,
    /// Â: the max of the ratio over the last window.
    pub estimate: f64,
    /// `(window end, window max)` pairs.
    pub window_maxima: Vec<(f64, f64)>,
    pub horizon: f64,
}

/// Windowed maxima of a ratio closure over doubling windows `[2^k, 2^{k+1}]`
/// up to the trend horizon.
pub fn windowed_ratio_maxima<F>(
    ratio: &F,
    config: &CheckConfig,
) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64>,
{
    let per_window = (config.interval_samples / 4).max(9);
    let mut out = Vec::new();
    let mut lo = 1.0f64;
    while lo < config.trend_horizon {
        let hi = (lo * 2.0).min(config.trend_horizon);
        let mut m = f64::NEG_INFINITY;
        for i in 0..per_window {
            let t = lo + (hi - lo) * i as f64 / (per_window - 1) as f64;
            m = m.max(ratio(t)?);
        }
        out.push((hi, m));
        lo = hi;
    }
    Ok(out)
}

fn classify_maxima(maxima: &[(f64, f64)], rel_tol: f64) -> (Status, f64) {
    let tiny = 1e-300;
    let k = maxima.len();
    if k < 4 {
        return (Status::Inconclusive, maxima.last().map(|m| m.1).unwrap_or(f64::NAN));
    }
    let last = maxima[k - 1].1;
    let reference = maxima[k - 4].1;
    let tail_nondecreasing = maxima[k - 4..]
        .windows(2)
        .all(|w| w[1].1 >= w[0].1 * (1.0 - 1e-9) - tiny);
    let status = if last <= reference * (1.0 + rel_tol) + tiny {
        Status::Pass
    } else if tail_nondecreasing && last >= 1.5 * reference + tiny {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    (status, last)
}

/// Running maxima of `h/φ` over doubling windows: pass when the window
/// maxima stabilize, fail when they keep growing; `Â` is the last window's
/// maximum.
pub fn ratio_limsup(
    h: &UnivariateFn,
    phi: &UnivariateFn,
    config: &CheckConfig,
) -> Result<RatioLimsup> {
    // positivity of the denominator is a precondition, sampled where
    // float underflow cannot hide it
    for i in 1..=32 {
        let t = 10.0 * i as f64 / 32.0;
        let v = phi.eval(t)?;
        if !(v > 0.0) {
            return Err(Error::Validation(format!(
                "ratio denominator must be positive, φ({t}) = {v}"
            )));
        }
    }
    let ratio = |t: f64| -> Result<f64> {
        let num = h.eval(t)?;
        if num == 0.0 {
            return Ok(0.0);
        }
        let denom = phi.eval(t)?;
        if denom == 0.0 {
            // tail underflow of a positive family: the ratio is beyond
            // any float, which the trend classifier treats as growth
            return Ok(f64::INFINITY);
        }
        Ok(num / denom)
    };
    let window_maxima = windowed_ratio_maxima(&ratio, config)?;
    let (status, estimate) = classify_maxima(&window_maxima, config.rel_tol);
    Ok(RatioLimsup { status, estimate, window_maxima, horizon: config.trend_horizon })
}

/// Vanishing-limit check: pass when the windowed maxima of the ratio drop
/// below `vanish_tol` and keep shrinking; fail when they stabilize above it.
pub fn ratio_vanishes<F>(ratio: &F, config: &CheckConfig) -> Result<(Status, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let maxima = windowed_ratio_maxima(ratio, config)?;
    let k = maxima.len();
    let last = maxima[k - 1].1;
    if k < 4 {
        return Ok((Status::Inconclusive, last, config.trend_horizon));
    }
    let tail = &maxima[k - 4..];
    let nonincreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9) + 1e-300);
    let status = if last <= config.vanish_tol && nonincreasing {
        Status::Pass
    } else if last > config.vanish_tol && last >= tail[0].1 * (1.0 - config.rel_tol) {
        // the windowed maxima hold a floor (or keep growing) above tolerance
        Status::Fail
    } else {
        Status::Inconclusive
    };
    Ok((status, last, config.trend_horizon))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    #[test]
    fn decaying_ratio_passes_with_vanishing_estimate() {
        let h = UnivariateFn::power_law(1.0, 2.0, 1.0).unwrap();
        let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let r = ratio_limsup(&h, &phi, &cfg()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.estimate < 1e-4, "estimate {}", r.estimate);
    }

    #[test]
    fn equal_weights_give_unit_estimate() {
        let h = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let r = ratio_limsup(&h, &phi, &cfg()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!((r.estimate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_ratio_fails() {
        let h = UnivariateFn::constant(1.0).unwrap();
        let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        let r = ratio_limsup(&h, &phi, &cfg()).unwrap();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn vanishing_ratio_check() {
        let cfg = cfg();
        let h = UnivariateFn::power_law(1.0, 2.0, 1.0).unwrap();
        let g = UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap();
        let ratio = |t: f64| Ok(h.eval(t)? / g.eval(t)?);
        let (status, last, _) = ratio_vanishes(&ratio, &cfg).unwrap();
        assert_eq!(status, Status::Pass);
        assert!(last < 1e-6);

        // ratio with a positive floor fails
        let floor = |_: f64| Ok(0.25);
        let (status, last, _) = ratio_vanishes(&floor, &cfg).unwrap();
        assert_eq!(status, Status::Fail);
        assert!((last - 0.25).abs() < 1e-12);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let h = UnivariateFn::constant(1.0).unwrap();
        let phi = UnivariateFn::constant(0.0).unwrap();
        assert!(ratio_limsup(&h, &phi, &cfg()).is_err());
    }
}
