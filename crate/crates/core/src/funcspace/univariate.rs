//! Nonnegative scalar functions of time.
//!
//! Every weight, rate and forcing norm the checkers quantify over is one of
//! these: an analytic family or a tabulation with linear interpolation.
//! Values are immutable after construction; nonnegativity is enforced by
//! sampling at construction time, not symbolically.

use crate::error::{Error, Result};

/// Relative slack used when comparing sampled values for monotonicity.
const MONOTONE_SLACK: f64 = 1e-12;

/// A nonnegative scalar function on `[0, ∞)` (tabulations carry a finite
/// horizon).
#[derive(Debug, Clone, PartialEq)]
pub enum UnivariateFn {
    /// `c`
    Constant(f64),
    /// `coeff * (shift + t)^(-exponent)`; negative exponents give growth,
    /// e.g. the identity is `power_law(1, -1, 0)`.
    PowerLaw { coeff: f64, exponent: f64, shift: f64 },
    /// `coeff * exp(-rate * t)`
    Exponential { coeff: f64, rate: f64 },
    /// Pieces `(start_i, fn_i)` with strictly increasing starts beginning at
    /// 0; piece `i` applies on `[start_i, start_{i+1})` and is evaluated at
    /// the absolute time.
    Piecewise(Vec<(f64, UnivariateFn)>),
    /// Knots with linear interpolation between them.
    Tabulated(Tabulation),
}

/// Tabulated values on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulation {
    times: Vec<f64>,
    values: Vec<f64>,
    /// Extend as a constant beyond the last knot instead of erroring.
    extend: bool,
}

impl Tabulation {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn extends(&self) -> bool {
        self.extend
    }
}

impl UnivariateFn {
    pub fn constant(c: f64) -> Result<Self> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::Validation(format!(
                "constant must be finite and nonnegative, got {c}"
            )));
        }
        Ok(UnivariateFn::Constant(c))
    }

    pub fn power_law(coeff: f64, exponent: f64, shift: f64) -> Result<Self> {
        if !coeff.is_finite() || coeff < 0.0 {
            return Err(Error::Validation(format!(
                "power-law coefficient must be finite and nonnegative, got {coeff}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::Validation("power-law exponent must be finite".into()));
        }
        if !shift.is_finite() || shift < 0.0 {
            return Err(Error::Validation(format!(
                "power-law shift must be finite and nonnegative, got {shift}"
            )));
        }
        Ok(UnivariateFn::PowerLaw { coeff, exponent, shift })
    }

    pub fn exponential(coeff: f64, rate: f64) -> Result<Self> {
        if !coeff.is_finite() || coeff < 0.0 {
            return Err(Error::Validation(format!(
                "exponential coefficient must be finite and nonnegative, got {coeff}"
            )));
        }
        if !rate.is_finite() {
            return Err(Error::Validation("exponential rate must be finite".into()));
        }
        Ok(UnivariateFn::Exponential { coeff, rate })
    }

    /// The identity `t ↦ t`, a power law with exponent −1 and shift 0.
    pub fn identity() -> Self {
        UnivariateFn::PowerLaw { coeff: 1.0, exponent: -1.0, shift: 0.0 }
    }

    pub fn piecewise(pieces: Vec<(f64, UnivariateFn)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Validation("piecewise needs at least one piece".into()));
        }
        if pieces[0].0 != 0.0 {
            return Err(Error::Validation(format!(
                "piecewise breakpoints must cover [0, horizon]; first start is {}",
                pieces[0].0
            )));
        }
        for w in pieces.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Validation(format!(
                    "piecewise breakpoints must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(UnivariateFn::Piecewise(pieces))
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>, extend: bool) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Validation(format!(
                "tabulation length mismatch: {} times, {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::Validation("tabulation needs at least two knots".into()));
        }
        if times[0] < 0.0 {
            return Err(Error::Validation(format!(
                "tabulation starts at negative time {}",
                times[0]
            )));
        }
        for w in times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Validation(format!(
                    "tabulation grid must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        for (t, v) in times.iter().zip(values.iter()) {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::Validation(format!(
                    "tabulated value at t={t} is {v}; values must be finite and nonnegative"
                )));
            }
        }
        Ok(UnivariateFn::Tabulated(Tabulation { times, values, extend }))
    }

    /// Sample-based nonnegativity check over `[0, hi]`; poles (infinite
    /// values) are tolerated, negatives and NaN are not. Used by the
    /// constructors of composite forms and by the descriptor loader.
    pub fn validate_nonnegative(&self, hi: f64, samples: usize) -> Result<()> {
        let n = samples.max(2);
        for i in 0..n {
            let t = hi * (i as f64) / ((n - 1) as f64);
            match self.eval(t) {
                Ok(v) => {
                    if v < -1e-12 {
                        return Err(Error::Validation(format!(
                            "negative value {v} sampled at t={t}"
                        )));
                    }
                }
                Err(Error::Numeric(_)) => {} // pole; integration will surface it
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// Evaluate at `t ≥ 0`. Tabulated forms reject queries beyond their
    /// horizon unless constructed with constant extension.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!("time {t} outside [0, ∞)")));
        }
        match self {
            UnivariateFn::Constant(c) => Ok(*c),
            UnivariateFn::PowerLaw { coeff, exponent, shift } => {
                let base = shift + t;
                if base == 0.0 {
                    if *exponent > 0.0 {
                        return Err(Error::Numeric(format!(
                            "power-law pole at t={t} (shift {shift}, exponent {exponent})"
                        )));
                    }
                    if *exponent == 0.0 {
                        return Ok(*coeff);
                    }
                    return Ok(0.0);
                }
                Ok(coeff * base.powf(-exponent))
            }
            UnivariateFn::Exponential { coeff, rate } => Ok(coeff * (-rate * t).exp()),
            UnivariateFn::Piecewise(pieces) => {
                let idx = match pieces.binary_search_by(|(s, _)| {
                    s.partial_cmp(&t).expect("finite breakpoint")
                }) {
                    Ok(i) => i,
                    Err(0) => 0,
                    Err(i) => i - 1,
                };
                pieces[idx].1.eval(t)
            }
            UnivariateFn::Tabulated(tab) => {
                let times = &tab.times;
                if t < times[0] {
                    return Err(Error::Domain(format!(
                        "query t={t} before tabulation start {}",
                        times[0]
                    )));
                }
                let last = *times.last().unwrap();
                if t > last {
                    if tab.extend {
                        return Ok(*tab.values.last().unwrap());
                    }
                    return Err(Error::Domain(format!(
                        "query t={t} beyond tabulation horizon {last}"
                    )));
                }
                let i = match times.binary_search_by(|x| x.partial_cmp(&t).expect("finite knot")) {
                    Ok(i) => return Ok(tab.values[i]),
                    Err(i) => i - 1,
                };
                let (t0, t1) = (times[i], times[i + 1]);
                let (v0, v1) = (tab.values[i], tab.values[i + 1]);
                let w = (t - t0) / (t1 - t0);
                Ok(v0 + w * (v1 - v0))
            }
        }
    }

    /// Finite horizon of a tabulated form, if any.
    pub fn horizon(&self) -> Option<f64> {
        match self {
            UnivariateFn::Tabulated(tab) => {
                if tab.extend {
                    None
                } else {
                    Some(tab.horizon())
                }
            }
            UnivariateFn::Piecewise(pieces) => pieces
                .iter()
                .filter_map(|(_, f)| f.horizon())
                .fold(None, |acc, h| Some(acc.map_or(h, |a: f64| a.min(h)))),
            _ => None,
        }
    }

    /// Sampled minimum and maximum over `[lo, hi]`, endpoints included.
    pub fn extremum_on(&self, lo: f64, hi: f64, samples: usize) -> Result<(f64, f64)> {
        if !(hi >= lo) {
            return Err(Error::Config(format!("empty interval [{lo}, {hi}]")));
        }
        let n = samples.max(2);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for i in 0..n {
            let t = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
            let v = self.eval(t)?;
            if !v.is_finite() {
                return Err(Error::Numeric(format!("non-finite sample {v} at t={t}")));
            }
            min = min.min(v);
            max = max.max(v);
        }
        Ok((min, max))
    }

    /// The same function scaled by a nonnegative constant.
    pub fn scaled(&self, factor: f64) -> Result<UnivariateFn> {
        if !factor.is_finite() || factor < 0.0 {
            return Err(Error::Validation(format!(
                "scaling factor must be finite and nonnegative, got {factor}"
            )));
        }
        Ok(match self {
            UnivariateFn::Constant(c) => UnivariateFn::Constant(c * factor),
            UnivariateFn::PowerLaw { coeff, exponent, shift } => {
                UnivariateFn::PowerLaw { coeff: coeff * factor, exponent: *exponent, shift: *shift }
            }
            UnivariateFn::Exponential { coeff, rate } => {
                UnivariateFn::Exponential { coeff: coeff * factor, rate: *rate }
            }
            UnivariateFn::Piecewise(pieces) => UnivariateFn::Piecewise(
                pieces
                    .iter()
                    .map(|(b, f)| f.scaled(factor).map(|s| (*b, s)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            UnivariateFn::Tabulated(tab) => UnivariateFn::Tabulated(Tabulation {
                times: tab.times.clone(),
                values: tab.values.iter().map(|v| v * factor).collect(),
                extend: tab.extend,
            }),
        })
    }

    /// Compact descriptor used in reports and notes.
    pub fn describe(&self) -> String {
        match self {
            UnivariateFn::Constant(c) => format!("constant({c})"),
            UnivariateFn::PowerLaw { coeff, exponent, shift } => {
                format!("power_law({coeff}, {exponent}, {shift})")
            }
            UnivariateFn::Exponential { coeff, rate } => format!("exponential({coeff}, {rate})"),
            UnivariateFn::Piecewise(pieces) => {
                let inner: Vec<String> = pieces
                    .iter()
                    .map(|(b, f)| format!("{b}: {}", f.describe()))
                    .collect();
                format!("piecewise({})", inner.join("; "))
            }
            UnivariateFn::Tabulated(tab) => format!(
                "tabulated({} knots, horizon {}{})",
                tab.times.len(),
                tab.horizon(),
                if tab.extend { ", extend" } else { "" }
            ),
        }
    }
}

/// True iff consecutive sampled values of `f` over `[lo, hi]` are
/// non-decreasing within a small relative slack.
pub fn monotone_check(f: &UnivariateFn, lo: f64, hi: f64, samples: usize) -> Result<bool> {
    if samples < 2 {
        return Err(Error::Config(format!("monotone check needs ≥ 2 samples, got {samples}")));
    }
    let mut prev: Option<f64> = None;
    for i in 0..samples {
        let t = lo + (hi - lo) * (i as f64) / ((samples - 1) as f64);
        let v = f.eval(t)?;
        if let Some(p) = prev {
            if v < p - MONOTONE_SLACK * (1.0 + p.abs()) {
                return Ok(false);
            }
        }
        prev = Some(v);
    }
    Ok(true)
}

/// Grid lower estimate of `inf_{x ≥ eps} f(x)` scanned up to `horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfEstimate {
    pub value: f64,
    pub eps: f64,
    pub horizon: f64,
    pub samples: usize,
}

/// Infimum of `f` over a grid of `[eps, horizon]`, reported as a lower
/// estimate with its grid metadata.
pub fn inf_tail(f: &UnivariateFn, eps: f64, horizon: f64, samples: usize) -> Result<InfEstimate> {
    if !(eps > 0.0) {
        return Err(Error::Config(format!("inf_tail needs eps > 0, got {eps}")));
    }
    if !(horizon > eps) {
        return Err(Error::Config(format!(
            "inf_tail needs horizon > eps, got horizon {horizon}, eps {eps}"
        )));
    }
    let n = samples.max(2);
    let mut value = f64::INFINITY;
    for i in 0..n {
        let x = eps + (horizon - eps) * (i as f64) / ((n - 1) as f64);
        value = value.min(f.eval(x)?);
    }
    Ok(InfEstimate { value, eps, horizon, samples: n })
}

/// A non-decreasing modulus `ω` with `ω(0) = 0` and `ω(t) > 0` for `t > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaFn {
    base: UnivariateFn,
    monotone_certified: bool,
}

impl OmegaFn {
    /// Validate `ω(0) ≈ 0` and sampled positivity/monotonicity over
    /// `[0, hi]`; the monotone certificate is set on success.
    pub fn certified(base: UnivariateFn, hi: f64, samples: usize) -> Result<Self> {
        let at_zero = base.eval(0.0)?;
        if at_zero.abs() > 1e-9 {
            return Err(Error::Validation(format!("ω(0) = {at_zero}, expected 0")));
        }
        if !monotone_check(&base, 0.0, hi, samples)? {
            return Err(Error::Validation(format!(
                "ω is not non-decreasing on [0, {hi}] over {samples} samples"
            )));
        }
        let n = samples.max(2);
        for i in 1..n {
            let t = hi * (i as f64) / ((n - 1) as f64);
            let v = base.eval(t)?;
            if !(v > 0.0) {
                return Err(Error::Validation(format!("ω({t}) = {v}, expected > 0")));
            }
        }
        Ok(OmegaFn { base, monotone_certified: true })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        self.base.eval(t)
    }

    pub fn base(&self) -> &UnivariateFn {
        &self.base
    }

    pub fn monotone_certified(&self) -> bool {
        self.monotone_certified
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_closed_forms() {
        let f = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
        assert_eq!(f.eval(0.0).unwrap(), 1.0);
        assert_eq!(f.eval(1.0).unwrap(), 0.5);
    }

    #[test]
    fn exponential_matches_high_precision_eval() {
        let f = UnivariateFn::exponential(1.0, 1.0).unwrap();
        assert!((f.eval(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-9);
        assert!((f.eval(1.0).unwrap() - 0.367_879_441_171_442_33).abs() < 1e-9);
    }

    #[test]
    fn identity_is_a_power_law() {
        let id = UnivariateFn::identity();
        assert_eq!(id.eval(3.5).unwrap(), 3.5);
        assert_eq!(id.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn power_law_pole_reports_numeric_error() {
        let f = UnivariateFn::power_law(1.0, 0.5, 0.0).unwrap();
        assert!(matches!(f.eval(0.0), Err(Error::Numeric(_))));
        assert!(f.eval(4.0).unwrap() > 0.0);
    }

    #[test]
    fn negative_time_is_domain_error() {
        let f = UnivariateFn::constant(1.0).unwrap();
        assert!(matches!(f.eval(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn tabulated_interpolates_and_respects_horizon() {
        let f = UnivariateFn::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 2.0], false).unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 1.0);
        assert_eq!(f.eval(2.0).unwrap(), 2.0);
        assert!(matches!(f.eval(2.5), Err(Error::Domain(_))));
        assert_eq!(f.horizon(), Some(2.0));

        let g = UnivariateFn::tabulated(vec![0.0, 1.0], vec![0.0, 3.0], true).unwrap();
        assert_eq!(g.eval(10.0).unwrap(), 3.0);
        assert_eq!(g.horizon(), None);
    }

    #[test]
    fn tabulated_rejects_bad_grids() {
        assert!(UnivariateFn::tabulated(vec![0.0, 0.0], vec![1.0, 1.0], false).is_err());
        assert!(UnivariateFn::tabulated(vec![0.0, 1.0], vec![-1.0, 1.0], false).is_err());
        assert!(UnivariateFn::tabulated(vec![0.0], vec![1.0], false).is_err());
    }

    #[test]
    fn piecewise_selects_by_start_and_validates_cover() {
        let f = UnivariateFn::piecewise(vec![
            (0.0, UnivariateFn::constant(1.0).unwrap()),
            (2.0, UnivariateFn::constant(3.0).unwrap()),
        ])
        .unwrap();
        assert_eq!(f.eval(1.9).unwrap(), 1.0);
        assert_eq!(f.eval(2.0).unwrap(), 3.0);
        assert_eq!(f.eval(100.0).unwrap(), 3.0);

        assert!(UnivariateFn::piecewise(vec![(1.0, UnivariateFn::constant(1.0).unwrap())]).is_err());
        assert!(UnivariateFn::piecewise(vec![
            (0.0, UnivariateFn::constant(1.0).unwrap()),
            (0.0, UnivariateFn::constant(2.0).unwrap()),
        ])
        .is_err());
    }

    #[test]
    fn constructors_reject_negative_families() {
        assert!(UnivariateFn::constant(-1.0).is_err());
        assert!(UnivariateFn::power_law(-2.0, 1.0, 1.0).is_err());
        assert!(UnivariateFn::exponential(-0.5, 1.0).is_err());
        assert!(UnivariateFn::power_law(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn monotone_check_flags_oscillation() {
        let up = UnivariateFn::identity();
        assert!(monotone_check(&up, 0.0, 10.0, 64).unwrap());

        // sin t decreases past pi/2; tabulate it on [0, 10]
        let times: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        let values: Vec<f64> = times.iter().map(|t| t.sin().max(0.0)).collect();
        let sinish = UnivariateFn::tabulated(times, values, false).unwrap();
        assert!(!monotone_check(&sinish, 0.0, 10.0, 64).unwrap());

        let c = UnivariateFn::constant(1.0).unwrap();
        assert!(monotone_check(&c, 0.0, 10.0, 8).unwrap());

        assert!(matches!(monotone_check(&c, 0.0, 1.0, 1), Err(Error::Config(_))));
    }

    #[test]
    fn inf_tail_examples() {
        let id = UnivariateFn::identity();
        let est = inf_tail(&id, 0.5, 10.0, 128).unwrap();
        assert!((est.value - 0.5).abs() < 1e-12);

        let sq = UnivariateFn::power_law(1.0, -2.0, 0.0).unwrap(); // x^2
        let est = inf_tail(&sq, 0.5, 10.0, 128).unwrap();
        assert!((est.value - 0.25).abs() < 1e-12);

        // min(x, 1) via tabulation with constant extension
        let capped =
            UnivariateFn::tabulated(vec![0.0, 1.0, 4.0], vec![0.0, 1.0, 1.0], true).unwrap();
        let est = inf_tail(&capped, 2.0, 50.0, 64).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);

        assert!(inf_tail(&id, 0.0, 1.0, 8).is_err());
        assert!(inf_tail(&id, 2.0, 1.0, 8).is_err());
    }

    #[test]
    fn omega_certification() {
        let id = UnivariateFn::identity();
        let omega = OmegaFn::certified(id, 10.0, 64).unwrap();
        assert!(omega.monotone_certified());
        assert_eq!(omega.eval(2.0).unwrap(), 2.0);

        // constant 1 fails omega(0) = 0
        assert!(OmegaFn::certified(UnivariateFn::constant(1.0).unwrap(), 10.0, 16).is_err());

        // a decreasing tabulation fails monotonicity
        let dec = UnivariateFn::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.5], false).unwrap();
        assert!(OmegaFn::certified(dec, 2.0, 16).is_err());
    }
}
