//! Nonnegative functions of (time, state) and their state-sliced suprema.

use crate::error::{Error, Result};
use crate::funcspace::univariate::{monotone_check, UnivariateFn};

/// Closed expression grammar over `x` (time) and `y` (state): sums,
/// products, real powers, min/max and piecewise-in-`y` branches.
#[derive(Debug, Clone, PartialEq)]
pub enum BivarExpr {
    X,
    Y,
    Const(f64),
    Add(Box<BivarExpr>, Box<BivarExpr>),
    Mul(Box<BivarExpr>, Box<BivarExpr>),
    Pow(Box<BivarExpr>, f64),
    Min(Box<BivarExpr>, Box<BivarExpr>),
    Max(Box<BivarExpr>, Box<BivarExpr>),
    /// `pieces[i]` applies for `y ≤ breaks[i]`, the last piece for larger `y`.
    PiecewiseY { breaks: Vec<f64>, pieces: Vec<BivarExpr> },
}

impl BivarExpr {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let v = match self {
            BivarExpr::X => x,
            BivarExpr::Y => y,
            BivarExpr::Const(c) => *c,
            BivarExpr::Add(a, b) => a.eval(x, y)? + b.eval(x, y)?,
            BivarExpr::Mul(a, b) => a.eval(x, y)? * b.eval(x, y)?,
            BivarExpr::Pow(a, p) => a.eval(x, y)?.powf(*p),
            BivarExpr::Min(a, b) => a.eval(x, y)?.min(b.eval(x, y)?),
            BivarExpr::Max(a, b) => a.eval(x, y)?.max(b.eval(x, y)?),
            BivarExpr::PiecewiseY { breaks, pieces } => {
                let idx = breaks.iter().position(|b| y <= *b).unwrap_or(breaks.len());
                pieces[idx].eval(x, y)?
            }
        };
        if v.is_nan() {
            return Err(Error::Numeric(format!("expression evaluated to NaN at ({x}, {y})")));
        }
        Ok(v)
    }

    fn validate_shape(&self) -> Result<()> {
        match self {
            BivarExpr::PiecewiseY { breaks, pieces } => {
                if pieces.len() != breaks.len() + 1 {
                    return Err(Error::Validation(format!(
                        "piecewise_y needs one more piece than breaks ({} breaks, {} pieces)",
                        breaks.len(),
                        pieces.len()
                    )));
                }
                for w in breaks.windows(2) {
                    if !(w[1] > w[0]) {
                        return Err(Error::Validation(
                            "piecewise_y breaks must be strictly increasing".into(),
                        ));
                    }
                }
                for p in pieces {
                    p.validate_shape()?;
                }
                Ok(())
            }
            BivarExpr::Add(a, b)
            | BivarExpr::Mul(a, b)
            | BivarExpr::Min(a, b)
            | BivarExpr::Max(a, b) => {
                a.validate_shape()?;
                b.validate_shape()
            }
            BivarExpr::Pow(a, p) => {
                if !p.is_finite() {
                    return Err(Error::Validation("power exponent must be finite".into()));
                }
                a.validate_shape()
            }
            BivarExpr::Const(c) if !c.is_finite() => {
                Err(Error::Validation("expression constants must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

/// A nonnegative continuous function `f(x, y)` of time and state.
#[derive(Debug, Clone, PartialEq)]
pub enum BivariateFn {
    /// `g(x) · φ(y) + h(x)`
    Separable { g: UnivariateFn, phi: UnivariateFn, h: UnivariateFn },
    /// Closed-grammar analytic expression.
    Expr(BivarExpr),
    /// Bilinear interpolation on an (x, y) grid, row-major in `x`.
    GridSampled { xs: Vec<f64>, ys: Vec<f64>, values: Vec<f64> },
}

/// Default sampling box and density for construction-time validation.
const VALIDATE_SPAN: f64 = 50.0;
const VALIDATE_SAMPLES: usize = 33;
const CONTINUITY_TOL: f64 = 1e-9;

impl BivariateFn {
    pub fn separable(g: UnivariateFn, phi: UnivariateFn, h: UnivariateFn) -> Result<Self> {
        // components are already nonnegative by their own construction
        Ok(BivariateFn::Separable { g, phi, h })
    }

    /// Build from an expression; nonnegativity is sampled over a default
    /// box and continuity is checked across declared piece boundaries.
    pub fn from_expr(expr: BivarExpr) -> Result<Self> {
        expr.validate_shape()?;
        let f = BivariateFn::Expr(expr);
        f.validate_sampled(VALIDATE_SPAN, VALIDATE_SPAN, VALIDATE_SAMPLES)?;
        f.validate_continuity(VALIDATE_SPAN, VALIDATE_SAMPLES)?;
        Ok(f)
    }

    pub fn grid_sampled(xs: Vec<f64>, ys: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || ys.len() < 2 {
            return Err(Error::Validation("grid needs at least 2×2 points".into()));
        }
        if values.len() != xs.len() * ys.len() {
            return Err(Error::Validation(format!(
                "grid value count {} does not match {}×{}",
                values.len(),
                xs.len(),
                ys.len()
            )));
        }
        for g in [&xs, &ys] {
            for w in g.windows(2) {
                if !(w[1] > w[0]) {
                    return Err(Error::Validation("grid axes must be strictly increasing".into()));
                }
            }
        }
        for v in &values {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::Validation(format!(
                    "grid values must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(BivariateFn::GridSampled { xs, ys, values })
    }

    fn validate_sampled(&self, x_hi: f64, y_hi: f64, n: usize) -> Result<()> {
        for i in 0..n {
            let x = x_hi * (i as f64) / ((n - 1) as f64);
            for j in 0..n {
                let y = y_hi * (j as f64) / ((n - 1) as f64);
                match self.eval(x, y) {
                    Ok(v) => {
                        if v < -1e-12 {
                            return Err(Error::Validation(format!(
                                "negative value {v} sampled at ({x}, {y})"
                            )));
                        }
                    }
                    Err(Error::Numeric(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }

    fn validate_continuity(&self, x_hi: f64, n: usize) -> Result<()> {
        let BivariateFn::Expr(expr) = self else { return Ok(()) };
        let mut boundaries = Vec::new();
        collect_breaks(expr, &mut boundaries);
        for b in boundaries {
            for i in 0..n {
                let x = x_hi * (i as f64) / ((n - 1) as f64);
                let below = self.eval(x, b)?;
                let above = self.eval(x, b + 1e-9 * (1.0 + b.abs()))?;
                if (below - above).abs() > CONTINUITY_TOL * (1.0 + below.abs()) + 1e-6 {
                    return Err(Error::Validation(format!(
                        "discontinuity {} at piece boundary y={b}, x={x}",
                        (below - above).abs()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate at `(x, y)` with `x, y ≥ 0`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 || !y.is_finite() || y < 0.0 {
            return Err(Error::Domain(format!("({x}, {y}) outside [0, ∞)²")));
        }
        match self {
            BivariateFn::Separable { g, phi, h } => Ok(g.eval(x)? * phi.eval(y)? + h.eval(x)?),
            BivariateFn::Expr(e) => e.eval(x, y),
            BivariateFn::GridSampled { xs, ys, values } => {
                let locate = |grid: &[f64], q: f64| -> Result<(usize, f64)> {
                    if q < grid[0] || q > *grid.last().unwrap() {
                        return Err(Error::Domain(format!("query {q} outside sampled grid")));
                    }
                    let i = match grid.binary_search_by(|g| g.partial_cmp(&q).unwrap()) {
                        Ok(i) => i.min(grid.len() - 2),
                        Err(i) => i - 1,
                    };
                    Ok((i, (q - grid[i]) / (grid[i + 1] - grid[i])))
                };
                let (i, wx) = locate(xs, x)?;
                let (j, wy) = locate(ys, y)?;
                let ny = ys.len();
                let v00 = values[i * ny + j];
                let v01 = values[i * ny + j + 1];
                let v10 = values[(i + 1) * ny + j];
                let v11 = values[(i + 1) * ny + j + 1];
                Ok(v00 * (1.0 - wx) * (1.0 - wy)
                    + v01 * (1.0 - wx) * wy
                    + v10 * wx * (1.0 - wy)
                    + v11 * wx * wy)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BivariateFn::Separable { g, phi, h } => format!(
                "separable(g = {}; phi = {}; h = {})",
                g.describe(),
                phi.describe(),
                h.describe()
            ),
            BivariateFn::Expr(_) => "expr(..)".to_string(),
            BivariateFn::GridSampled { xs, ys, .. } => {
                format!("grid({}×{})", xs.len(), ys.len())
            }
        }
    }
}

fn collect_breaks(expr: &BivarExpr, out: &mut Vec<f64>) {
    match expr {
        BivarExpr::PiecewiseY { breaks, pieces } => {
            out.extend_from_slice(breaks);
            for p in pieces {
                collect_breaks(p, out);
            }
        }
        BivarExpr::Add(a, b)
        | BivarExpr::Mul(a, b)
        | BivarExpr::Min(a, b)
        | BivarExpr::Max(a, b) => {
            collect_breaks(a, out);
            collect_breaks(b, out);
        }
        BivarExpr::Pow(a, _) => collect_breaks(a, out),
        _ => {}
    }
}

/// Max of `f(x, ζ)` over a ζ-grid of `[0, v]`, refined once near the argmax.
/// Separable forms with a monotone state factor are evaluated exactly at the
/// slice endpoints.
pub fn sup_slice(f: &BivariateFn, x: f64, v: f64, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(Error::Config("sup_slice needs a positive ζ resolution".into()));
    }
    if x < 0.0 || v < 0.0 {
        return Err(Error::Domain(format!("sup_slice needs x, v ≥ 0 (got {x}, {v})")));
    }
    if v == 0.0 {
        return f.eval(x, 0.0);
    }
    if let BivariateFn::Separable { g, phi, h } = f {
        if monotone_check(phi, 0.0, v, (grid + 1).min(65))? {
            let end = g.eval(x)? * phi.eval(v)? + h.eval(x)?;
            let start = g.eval(x)? * phi.eval(0.0)? + h.eval(x)?;
            return Ok(end.max(start));
        }
    }

    let scan = |lo: f64, hi: f64, n: usize| -> Result<(f64, f64)> {
        let mut best = f64::NEG_INFINITY;
        let mut arg = lo;
        for i in 0..=n {
            let z = lo + (hi - lo) * (i as f64) / (n as f64);
            let val = f.eval(x, z)?;
            if val > best {
                best = val;
                arg = z;
            }
        }
        Ok((best, arg))
    };

    let (coarse, arg) = scan(0.0, v, grid)?;
    let cell = v / grid as f64;
    let lo = (arg - cell).max(0.0);
    let hi = (arg + cell).min(v);
    let (fine, _) = scan(lo, hi, grid)?;
    Ok(coarse.max(fine))
}

/// The piecewise slope function used throughout the counterexample catalog:
/// `f(x, y) = 1` for `y ≤ 1` and `1 + (y − 1)·x` for `y > 1`.
pub fn catalog_slope_fn() -> BivariateFn {
    let grow = BivarExpr::Add(
        Box::new(BivarExpr::Const(1.0)),
        Box::new(BivarExpr::Mul(
            Box::new(BivarExpr::Add(
                Box::new(BivarExpr::Y),
                Box::new(BivarExpr::Const(-1.0)),
            )),
            Box::new(BivarExpr::X),
        )),
    );
    let expr = BivarExpr::PiecewiseY {
        breaks: vec![1.0],
        pieces: vec![BivarExpr::Const(1.0), grow],
    };
    BivariateFn::from_expr(expr).expect("catalog slope function is valid")
}
