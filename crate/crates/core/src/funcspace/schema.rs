//! Textual function descriptors.
//!
//! Scenario configs name functions by a small textual schema
//! (family name plus parameter list):
//!
//! ```text
//! constant(1)
//! power_law(1, 0.5, 1)          # 1·(1+t)^(-0.5)
//! exponential(2, 1.5)           # 2·e^(-1.5 t)
//! identity                      # shorthand for power_law(1, -1, 0)
//! piecewise(0: constant(1); 2: power_law(1, 1, 1))
//! tabulated(path.csv)           # two-column CSV: time, value
//! tabulated(path.csv, extend)   # constant extension past the last knot
//! ```
//!
//! Bivariate descriptors are either separable,
//! `separable(g = <uv>; phi = <uv>; h = <uv>)`, or a closed expression over
//! `x` and `y`, `expr(<e>)`, with `+`, `-`, `*`, `^`, `min(a, b)`,
//! `max(a, b)` and `piecewise_y(b: e; ...; else: e)`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::funcspace::bivariate::{BivarExpr, BivariateFn};
use crate::funcspace::univariate::UnivariateFn;

/// Parse a univariate descriptor. Relative tabulation paths resolve against
/// the current working directory.
pub fn parse_univariate(text: &str) -> Result<UnivariateFn> {
    let text = text.trim();
    if text == "identity" {
        return Ok(UnivariateFn::identity());
    }
    let (name, body) = split_call(text)?;
    match name {
        "constant" => {
            let args = split_args(body, ',')?;
            expect_arity(name, &args, 1)?;
            UnivariateFn::constant(parse_number(&args[0])?)
        }
        "power_law" => {
            let args = split_args(body, ',')?;
            expect_arity(name, &args, 3)?;
            UnivariateFn::power_law(
                parse_number(&args[0])?,
                parse_number(&args[1])?,
                parse_number(&args[2])?,
            )
        }
        "exponential" => {
            let args = split_args(body, ',')?;
            expect_arity(name, &args, 2)?;
            UnivariateFn::exponential(parse_number(&args[0])?, parse_number(&args[1])?)
        }
        "piecewise" => {
            let parts = split_args(body, ';')?;
            let mut pieces = Vec::new();
            for part in parts {
                let (start, desc) = part.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("piecewise piece needs 'start: descriptor', got {part}"))
                })?;
                pieces.push((parse_number(start)?, parse_univariate(desc)?));
            }
            UnivariateFn::piecewise(pieces)
        }
        "tabulated" => {
            let args = split_args(body, ',')?;
            let (path, extend) = match args.len() {
                1 => (args[0].trim(), false),
                2 if args[1].trim() == "extend" => (args[0].trim(), true),
                _ => {
                    return Err(Error::Parse(format!(
                        "tabulated takes 'path' or 'path, extend', got {body}"
                    )))
                }
            };
            load_tabulated_csv(Path::new(path), extend)
        }
        other => Err(Error::Parse(format!("unknown function family '{other}'"))),
    }
}

/// Load a tabulated function from a two-column CSV (time, value). A header
/// line is skipped when its first field is not numeric.
pub fn load_tabulated_csv(path: &Path, extend: bool) -> Result<UnivariateFn> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let a = fields.next().unwrap_or("").trim();
        let b = fields.next().unwrap_or("").trim();
        if lineno == 0 && a.parse::<f64>().is_err() {
            continue; // header
        }
        let t: f64 = a.parse().map_err(|_| {
            Error::Parse(format!("{}:{}: bad time field '{a}'", path.display(), lineno + 1))
        })?;
        let v: f64 = b.parse().map_err(|_| {
            Error::Parse(format!("{}:{}: bad value field '{b}'", path.display(), lineno + 1))
        })?;
        times.push(t);
        values.push(v);
    }
    UnivariateFn::tabulated(times, values, extend)
}

/// Parse a bivariate descriptor: `separable(...)` or `expr(...)`.
pub fn parse_bivariate(text: &str) -> Result<BivariateFn> {
    let (name, body) = split_call(text.trim())?;
    match name {
        "separable" => {
            let parts = split_args(body, ';')?;
            expect_arity(name, &parts, 3)?;
            let mut g = None;
            let mut phi = None;
            let mut h = None;
            for part in parts {
                let (key, desc) = part.split_once('=').ok_or_else(|| {
                    Error::Parse(format!("separable component needs 'name = descriptor': {part}"))
                })?;
                let f = parse_univariate(desc)?;
                match key.trim() {
                    "g" => g = Some(f),
                    "phi" => phi = Some(f),
                    "h" => h = Some(f),
                    other => {
                        return Err(Error::Parse(format!(
                            "separable component must be g, phi or h, got '{other}'"
                        )))
                    }
                }
            }
            match (g, phi, h) {
                (Some(g), Some(phi), Some(h)) => BivariateFn::separable(g, phi, h),
                _ => Err(Error::Parse("separable needs g, phi and h components".into())),
            }
        }
        "expr" => BivariateFn::from_expr(parse_expr(body)?),
        other => Err(Error::Parse(format!("unknown bivariate form '{other}'"))),
    }
}

fn split_call(text: &str) -> Result<(&str, &str)> {
    let open = text
        .find('(')
        .ok_or_else(|| Error::Parse(format!("expected 'name(args)', got '{text}'")))?;
    if !text.ends_with(')') {
        return Err(Error::Parse(format!("unbalanced parentheses in '{text}'")));
    }
    Ok((text[..open].trim(), &text[open + 1..text.len() - 1]))
}

/// Split on `sep` at parenthesis depth zero.
fn split_args(body: &str, sep: char) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in body.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in '{body}'")));
                }
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{body}'")));
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

fn expect_arity(name: &str, args: &[String], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Parse(format!(
            "{name} expects {n} arguments, got {}",
            args.len()
        )));
    }
    Ok(())
}

fn parse_number(text: &str) -> Result<f64> {
    let t = text.trim();
    if t == "pi" {
        return Ok(std::f64::consts::PI);
    }
    t.parse::<f64>().map_err(|_| Error::Parse(format!("expected a number, got '{t}'")))
}

// --- expression parser -----------------------------------------------------

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn parse_expr(text: &str) -> Result<BivarExpr> {
    let mut p = ExprParser { chars: text.chars().collect(), pos: 0, src: text };
    let e = p.additive()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "trailing input at position {} in '{}'",
            p.pos, p.src
        )));
    }
    Ok(e)
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(Error::Parse(format!(
                "expected '{c}' at position {} in '{}', got {got:?}",
                self.pos, self.src
            ))),
        }
    }

    fn additive(&mut self) -> Result<BivarExpr> {
        let mut left = self.multiplicative()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let right = self.multiplicative()?;
                    left = BivarExpr::Add(Box::new(left), Box::new(right));
                }
                Some('-') => {
                    self.bump();
                    let right = self.multiplicative()?;
                    // a - b desugars to a + (-1)·b inside the closed grammar
                    left = BivarExpr::Add(
                        Box::new(left),
                        Box::new(BivarExpr::Mul(
                            Box::new(BivarExpr::Const(-1.0)),
                            Box::new(right),
                        )),
                    );
                }
                _ => return Ok(left),
            }
        }
    }

    fn multiplicative(&mut self) -> Result<BivarExpr> {
        let mut left = self.unary()?;
        while self.peek() == Some('*') {
            self.bump();
            let right = self.unary()?;
            left = BivarExpr::Mul(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<BivarExpr> {
        if self.peek() == Some('-') {
            self.bump();
            let inner = self.unary()?;
            return Ok(BivarExpr::Mul(Box::new(BivarExpr::Const(-1.0)), Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivarExpr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let exp = self.number()?;
            return Ok(BivarExpr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivarExpr> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.additive()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => Ok(BivarExpr::Const(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let word = self.ident();
                match word.as_str() {
                    "x" => Ok(BivarExpr::X),
                    "y" => Ok(BivarExpr::Y),
                    "min" | "max" => {
                        self.expect('(')?;
                        let a = self.additive()?;
                        self.expect(',')?;
                        let b = self.additive()?;
                        self.expect(')')?;
                        Ok(if word == "min" {
                            BivarExpr::Min(Box::new(a), Box::new(b))
                        } else {
                            BivarExpr::Max(Box::new(a), Box::new(b))
                        })
                    }
                    "piecewise_y" => self.piecewise_y(),
                    other => Err(Error::Parse(format!("unknown symbol '{other}'"))),
                }
            }
            got => Err(Error::Parse(format!(
                "unexpected {got:?} at position {} in '{}'",
                self.pos, self.src
            ))),
        }
    }

    fn piecewise_y(&mut self) -> Result<BivarExpr> {
        self.expect('(')?;
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        loop {
            self.skip_ws();
            let is_else = self.chars[self.pos..].starts_with(&['e', 'l', 's', 'e']);
            if is_else {
                self.pos += 4;
                self.expect(':')?;
                pieces.push(self.additive()?);
                self.expect(')')?;
                return Ok(BivarExpr::PiecewiseY { breaks, pieces });
            }
            breaks.push(self.number()?);
            self.expect(':')?;
            pieces.push(self.additive()?);
            self.expect(';')?;
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit()
                || matches!(self.chars[self.pos], '.' | 'e' | 'E')
                || (matches!(self.chars[self.pos], '+' | '-')
                    && matches!(self.chars[self.pos - 1], 'e' | 'E')))
        {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>()
            .map_err(|_| Error::Parse(format!("expected a number at position {start} in '{}'", self.src)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::bivariate::sup_slice;

    #[test]
    fn univariate_descriptors_round_trip() {
        let f = parse_univariate("power_law(1, 0.5, 1)").unwrap();
        assert_eq!(f, UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap());

        let f = parse_univariate(" exponential( 2 , 1.5 ) ").unwrap();
        assert_eq!(f, UnivariateFn::exponential(2.0, 1.5).unwrap());

        let f = parse_univariate("identity").unwrap();
        assert_eq!(f.eval(4.0).unwrap(), 4.0);

        let f =
            parse_univariate("piecewise(0: constant(1); 2: power_law(1, 1, 1))").unwrap();
        assert_eq!(f.eval(1.0).unwrap(), 1.0);
        assert_eq!(f.eval(3.0).unwrap(), 0.25);
    }

    #[test]
    fn bad_descriptors_are_parse_errors() {
        assert!(parse_univariate("power_law(1, 2)").is_err());
        assert!(parse_univariate("warp(1)").is_err());
        assert!(parse_univariate("constant(1").is_err());
        assert!(parse_univariate("constant(one)").is_err());
    }

    #[test]
    fn expression_descriptor_matches_catalog_fn() {
        let f = parse_bivariate("expr(piecewise_y(1: 1; else: 1 + (y - 1) * x))").unwrap();
        assert!((sup_slice(&f, 2.0, 2.0, 64).unwrap() - 3.0).abs() < 1e-12);
        assert!((sup_slice(&f, 9.0, 1.0, 64).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_descriptor() {
        let f = parse_bivariate(
            "separable(g = power_law(1, 1, 1); phi = identity; h = constant(0))",
        )
        .unwrap();
        assert!((f.eval(1.0, 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expression_grammar_pieces() {
        let f = parse_bivariate("expr(min(x, 2) * max(y, 1) + x^2)").unwrap();
        assert!((f.eval(3.0, 0.5).unwrap() - (2.0 + 9.0)).abs() < 1e-12);
    }

    #[test]
    fn tabulated_descriptor_reads_csv() {
        let dir = std::env::temp_dir().join(format!("decaycheck-schema-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tab.csv");
        std::fs::write(&path, "t,value\n0,0\n1,2\n2,2\n").unwrap();
        let f = parse_univariate(&format!("tabulated({})", path.display())).unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 1.0);
        assert!(f.eval(3.0).is_err());
        let g = parse_univariate(&format!("tabulated({}, extend)", path.display())).unwrap();
        assert_eq!(g.eval(3.0).unwrap(), 2.0);
        std::fs::remove_dir_all(&dir).ok();
    }
}
