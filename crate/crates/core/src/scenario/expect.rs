//! Expected outcomes and their evaluation against run results.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypothesis::{Status, TheoremId};
use crate::scenario::run::RunResult;

/// One expected outcome. Targets:
///
/// - `theorem:<id>` — overall status of a hypothesis report;
/// - `condition:<id>/<name>` — one condition of a report;
/// - `uc:<v>` — uniform-continuity certificate at state bound `v`;
/// - `regularity-limit:<C>` — the limit condition of a regularity sweep;
/// - `verdict` / `s-verdict` — decay verdict in the t- or s-clock;
/// - `floor` — the no-decay floor estimate, `value` ± `tol`;
/// - `peano-ratio` — max error ratio between successive delay doublings
///   at most `value`;
/// - `sup-bound` — running norm supremum at most `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl Expectation {
    pub fn status(target: &str, status: &str) -> Self {
        Expectation {
            target: target.to_string(),
            status: Some(status.to_string()),
            value: None,
            tol: None,
        }
    }

    pub fn value(target: &str, value: f64, tol: Option<f64>) -> Self {
        Expectation { target: target.to_string(), status: None, value: Some(value), tol }
    }
}

/// How one expectation fared.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectationOutcome {
    pub target: String,
    pub expected: String,
    pub actual: String,
    pub met: bool,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Inconclusive => "inconclusive",
        Status::Fail => "fail",
    }
}

fn outcome(target: &str, expected: String, actual: String, met: bool) -> ExpectationOutcome {
    ExpectationOutcome { target: target.to_string(), expected, actual, met }
}

fn expect_status(e: &Expectation) -> Result<&str> {
    e.status.as_deref().ok_or_else(|| {
        Error::Config(format!("expectation '{}' needs a status field", e.target))
    })
}

fn expect_value(e: &Expectation) -> Result<f64> {
    e.value.ok_or_else(|| {
        Error::Config(format!("expectation '{}' needs a value field", e.target))
    })
}

/// Evaluate expectations against a run; unknown targets are config errors.
pub fn evaluate(expectations: &[Expectation], result: &RunResult) -> Result<Vec<ExpectationOutcome>> {
    let mut out = Vec::with_capacity(expectations.len());
    for e in expectations {
        let (head, arg) = match e.target.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (e.target.as_str(), None),
        };
        let o = match head {
            "theorem" => {
                let id_str = arg.ok_or_else(|| {
                    Error::Config("theorem expectation needs an id, e.g. theorem:T2.11".into())
                })?;
                let id = TheoremId::from_str_id(id_str)
                    .ok_or_else(|| Error::Config(format!("unknown theorem id '{id_str}'")))?;
                let want = expect_status(e)?;
                match result.reports.iter().find(|r| r.theorem == id) {
                    Some(r) => {
                        let got = status_str(r.status);
                        outcome(&e.target, want.into(), got.into(), got == want)
                    }
                    None => outcome(&e.target, want.into(), "absent".into(), false),
                }
            }
            "condition" => {
                let spec = arg.ok_or_else(|| {
                    Error::Config("condition expectation needs id/name".into())
                })?;
                let (id_str, name) = spec.split_once('/').ok_or_else(|| {
                    Error::Config(format!("condition target '{spec}' needs id/name"))
                })?;
                let id = TheoremId::from_str_id(id_str)
                    .ok_or_else(|| Error::Config(format!("unknown theorem id '{id_str}'")))?;
                let want = expect_status(e)?;
                let got = result
                    .reports
                    .iter()
                    .find(|r| r.theorem == id)
                    .and_then(|r| r.condition(name))
                    .map(|c| status_str(c.status));
                match got {
                    Some(got) => outcome(&e.target, want.into(), got.into(), got == want),
                    None => outcome(&e.target, want.into(), "absent".into(), false),
                }
            }
            "uc" => {
                let v: f64 = arg
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| Error::Config(format!("bad uc target '{}'", e.target)))?;
                let want = expect_status(e)?;
                let entry = result
                    .uc_entries
                    .iter()
                    .find(|u| (u.v - v).abs() <= 1e-9 * (1.0 + v.abs()));
                match entry {
                    Some(u) => {
                        let got = status_str(u.status);
                        outcome(&e.target, want.into(), got.into(), got == want)
                    }
                    None => outcome(&e.target, want.into(), "absent".into(), false),
                }
            }
            "regularity-limit" => {
                let c: f64 = arg
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| Error::Config(format!("bad regularity target '{}'", e.target)))?;
                let want = expect_status(e)?;
                let entry = result
                    .regularity_entries
                    .iter()
                    .find(|r| (r.c - c).abs() <= 1e-9 * (1.0 + c.abs()));
                match entry {
                    Some(r) => {
                        let got = status_str(r.status);
                        outcome(&e.target, want.into(), got.into(), got == want)
                    }
                    None => outcome(&e.target, want.into(), "absent".into(), false),
                }
            }
            "verdict" | "s-verdict" => {
                let want = expect_status(e)?;
                let v = if head == "verdict" { &result.verdict } else { &result.s_verdict };
                match v {
                    Some(v) => {
                        let got = v.status.as_str();
                        outcome(&e.target, want.into(), got.into(), got == want)
                    }
                    None => outcome(&e.target, want.into(), "absent".into(), false),
                }
            }
            "floor" => {
                let want = expect_value(e)?;
                let tol = e.tol.unwrap_or(1e-3);
                match result.verdict.as_ref().and_then(|v| v.limit_estimate) {
                    Some(got) => outcome(
                        &e.target,
                        format!("{want} ± {tol}"),
                        format!("{got}"),
                        (got - want).abs() <= tol,
                    ),
                    None => outcome(&e.target, format!("{want} ± {tol}"), "absent".into(), false),
                }
            }
            "peano-ratio" => {
                let want = expect_value(e)?;
                match result.peano.as_ref() {
                    Some(p) => outcome(
                        &e.target,
                        format!("≤ {want}"),
                        format!("{}", p.max_ratio),
                        p.max_ratio <= want,
                    ),
                    None => outcome(&e.target, format!("≤ {want}"), "absent".into(), false),
                }
            }
            "sup-bound" => {
                let want = expect_value(e)?;
                match result.sup_norm {
                    Some(got) => outcome(
                        &e.target,
                        format!("≤ {want}"),
                        format!("{got}"),
                        got <= want + e.tol.unwrap_or(0.0),
                    ),
                    None => outcome(&e.target, format!("≤ {want}"), "absent".into(), false),
                }
            }
            other => {
                return Err(Error::Config(format!("unknown expectation target '{other}'")));
            }
        };
        out.push(o);
    }
    Ok(out)
}
