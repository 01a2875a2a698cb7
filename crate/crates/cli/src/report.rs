//! The structured run report: stable keys, deterministic bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};

use decaycheck::hypothesis::{HypothesisReport, Status};
use decaycheck::scenario::{ExpectationOutcome, RunResult, ScenarioConfig};
use decaycheck::verdict::DecayVerdict;

/// Uniform-continuity entry in the report.
#[derive(Serialize)]
pub struct UcDoc {
    pub state_bound: f64,
    pub status: Status,
    pub modulus: f64,
}

/// Regularity-sweep entry in the report.
#[derive(Serialize)]
pub struct RegularityDoc {
    pub shift_constant: f64,
    pub status: Status,
    pub m_hat: f64,
}

/// Decay verdict with its clock label.
#[derive(Serialize)]
pub struct VerdictDoc {
    pub clock: &'static str,
    #[serde(flatten)]
    pub verdict: DecayVerdict,
}

#[derive(Serialize)]
pub struct ReparamDoc {
    pub roundtrip_error: f64,
    pub increment_excess: f64,
    pub increment_pairs: usize,
    pub increment_ok: bool,
}

#[derive(Serialize)]
pub struct PeanoDoc {
    pub errors: Vec<(u32, f64)>,
    pub max_ratio: f64,
}

#[derive(Serialize)]
pub struct BoundDoc {
    pub sup_curve: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_sup: Option<f64>,
    pub max_excess: f64,
}

#[derive(Serialize)]
pub struct ProbeDoc {
    pub pairs: usize,
    pub worst_margin: f64,
    pub satisfied: bool,
    pub lambda1: f64,
}

/// The report document written as `report.json`. Identical configs and
/// seeds produce byte-identical documents.
#[derive(Serialize)]
pub struct ReportDoc {
    pub scenario: String,
    pub kind: String,
    pub seed: u64,
    pub config_hash: String,
    pub horizon: f64,
    pub exit_code: i32,
    pub theorems: Vec<HypothesisReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub uc: Vec<UcDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub regularity: Vec<RegularityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reparameterization: Option<ReparamDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peano: Option<PeanoDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeDoc>,
    pub expectations: Vec<ExpectationOutcome>,
    pub notes: Vec<String>,
    pub artifacts: Vec<String>,
}

/// Hash of the effective config (seed included via the config itself).
pub fn config_hash(config: &ScenarioConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(config.to_json().as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Exit code for a finished run: 1 when an expectation is violated, 2
/// when inconclusive results are present, 0 otherwise.
pub fn exit_code_for(result: &RunResult) -> i32 {
    if !result.all_expectations_met() {
        1
    } else if result.has_inconclusive() {
        2
    } else {
        0
    }
}

/// Assemble the report document from a finished run.
pub fn build_report(
    config: &ScenarioConfig,
    result: &RunResult,
    artifacts: Vec<String>,
) -> ReportDoc {
    ReportDoc {
        scenario: result.id.clone(),
        kind: result.kind.map(|k| k.as_str()).unwrap_or("unknown").to_string(),
        seed: result.seed,
        config_hash: config_hash(config),
        horizon: result.horizon,
        exit_code: exit_code_for(result),
        theorems: result.reports.clone(),
        uc: result
            .uc_entries
            .iter()
            .map(|u| UcDoc { state_bound: u.v, status: u.status, modulus: u.modulus })
            .collect(),
        regularity: result
            .regularity_entries
            .iter()
            .map(|r| RegularityDoc { shift_constant: r.c, status: r.status, m_hat: r.m_hat })
            .collect(),
        verdict: result.verdict.clone().map(|v| VerdictDoc { clock: "t", verdict: v }),
        s_verdict: result.s_verdict.clone().map(|v| VerdictDoc { clock: "s", verdict: v }),
        reparameterization: result.roundtrip_error.map(|roundtrip_error| ReparamDoc {
            roundtrip_error,
            increment_excess: result.increment.as_ref().map_or(f64::NAN, |i| i.worst_excess),
            increment_pairs: result.increment.as_ref().map_or(0, |i| i.pairs),
            increment_ok: result.increment.as_ref().is_some_and(|i| i.satisfied),
        }),
        peano: result
            .peano
            .as_ref()
            .map(|p| PeanoDoc { errors: p.errors.clone(), max_ratio: p.max_ratio }),
        bound: result.bound.as_ref().map(|b| BoundDoc {
            sup_curve: b.sup_curve,
            analytic_sup: b.analytic_sup,
            max_excess: b.max_excess,
        }),
        sup_norm: result.sup_norm,
        probe: result.probe.as_ref().map(|p| ProbeDoc {
            pairs: p.pairs,
            worst_margin: p.worst_margin,
            satisfied: p.satisfied,
            lambda1: p.lambda1,
        }),
        expectations: result.expectation_outcomes.clone(),
        notes: result.notes.clone(),
        artifacts,
    }
}

impl ReportDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
