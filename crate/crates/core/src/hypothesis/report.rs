//! Hypothesis reports: per-condition verdicts with numeric witnesses.

use serde::Serialize;
use std::fmt;

/// Verdict for a single condition or a whole hypothesis set. Inconclusive
/// is first-class: finite horizons cannot refute limsup finiteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Inconclusive => write!(f, "inconclusive"),
            Status::Fail => write!(f, "fail"),
        }
    }
}

/// Identifier of a checkable theorem or assumption in the built-in family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    /// Decay from a uniformly continuous majorant `F(t, a)`.
    #[serde(rename = "T2.1")]
    UcMajorant,
    /// Decay under a weighted window growth bound on `f`.
    #[serde(rename = "T2.4")]
    WeightedWindowDecay,
    /// Power-law specialization of the window growth bound.
    #[serde(rename = "T2.7")]
    PowerWindowDecay,
    /// Decay from a bounded `h/φ` ratio.
    #[serde(rename = "T2.9")]
    WeightedRatioDecay,
    /// Power-law specialization of the ratio bound.
    #[serde(rename = "T2.10")]
    PowerRatioDecay,
    /// Surrogate decay: divergent rate integral, vanishing forcing ratio.
    #[serde(rename = "T2.11")]
    SurrogateVanishingRatio,
    /// Surrogate decay: divergent rate integral, integrable forcing ratio.
    #[serde(rename = "T2.13")]
    SurrogateIntegrableRatio,
    /// Surrogate decay: rate regularity plus integrable forcing.
    #[serde(rename = "T2.14")]
    SurrogateBoundedRatio,
    /// Evolution-equation balance: vanishing forcing/dissipation ratio.
    #[serde(rename = "A")]
    AssumptionA,
    /// Evolution-equation balance: integrable forcing/dissipation ratio.
    #[serde(rename = "B")]
    AssumptionB,
    /// Evolution-equation balance: power-law weights.
    #[serde(rename = "C")]
    AssumptionC,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::UcMajorant => "T2.1",
            TheoremId::WeightedWindowDecay => "T2.4",
            TheoremId::PowerWindowDecay => "T2.7",
            TheoremId::WeightedRatioDecay => "T2.9",
            TheoremId::PowerRatioDecay => "T2.10",
            TheoremId::SurrogateVanishingRatio => "T2.11",
            TheoremId::SurrogateIntegrableRatio => "T2.13",
            TheoremId::SurrogateBoundedRatio => "T2.14",
            TheoremId::AssumptionA => "A",
            TheoremId::AssumptionB => "B",
            TheoremId::AssumptionC => "C",
        }
    }

    pub fn from_str_id(s: &str) -> Option<Self> {
        Some(match s {
            "T2.1" => TheoremId::UcMajorant,
            "T2.4" => TheoremId::WeightedWindowDecay,
            "T2.7" => TheoremId::PowerWindowDecay,
            "T2.9" => TheoremId::WeightedRatioDecay,
            "T2.10" => TheoremId::PowerRatioDecay,
            "T2.11" => TheoremId::SurrogateVanishingRatio,
            "T2.13" => TheoremId::SurrogateIntegrableRatio,
            "T2.14" => TheoremId::SurrogateBoundedRatio,
            "A" => TheoremId::AssumptionA,
            "B" => TheoremId::AssumptionB,
            "C" => TheoremId::AssumptionC,
            _ => return None,
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// One named numeric witness backing a condition verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub key: String,
    pub value: f64,
}

impl Witness {
    pub fn new(key: impl Into<String>, value: f64) -> Self {
        Witness { key: key.into(), value }
    }
}

/// Verdict for one hypothesis condition, always carrying at least one
/// numeric witness and the horizon of the finite evidence behind it.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionRecord {
    pub condition: String,
    pub status: Status,
    pub witness: Vec<Witness>,
    pub horizon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionRecord {
    pub fn new(
        condition: impl Into<String>,
        status: Status,
        witness: Vec<Witness>,
        horizon: f64,
    ) -> Self {
        assert!(!witness.is_empty(), "condition records carry at least one witness");
        ConditionRecord { condition: condition.into(), status, witness, horizon, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn witness_value(&self, key: &str) -> Option<f64> {
        self.witness.iter().find(|w| w.key == key).map(|w| w.value)
    }
}

/// Conjunction of condition verdicts for one theorem: pass only when every
/// condition passes, fail as soon as one fails, inconclusive in between.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub theorem: TheoremId,
    pub status: Status,
    pub conditions: Vec<ConditionRecord>,
}

impl HypothesisReport {
    pub fn assemble(theorem: TheoremId, conditions: Vec<ConditionRecord>) -> Self {
        let status =
            conditions.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        HypothesisReport { theorem, status, conditions }
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionRecord> {
        self.conditions.iter().find(|c| c.condition == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(name: &str, status: Status) -> ConditionRecord {
        ConditionRecord::new(name, status, vec![Witness::new("x", 1.0)], 10.0)
    }

    #[test]
    fn overall_is_conjunction_with_inconclusive_propagation() {
        let r = HypothesisReport::assemble(
            TheoremId::AssumptionA,
            vec![rec("a", Status::Pass), rec("b", Status::Pass)],
        );
        assert_eq!(r.status, Status::Pass);

        let r = HypothesisReport::assemble(
            TheoremId::AssumptionA,
            vec![rec("a", Status::Pass), rec("b", Status::Inconclusive)],
        );
        assert_eq!(r.status, Status::Inconclusive);

        let r = HypothesisReport::assemble(
            TheoremId::AssumptionA,
            vec![rec("a", Status::Inconclusive), rec("b", Status::Fail)],
        );
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    #[should_panic(expected = "witness")]
    fn empty_witness_is_rejected() {
        ConditionRecord::new("bare", Status::Pass, vec![], 1.0);
    }

    #[test]
    fn ids_round_trip() {
        for id in [
            TheoremId::UcMajorant,
            TheoremId::PowerWindowDecay,
            TheoremId::SurrogateIntegrableRatio,
            TheoremId::AssumptionC,
        ] {
            assert_eq!(TheoremId::from_str_id(id.as_str()), Some(id));
        }
    }
}
