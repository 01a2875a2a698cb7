//! Declarative scenario configuration: everything a run needs, in one
//! serializable tree. Function descriptors follow the funcspace textual
//! schema; omitted knobs resolve to documented defaults.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypothesis::CheckConfig;
use crate::odesolve::{Scheme, SolverConfig};
use crate::pde::{Grid1D, Nonlinearity, PdeConfig, SpaceProfile};
use crate::scenario::expect::Expectation;
use crate::verdict::VerdictPolicy;

/// Which pipeline a scenario drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Surrogate,
    Pde,
    Peano,
    CheckOnly,
    Catalog,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::Surrogate => "surrogate",
            ScenarioKind::Pde => "pde",
            ScenarioKind::Peano => "peano",
            ScenarioKind::CheckOnly => "check-only",
            ScenarioKind::Catalog => "catalog",
        }
    }
}

fn default_seed() -> u64 {
    42
}

/// Solver knobs; unset fields fall back to per-kind defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
}

impl SolverSection {
    pub fn overlay(&mut self, other: &SolverSection) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(scheme, dt, t_end, record_every, max_steps, residual_tol);
    }

    /// Record roughly `target_points` samples of a run with `steps` steps.
    fn auto_record_every(steps: f64, target_points: f64) -> usize {
        ((steps / target_points).ceil() as usize).max(1)
    }

    pub fn to_solver_config(&self, dt_default: f64, t_end_default: f64) -> Result<SolverConfig> {
        let scheme = match self.scheme.as_deref() {
            None | Some("rk4") => Scheme::Rk4,
            Some("semi-implicit") => Scheme::SemiImplicit,
            Some(other) => {
                return Err(Error::Config(format!("unknown scheme '{other}'")));
            }
        };
        let dt = self.dt.unwrap_or(dt_default);
        let t_end = self.t_end.unwrap_or(t_end_default);
        let record_every = self
            .record_every
            .unwrap_or_else(|| Self::auto_record_every(t_end / dt, 20_000.0));
        let config = SolverConfig {
            scheme,
            dt,
            t_end,
            max_steps: self.max_steps.unwrap_or(100_000_000),
            record_every,
            ..SolverConfig::default()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_pde_config(&self, snapshot_times: &[f64]) -> Result<PdeConfig> {
        let dt = self.dt.unwrap_or(1e-2);
        let t_end = self.t_end.unwrap_or(100.0);
        let record_every = self
            .record_every
            .unwrap_or_else(|| Self::auto_record_every(t_end / dt, 20_000.0));
        let config = PdeConfig {
            dt,
            t_end,
            record_every,
            snapshot_times: snapshot_times.to_vec(),
            residual_tol: self.residual_tol.unwrap_or(1e-8),
            max_steps: self.max_steps.unwrap_or(100_000_000),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Hypothesis-checker knobs; unset fields use [`CheckConfig`] defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend_horizon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_counts: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_grid: Option<usize>,
}

impl CheckSection {
    pub fn overlay(&mut self, other: &CheckSection) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(
            horizon, s_min, trend_horizon, deltas, pair_counts, rel_tol, tail_tol,
            divergence_bound, zeta_grid
        );
    }

    pub fn to_check_config(&self) -> Result<CheckConfig> {
        let mut config = CheckConfig::default();
        if let Some(v) = self.horizon {
            config.horizon = v;
        }
        if let Some(v) = self.s_min {
            config.s_min = v;
        }
        if let Some(v) = self.trend_horizon {
            config.trend_horizon = v;
        }
        if let Some(v) = &self.deltas {
            config.deltas = v.clone();
        }
        if let Some(v) = self.pair_counts {
            config.pair_counts = v;
        }
        if let Some(v) = self.rel_tol {
            config.rel_tol = v;
        }
        if let Some(v) = self.tail_tol {
            config.tail_tol = v;
        }
        if let Some(v) = self.divergence_bound {
            config.divergence_bound = v;
        }
        if let Some(v) = self.zeta_grid {
            config.zeta_grid = v;
        }
        config.validate()?;
        Ok(config)
    }
}

/// Grid knobs for PDE scenarios.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

impl GridSection {
    pub fn overlay(&mut self, other: &GridSection) {
        if other.n.is_some() {
            self.n = other.n;
        }
        if other.length.is_some() {
            self.length = other.length;
        }
    }

    pub fn to_grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.length.unwrap_or(std::f64::consts::PI), self.n.unwrap_or(100))
    }
}

/// Decay-verdict knobs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floor_stability: Option<f64>,
}

impl VerdictSection {
    pub fn overlay(&mut self, other: &VerdictSection) {
        if other.epsilon.is_some() {
            self.epsilon = other.epsilon;
        }
        if other.windows.is_some() {
            self.windows = other.windows;
        }
        if other.floor_stability.is_some() {
            self.floor_stability = other.floor_stability;
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or(1e-3)
    }

    pub fn to_policy(&self) -> VerdictPolicy {
        let mut policy = VerdictPolicy::default();
        if let Some(w) = self.windows {
            policy.windows = w;
        }
        if let Some(f) = self.floor_stability {
            policy.floor_stability = f;
        }
        policy
    }
}

/// Delayed-iteration knobs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeanoSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
}

impl PeanoSection {
    pub fn overlay(&mut self, other: &PeanoSection) {
        if other.n_list.is_some() {
            self.n_list = other.n_list.clone();
        }
        if other.dt.is_some() {
            self.dt = other.dt;
        }
        if other.t_end.is_some() {
            self.t_end = other.t_end;
        }
    }

    pub fn n_list(&self) -> Vec<u32> {
        self.n_list.clone().unwrap_or_else(|| vec![8, 16, 32, 64])
    }

    pub fn dt(&self) -> f64 {
        self.dt.unwrap_or(1.0 / 1024.0)
    }

    pub fn t_end(&self) -> f64 {
        self.t_end.unwrap_or(2.0)
    }
}

/// A declarative scenario: functions by role (funcspace descriptors),
/// theorem targets, solver/grid parameters, horizons, tolerances and
/// expected outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub id: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Function descriptors by role. Surrogate/peano: `rate`, `forcing`,
    /// `nonlinearity`. Pde: `gamma`, `forcing_amplitude`,
    /// `forcing_profile`, `u0`, `nonlinearity`. Check-only: `slope`,
    /// `weight`, `envelope`, `rate`/`gamma`, `forcing`/`beta`,
    /// `nonlinearity`.
    #[serde(default)]
    pub functions: BTreeMap<String, String>,
    /// Restrict reports to these theorem ids (empty = all applicable).
    #[serde(default)]
    pub theorems: Vec<String>,
    /// Named constants: `g0`, `a`, `C`, `alpha`, `k`.
    #[serde(default)]
    pub constants: BTreeMap<String, f64>,
    /// State bounds for the uniform-continuity sweep (check-only).
    #[serde(default)]
    pub state_bounds: Vec<f64>,
    /// Shift constants for the regularity sweep (check-only).
    #[serde(default)]
    pub shift_constants: Vec<f64>,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub check: CheckSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub verdict: VerdictSection,
    #[serde(default)]
    pub peano: PeanoSection,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    /// Run the monotone-clock pipeline on surrogate trajectories.
    #[serde(default)]
    pub reparameterize: bool,
    /// Dissipativity probe pair count for PDE scenarios (0 = skip).
    #[serde(default)]
    pub probe_pairs: usize,
    /// Catalog case to run when `kind = catalog`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_id: Option<String>,
    /// Expected outcomes; a run exits nonzero when one is violated.
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind, id: impl Into<String>) -> Self {
        ScenarioConfig {
            kind,
            id: id.into(),
            seed: default_seed(),
            functions: BTreeMap::new(),
            theorems: Vec::new(),
            constants: BTreeMap::new(),
            state_bounds: Vec::new(),
            shift_constants: Vec::new(),
            solver: SolverSection::default(),
            check: CheckSection::default(),
            grid: GridSection::default(),
            verdict: VerdictSection::default(),
            peano: PeanoSection::default(),
            snapshot_times: Vec::new(),
            reparameterize: false,
            probe_pairs: 0,
            catalog_id: None,
            expect: Vec::new(),
        }
    }

    pub fn with_function(mut self, role: &str, descriptor: &str) -> Self {
        self.functions.insert(role.to_string(), descriptor.to_string());
        self
    }

    pub fn with_constant(mut self, name: &str, value: f64) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }

    pub fn function(&self, role: &str) -> Option<&str> {
        self.functions.get(role).map(|s| s.as_str())
    }

    pub fn require_function(&self, role: &str) -> Result<&str> {
        self.function(role).ok_or_else(|| {
            Error::Config(format!(
                "kind={} requires functions.{role}",
                self.kind.as_str()
            ))
        })
    }

    /// Parse a JSON scenario document.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("scenario config: {e} (line {}, column {})", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario configs serialize")
    }
}

/// Parse a nonlinearity descriptor: `none`, `cubic` or `odd_power(p)`.
pub fn parse_nonlinearity(text: &str) -> Result<Nonlinearity> {
    let t = text.trim();
    let nl = match t {
        "none" => Nonlinearity::None,
        "cubic" => Nonlinearity::Cubic,
        _ => {
            if let Some(body) = t.strip_prefix("odd_power(").and_then(|s| s.strip_suffix(')')) {
                let p: f64 = body
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad odd_power exponent '{body}'")))?;
                Nonlinearity::OddPower(p)
            } else {
                return Err(Error::Parse(format!(
                    "unknown nonlinearity '{t}' (expected none, cubic or odd_power(p))"
                )));
            }
        }
    };
    nl.validate()?;
    Ok(nl)
}

/// Parse a spatial profile descriptor: `zero`, `sine(mode, scale)` or
/// `unit_sine(mode)`.
pub fn parse_profile(text: &str) -> Result<SpaceProfile> {
    let t = text.trim();
    if t == "zero" {
        return Ok(SpaceProfile::Zero);
    }
    if let Some(body) = t.strip_prefix("sine(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("sine profile needs (mode, scale), got '{t}'")));
        }
        let mode: u32 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad sine mode '{}'", parts[0])))?;
        let scale: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad sine scale '{}'", parts[1])))?;
        return Ok(SpaceProfile::Sine { mode, scale });
    }
    if let Some(body) = t.strip_prefix("unit_sine(").and_then(|s| s.strip_suffix(')')) {
        let mode: u32 = body
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad unit_sine mode '{body}'")))?;
        return Ok(SpaceProfile::UnitSine { mode });
    }
    Err(Error::Parse(format!(
        "unknown profile '{t}' (expected zero, sine(mode, scale) or unit_sine(mode))"
    )))
}
