//! Time-stamped solution data with metadata and CSV serialization.

use crate::error::{Error, Result};

/// Which clock the time axis is in.
#[derive(Debug, Clone, PartialEq)]
pub enum Clock {
    /// Original time.
    T,
    /// Reparameterized clock, carrying the map horizon.
    S { map_horizon: f64 },
}

/// Provenance of a trajectory: scheme, step policy and scenario id, plus
/// runtime events.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub scheme: String,
    pub dt: f64,
    pub scenario: String,
    pub clip_events: usize,
    pub complete: bool,
    pub clock: Clock,
}

impl Default for TrajectoryMeta {
    fn default() -> Self {
        TrajectoryMeta {
            scheme: "rk4".into(),
            dt: 0.0,
            scenario: String::new(),
            clip_events: 0,
            complete: true,
            clock: Clock::T,
        }
    }
}

/// A strictly increasing time grid with per-time scalar or fixed-width
/// vector samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    data: Vec<f64>,
    width: usize,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn new(
        times: Vec<f64>,
        data: Vec<f64>,
        width: usize,
        meta: TrajectoryMeta,
    ) -> Result<Self> {
        if width == 0 {
            return Err(Error::Validation("trajectory width must be positive".into()));
        }
        if times.len() * width != data.len() {
            return Err(Error::Validation(format!(
                "trajectory size mismatch: {} times × width {} ≠ {} values",
                times.len(),
                width,
                data.len()
            )));
        }
        if times.is_empty() {
            return Err(Error::Validation("trajectory needs at least one sample".into()));
        }
        for w in times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Validation(format!(
                    "trajectory times must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        for v in &data {
            if !v.is_finite() {
                return Err(Error::Validation(format!("trajectory value {v} is not finite")));
            }
        }
        Ok(Trajectory { times, data, width, meta })
    }

    pub fn scalar(times: Vec<f64>, values: Vec<f64>, meta: TrajectoryMeta) -> Result<Self> {
        Trajectory::new(times, values, 1, meta)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    /// Scalar sample at index `i` (first component for vector data).
    pub fn value(&self, i: usize) -> f64 {
        self.data[i * self.width]
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last_time(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn last_row(&self) -> &[f64] {
        self.row(self.len() - 1)
    }

    /// Linear interpolation of the scalar component at time `t`.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if t < self.first_time() || t > self.last_time() {
            return Err(Error::Domain(format!(
                "query t={t} outside trajectory span [{}, {}]",
                self.first_time(),
                self.last_time()
            )));
        }
        let i = match self.times.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return Ok(self.value(i)),
            Err(i) => i - 1,
        };
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let (v0, v1) = (self.value(i), self.value(i + 1));
        Ok(v0 + (t - t0) / (t1 - t0) * (v1 - v0))
    }

    /// Max of the scalar component over `lo ≤ t ≤ hi` (sampled values).
    pub fn sup_on(&self, lo: f64, hi: f64) -> f64 {
        self.times
            .iter()
            .enumerate()
            .filter(|(_, t)| **t >= lo && **t <= hi)
            .map(|(i, _)| self.value(i))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Min of the scalar component over `lo ≤ t ≤ hi` (sampled values).
    pub fn inf_on(&self, lo: f64, hi: f64) -> f64 {
        self.times
            .iter()
            .enumerate()
            .filter(|(_, t)| **t >= lo && **t <= hi)
            .map(|(i, _)| self.value(i))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| *v >= 0.0)
    }

    /// CSV with a `# key=value` metadata header block; '.' decimal
    /// separator, time in seconds.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# scheme={}\n", self.meta.scheme));
        out.push_str(&format!("# dt={}\n", self.meta.dt));
        out.push_str(&format!("# scenario={}\n", self.meta.scenario));
        out.push_str(&format!("# clip_events={}\n", self.meta.clip_events));
        out.push_str(&format!("# complete={}\n", self.meta.complete));
        match &self.meta.clock {
            Clock::T => out.push_str("# clock=t\n"),
            Clock::S { map_horizon } => {
                out.push_str("# clock=s\n");
                out.push_str(&format!("# map_horizon={map_horizon}\n"));
            }
        }
        if self.width == 1 {
            out.push_str("t,value\n");
        } else {
            out.push('t');
            for i in 0..self.width {
                out.push_str(&format!(",u{i}"));
            }
            out.push('\n');
        }
        for (i, t) in self.times.iter().enumerate() {
            out.push_str(&format!("{t}"));
            for v in self.row(i) {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the CSV format produced by [`Trajectory::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut meta = TrajectoryMeta::default();
        let mut map_horizon: Option<f64> = None;
        let mut clock_s = false;
        let mut times = Vec::new();
        let mut data = Vec::new();
        let mut width = 0usize;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.trim().split_once('=') {
                    match k.trim() {
                        "scheme" => meta.scheme = v.trim().to_string(),
                        "dt" => meta.dt = v.trim().parse().unwrap_or(0.0),
                        "scenario" => meta.scenario = v.trim().to_string(),
                        "clip_events" => meta.clip_events = v.trim().parse().unwrap_or(0),
                        "complete" => meta.complete = v.trim() == "true",
                        "clock" => clock_s = v.trim() == "s",
                        "map_horizon" => map_horizon = v.trim().parse().ok(),
                        _ => {}
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields[0] == "t" {
                width = fields.len() - 1;
                continue;
            }
            let t: f64 = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad time field '{}'", fields[0])))?;
            times.push(t);
            for f in &fields[1..] {
                let v: f64 =
                    f.parse().map_err(|_| Error::Parse(format!("bad value field '{f}'")))?;
                data.push(v);
            }
        }
        if clock_s {
            meta.clock = Clock::S { map_horizon: map_horizon.unwrap_or(f64::NAN) };
        }
        if width == 0 {
            width = if times.is_empty() { 1 } else { data.len() / times.len() };
        }
        Trajectory::new(times, data, width.max(1), meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_grid_and_values() {
        assert!(Trajectory::scalar(vec![0.0, 1.0], vec![1.0, 2.0], Default::default()).is_ok());
        assert!(Trajectory::scalar(vec![0.0, 0.0], vec![1.0, 2.0], Default::default()).is_err());
        assert!(
            Trajectory::scalar(vec![0.0, 1.0], vec![1.0, f64::NAN], Default::default()).is_err()
        );
        assert!(Trajectory::scalar(vec![], vec![], Default::default()).is_err());
    }

    #[test]
    fn interpolation_and_window_extrema() {
        let tr = Trajectory::scalar(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![0.0, 2.0, 1.0, 4.0],
            Default::default(),
        )
        .unwrap();
        assert_eq!(tr.value_at(0.5).unwrap(), 1.0);
        assert_eq!(tr.value_at(3.0).unwrap(), 4.0);
        assert!(tr.value_at(3.5).is_err());
        assert_eq!(tr.sup_on(0.5, 2.5), 2.0);
        assert_eq!(tr.inf_on(1.0, 3.0), 1.0);
    }

    #[test]
    fn csv_round_trip() {
        let mut meta = TrajectoryMeta::default();
        meta.scheme = "rk4".into();
        meta.dt = 0.25;
        meta.scenario = "roundtrip".into();
        meta.clock = Clock::S { map_horizon: 7.5 };
        let tr = Trajectory::new(
            vec![0.0, 0.5, 1.25],
            vec![1.0, 2.0, 0.5, 1.5, 0.25, 1.125],
            2,
            meta,
        )
        .unwrap();
        let parsed = Trajectory::from_csv(&tr.to_csv()).unwrap();
        assert_eq!(tr, parsed);
    }
}
