//! Statistical harness: tail fits, scaling series and the experiment runners.
//!
//! Every runner takes a seed instead of a generator. Replicate i draws from
//! `substream(seed, i)` (or a grid-indexed variant) and results are merged in
//! index order, so reports do not depend on the thread count.

mod bounds;
mod diameter;
mod fit;
mod overshoot;
mod peel_tail;
mod subadditive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quad::core::RejectionConfig;
use crate::quad::sample_simple_boundary_quad;
use crate::rng::{substream, Rng};

pub use bounds::{
    claim_experiment, contour_maxima, donsker_diagnostic, donsker_experiment, rn_bound_check, rn_report, ClaimOutcome,
    RnReport,
};
pub use diameter::{diameter_experiment, tree_diameter, DiameterOutcome};
pub use fit::{fit_tail_exponent, fit_tail_exponent_with, FitConfig, TailFit, TailMethod};
pub use overshoot::{boundary_overshoots, overshoot_experiment, OvershootOutcome};
pub use peel_tail::{peel_tail_experiment, PeelTailOutcome};
pub use subadditive::{subadditive_experiment, SubadditiveOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    /// abscissa: face count, or spine index for spine series
    pub f: f64,
    pub sigma_realized: f64,
    pub value: f64,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSeries {
    pub name: String,
    pub normalization: String,
    pub points: Vec<ScalingPoint>,
}

impl ScalingSeries {
    pub fn new(name: &str, normalization: &str) -> Self {
        ScalingSeries { name: name.into(), normalization: normalization.into(), points: Vec::new() }
    }

    /// Adds a point; abscissae must increase.
    pub fn push(&mut self, p: ScalingPoint) {
        if let Some(last) = self.points.last() {
            assert!(p.f > last.f, "abscissae must increase");
        }
        self.points.push(p);
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].value < w[0].value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFit {
    pub name: String,
    pub fit: TailFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    pub config: serde_json::Map<String, serde_json::Value>,
    pub series: Vec<ScalingSeries>,
    pub fits: Vec<NamedFit>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seed: u64) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            seed,
            config: Default::default(),
            series: Vec::new(),
            fits: Vec::new(),
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn echo(&mut self, key: &str, value: impl Serialize) {
        self.config.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn fit(&mut self, name: &str, fit: TailFit) {
        self.fits.push(NamedFit { name: name.into(), fit });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Runs `job(i, rng_i)` for i in 0..n in parallel and returns the results in
/// index order. The first error by index wins.
pub fn replicate<T, F>(n: usize, stream: impl Fn(u64) -> Rng + Sync, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut Rng) -> Result<T> + Sync,
{
    let out: Vec<Result<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(i as u64);
            job(i, &mut rng)
        })
        .collect();
    out.into_iter().collect()
}

/// Stream for replicate `i` of grid cell `cell`.
pub fn grid_stream(seed: u64, cell: usize, i: u64) -> Rng {
    substream(seed, ((cell as u64 + 1) << 40) | i)
}

/// Runs the simple-boundary sampler once from a reserved stream and returns
/// a config whose starting parameters come from the accepted attempt.
pub fn calibrate(f: usize, l: usize, window: f64, seed: u64, cell: usize) -> Result<RejectionConfig> {
    let mut rng = grid_stream(seed, cell, (1 << 40) - 1);
    let cfg = RejectionConfig { window, ..Default::default() };
    let s = sample_simple_boundary_quad(f, l, cfg, &mut rng)?;
    Ok(RejectionConfig { start: Some(s.inflated), ..cfg })
}

/// Fraction of `xs` satisfying `pred`.
pub(crate) fn fraction<T>(xs: &[T], pred: impl Fn(&T) -> bool) -> f64 {
    xs.iter().filter(|x| pred(x)).count() as f64 / xs.len().max(1) as f64
}
