use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::stats::{linear_fit, quantile_sorted};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    CcdfRegression,
    Hill,
}

/// Fitted tail exponent: P(X >= x) ~ x^exponent, so heavy tails give
/// negative values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub exponent: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub method: TailMethod,
    pub sample_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub method: TailMethod,
    pub bootstrap: usize,
    /// the fit starts at this quantile
    pub lower_quantile: f64,
    /// and stops where fewer than `min_exceed` samples remain above
    pub min_exceed: usize,
    /// optional hard upper end, e.g. a finite-size cutoff
    pub upper: Option<f64>,
    pub grid_points: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            method: TailMethod::CcdfRegression,
            bootstrap: 200,
            lower_quantile: 0.5,
            min_exceed: 20,
            upper: None,
            grid_points: 24,
        }
    }
}

pub fn fit_tail_exponent(samples: &[f64], method: TailMethod, bootstrap: usize) -> Result<TailFit> {
    fit_tail_exponent_with(samples, &FitConfig { method, bootstrap, ..Default::default() })
}

fn estimate(sorted: &[f64], cfg: &FitConfig) -> Option<f64> {
    let n = sorted.len();
    let lo = quantile_sorted(sorted, cfg.lower_quantile);
    if lo <= 0.0 {
        return None;
    }
    let mut hi = sorted[n.saturating_sub(cfg.min_exceed.max(1))];
    if let Some(u) = cfg.upper {
        hi = hi.min(u);
    }
    if hi <= lo {
        return None;
    }
    match cfg.method {
        TailMethod::CcdfRegression => {
            // each grid point is moved onto the first sample at or above it,
            // where the empirical CCDF actually steps
            let m = cfg.grid_points.max(2);
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            let mut last = usize::MAX;
            for j in 0..m {
                let x = lo * (hi / lo).powf(j as f64 / (m - 1) as f64);
                let i = sorted.partition_point(|&s| s < x);
                if i >= n || i == last || sorted[i] > hi {
                    continue;
                }
                last = i;
                xs.push(sorted[i].ln());
                ys.push(((n - i) as f64 / n as f64).ln());
            }
            if xs.len() < 2 {
                return None;
            }
            Some(linear_fit(&xs, &ys).0)
        }
        TailMethod::Hill => {
            // threshold is the lower end; capped samples are dropped
            let i0 = sorted.partition_point(|&s| s < lo);
            let top: Vec<f64> = sorted[i0..].iter().copied().filter(|&s| s <= hi).collect();
            let t = top.first().copied()?;
            let k = top.len();
            if k < 2 {
                return None;
            }
            let mean_log = top.iter().map(|&s| (s / t).ln()).sum::<f64>() / k as f64;
            if mean_log <= 0.0 {
                return None;
            }
            Some(-1.0 / mean_log)
        }
    }
}

pub fn fit_tail_exponent_with(samples: &[f64], cfg: &FitConfig) -> Result<TailFit> {
    let n = samples.len();
    if n < 200 {
        return Err(Error::TooFewSamples { got: n, need: 200 });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted[0] == sorted[n - 1] {
        return Err(Error::DegenerateSamples);
    }
    let exponent = estimate(&sorted, cfg).ok_or(Error::DegenerateSamples)?;
    // fixed internal stream: a fit is a pure function of its input
    let mut rng = seeded(0x07a1_1f17 ^ n as u64);
    let mut vals = Vec::with_capacity(cfg.bootstrap);
    let mut buf = vec![0.0; n];
    for _ in 0..cfg.bootstrap {
        for x in buf.iter_mut() {
            *x = sorted[rand::Rng::gen_range(&mut rng, 0..n)];
        }
        buf.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let Some(e) = estimate(&buf, cfg) {
            vals.push(e);
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (mut ci_low, mut ci_high) = if vals.is_empty() {
        (exponent, exponent)
    } else {
        (quantile_sorted(&vals, 0.025), quantile_sorted(&vals, 0.975))
    };
    ci_low = ci_low.min(exponent);
    ci_high = ci_high.max(exponent);
    Ok(TailFit { exponent, ci_low, ci_high, method: cfg.method, sample_count: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn pareto(n: usize, beta: f64, seed: u64) -> Vec<f64> {
        let mut rng = seeded(seed);
        (0..n).map(|_| (1.0 - rng.gen::<f64>()).powf(-1.0 / beta)).collect()
    }

    #[test]
    fn synthetic_pareto() {
        let xs = pareto(100_000, 1.5, 1);
        for m in [TailMethod::CcdfRegression, TailMethod::Hill] {
            let fit = fit_tail_exponent(&xs, m, 50).unwrap();
            assert!((fit.exponent + 1.5).abs() < 0.1, "{m:?}: {}", fit.exponent);
            assert!(fit.ci_low <= fit.exponent && fit.exponent <= fit.ci_high);
        }
    }

    #[test]
    fn constant_and_small_inputs() {
        assert_eq!(fit_tail_exponent(&[3.0; 500], TailMethod::Hill, 10), Err(Error::DegenerateSamples));
        assert!(matches!(fit_tail_exponent(&[1.0, 2.0], TailMethod::Hill, 10), Err(Error::TooFewSamples { .. })));
    }

    #[test]
    fn scale_invariance() {
        let xs = pareto(5000, 0.5, 2);
        let ys: Vec<f64> = xs.iter().map(|x| 7.25 * x).collect();
        for m in [TailMethod::CcdfRegression, TailMethod::Hill] {
            let a = fit_tail_exponent(&xs, m, 20).unwrap();
            let b = fit_tail_exponent(&ys, m, 20).unwrap();
            assert!((a.exponent - b.exponent).abs() < 1e-9);
        }
    }

    #[test]
    fn discrete_pareto_with_cap() {
        let mut rng = seeded(3);
        let xs: Vec<f64> = (0..20_000).map(|_| (1.0 - rng.gen::<f64>()).powf(-1.0 / 0.5).floor().min(500.0)).collect();
        let cfg = FitConfig { upper: Some(250.0), ..Default::default() };
        let fit = fit_tail_exponent_with(&xs, &cfg).unwrap();
        assert!((fit.exponent + 0.5).abs() < 0.1, "{}", fit.exponent);
    }
}
