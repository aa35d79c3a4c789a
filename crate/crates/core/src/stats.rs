//! Small statistics toolkit: goodness of fit, KS distance, quantiles,
//! bootstrap.

use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson chi-square p-value of observed counts against equal cell
/// probabilities.
pub fn chi_square_uniform_pvalue(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let k = counts.len();
    let e = n as f64 / k as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    chi_square_sf(stat, (k - 1) as f64)
}

/// Pearson chi-square p-value against arbitrary cell probabilities.
pub fn chi_square_pvalue(counts: &[u64], probs: &[f64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let stat: f64 = counts
        .iter()
        .zip(probs)
        .map(|(&c, &p)| {
            let e = p * n as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    chi_square_sf(stat, (counts.len() - 1) as f64)
}

fn chi_square_sf(stat: f64, dof: f64) -> f64 {
    if dof <= 0.0 {
        return 1.0;
    }
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(|p, q| p.partial_cmp(q).unwrap());
    y.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / x.len() as f64 - j as f64 / y.len() as f64).abs());
    }
    d
}

/// Linear-interpolated quantile of unsorted data.
pub fn quantile(data: &[f64], q: f64) -> f64 {
    let mut v = data.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    quantile_sorted(&v, q)
}

pub fn quantile_sorted(v: &[f64], q: f64) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

pub fn median(data: &[f64]) -> f64 {
    quantile(data, 0.5)
}

pub fn mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

/// Excess kurtosis.
pub fn excess_kurtosis(data: &[f64]) -> f64 {
    let m = mean(data);
    let n = data.len() as f64;
    let m2 = data.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m4 = data.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    m4 / (m2 * m2) - 3.0
}

/// Percentile bootstrap interval of a statistic.
pub fn bootstrap_ci<R: Rng + ?Sized, F: Fn(&[f64]) -> f64>(
    data: &[f64],
    stat: F,
    resamples: usize,
    level: f64,
    rng: &mut R,
) -> (f64, f64) {
    let n = data.len();
    let mut buf = vec![0.0; n];
    let mut vals: Vec<f64> = (0..resamples)
        .map(|_| {
            for x in buf.iter_mut() {
                *x = data[rng.gen_range(0..n)];
            }
            stat(&buf)
        })
        .filter(|v| v.is_finite())
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let a = (1.0 - level) / 2.0;
    (quantile_sorted(&vals, a), quantile_sorted(&vals, 1.0 - a))
}

/// Ordinary least squares slope and intercept.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_identical_is_zero() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(ks_distance(&a, &a), 0.0);
        assert_eq!(ks_distance(&[0.0, 0.0], &[1.0, 1.0]), 1.0);
    }

    #[test]
    fn chi_square_extremes() {
        assert!(chi_square_uniform_pvalue(&[100, 100, 100]) > 0.99);
        assert!(chi_square_uniform_pvalue(&[300, 0, 0]) < 1e-6);
    }

    #[test]
    fn quantiles() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(quantile(&[0.0, 10.0], 0.25), 2.5);
        let (s, i) = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((s - 2.0).abs() < 1e-12 && (i - 1.0).abs() < 1e-12);
    }
}
