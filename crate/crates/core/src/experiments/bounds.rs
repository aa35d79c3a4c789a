use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ExperimentReport, Table};
use crate::peeling::{depth_counts_to_curve, overshoot_depth_counts, overshoot_vs_tau_at_one};
use crate::quad::log_q_asymptotic;
use crate::rng::substream;
use crate::stats::ks_distance;
use crate::tree::{catalan, uniform_dyck_steps};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnReport {
    pub k: usize,
    pub gamma: f64,
    pub sigma: f64,
    pub alpha: f64,
    /// largest explored size r = floor((1 - gamma) k)
    pub explored: usize,
    /// (k', exact ratio) at the largest explored size
    pub tree_ratios: Vec<(usize, f64)>,
    /// C_{k-r} 4^r / C_k, the k' -> infinity limit, maximised over r
    pub tree_limit: f64,
    pub tree_bound: f64,
    pub tree_pass: bool,
    /// faces of the bounded map, (k / sigma)^2
    pub faces: f64,
    /// (f', max of the chain over the grid in m and l)
    pub map_chain: Vec<(f64, f64)>,
    pub map_bound: f64,
    pub map_pass: bool,
}

fn ln_big(x: &BigUint) -> f64 {
    // log of a big integer via its top 64 bits
    let bits = x.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(x).unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// ln(C_{k-r} C_{k+k'} / (C_k C_{k+k'-r})), exact Catalan numbers.
fn ln_tree_ratio(k: usize, kp: usize, r: usize) -> f64 {
    ln_big(&(catalan(k - r) * catalan(k + kp))) - ln_big(&(catalan(k) * catalan(k + kp - r)))
}

/// Chain value of the map-side Radon-Nikodym bound at (m, l) for extra area fp.
fn map_chain(f: f64, sigma: f64, m: f64, l: f64, fp: f64) -> f64 {
    let g = f + fp;
    let lg = l + sigma * (g.sqrt() - f.sqrt());
    (log_q_asymptotic(g, sigma * g.sqrt()) - log_q_asymptotic(f, sigma * f.sqrt()) + log_q_asymptotic(m, l)
        - log_q_asymptotic(m + fp, lg))
    .exp()
}

pub fn rn_bound_check(k: usize, gamma: f64, sigma: f64, alpha: f64) -> RnReport {
    let r = ((1.0 - gamma) * k as f64).floor() as usize;
    let tree_ratios: Vec<(usize, f64)> =
        [k, 10 * k, 100 * k, 1000 * k].iter().map(|&kp| (kp, ln_tree_ratio(k, kp, r).exp())).collect();
    let tree_limit = (0..=r)
        .map(|s| (ln_big(&catalan(k - s)) + s as f64 * 4f64.ln() - ln_big(&catalan(k))).exp())
        .fold(0.0, f64::max);
    let tree_bound = 1.05 * gamma.powf(-1.5);
    let tree_pass = tree_limit <= tree_bound && tree_ratios.iter().all(|t| t.1 <= tree_bound);

    let f = (k as f64 / sigma).powi(2);
    let steps = 40;
    let map_chain: Vec<(f64, f64)> = [1.0, 10.0, 1e3, 1e6]
        .iter()
        .map(|&mult| {
            let fp = mult * f;
            let mut best = 0.0f64;
            for i in 0..=steps {
                let m = alpha * f + (1.0 - alpha) * f * i as f64 / steps as f64;
                for j in 0..=steps {
                    // geometric grid in l over [alpha sqrt f, sqrt f / alpha]
                    let l = alpha * f.sqrt() * (alpha.powi(-2)).powf(j as f64 / steps as f64);
                    best = best.max(map_chain(f, sigma, m, l, fp));
                }
            }
            (fp, best)
        })
        .collect();
    let map_bound = alpha.powi(-3) * sigma.powf(-0.5) * (2.25 * sigma * sigma).exp();
    let map_pass = map_chain.last().map(|c| c.1 <= map_bound).unwrap_or(false);
    RnReport {
        k,
        gamma,
        sigma,
        alpha,
        explored: r,
        tree_ratios,
        tree_limit,
        tree_bound,
        tree_pass,
        faces: f,
        map_chain,
        map_bound,
        map_pass,
    }
}

pub fn rn_report(ks: &[usize], gamma: f64, sigma: f64, alpha: f64) -> ExperimentReport {
    let mut rep = ExperimentReport::new("rn", 0);
    rep.echo("k", ks);
    rep.echo("gamma", gamma);
    rep.echo("sigma", sigma);
    rep.echo("alpha", alpha);
    let mut t = Table::new("rn_bounds", &["k", "tree_limit", "tree_bound", "map_chain", "map_bound"]);
    for &k in ks {
        let r = rn_bound_check(k, gamma, sigma, alpha);
        let chain = r.map_chain.last().unwrap().1;
        rep.check(&format!("tree-side ratio within bound at k={k}"), r.tree_pass, format!("{:.4} <= {:.4}", r.tree_limit, r.tree_bound));
        rep.check(&format!("map-side chain within bound at k={k}"), r.map_pass, format!("{chain:.4} <= {:.4}", r.map_bound));
        t.rows.push(vec![k as f64, r.tree_limit, r.tree_bound, chain, r.map_bound]);
    }
    rep.tables.push(t);
    rep
}

fn max_height_ratio(k: usize, seed: u64, i: u64) -> f64 {
    let mut rng = substream(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15), i);
    let mut h = 0i64;
    let mut best = 0i64;
    for u in uniform_dyck_steps(k, &mut rng) {
        h += if u { 1 } else { -1 };
        best = best.max(h);
    }
    best as f64 / (2.0 * k as f64).sqrt()
}

/// Rescaled contour maxima at size k.
pub fn contour_maxima(k: usize, samples: usize, seed: u64) -> Vec<f64> {
    (0..samples as u64).into_par_iter().map(|i| max_height_ratio(k, seed, i)).collect()
}

/// KS distance between rescaled contour maxima at the two sizes.
pub fn donsker_diagnostic(k_small: usize, k_large: usize, samples: usize, seed: u64) -> f64 {
    ks_distance(&contour_maxima(k_small, samples, seed), &contour_maxima(k_large, samples, seed))
}

pub fn donsker_experiment(k_small: usize, k_large: usize, samples: usize, seed: u64) -> ExperimentReport {
    let mut rep = ExperimentReport::new("donsker", seed);
    rep.echo("k_small", k_small);
    rep.echo("k_large", k_large);
    rep.echo("samples", samples);
    let a = contour_maxima(k_small, samples, seed);
    let b = contour_maxima(k_large, samples, seed);
    let ks = ks_distance(&a, &b);
    let mut t = Table::new("contour_maxima_quantiles", &["q", "small", "large"]);
    for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
        t.rows.push(vec![q, crate::stats::quantile(&a, q), crate::stats::quantile(&b, q)]);
    }
    rep.tables.push(t);
    rep.check("KS distance below 0.05", ks < 0.05, format!("{ks:.4}"));
    rep
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    /// P(O >= tau_1 + ... + tau_a) for a = 1..=max_a, on all samples
    pub curve: Vec<f64>,
    pub sup_half: f64,
    pub sup_full: f64,
    pub exact_at_one: f64,
}

/// Monte-Carlo curve of the overshoot-versus-hitting-time probability, run
/// in 16 fixed chunks so the result does not depend on the thread count.
pub fn claim_experiment(max_a: u64, samples: u64, exponent: f64, seed: u64) -> (ClaimOutcome, ExperimentReport) {
    let chunks = 16u64;
    let per = samples / chunks;
    let counts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| overshoot_depth_counts(max_a, per, exponent, &mut substream(seed, c)))
        .collect();
    let sum = |cs: &[Vec<u64>]| {
        let mut acc = vec![0u64; max_a as usize + 1];
        for c in cs {
            for (a, x) in acc.iter_mut().zip(c) {
                *a += x;
            }
        }
        acc
    };
    let sup = |curve: &[f64]| curve.iter().enumerate().map(|(i, p)| (i + 1) as f64 * p).fold(0.0, f64::max);
    let half_curve = depth_counts_to_curve(&sum(&counts[..chunks as usize / 2]));
    let curve = depth_counts_to_curve(&sum(&counts));
    let out = ClaimOutcome {
        sup_half: sup(&half_curve),
        sup_full: sup(&curve),
        exact_at_one: overshoot_vs_tau_at_one(exponent, 1_000_000),
        curve,
    };
    let mut rep = ExperimentReport::new("claim", seed);
    rep.echo("max_a", max_a);
    rep.echo("samples", per * chunks);
    rep.echo("exponent", exponent);
    let ratio = out.sup_full / out.sup_half;
    rep.check(
        "sup a*P(a) finite and stable within factor 2",
        out.sup_full.is_finite() && (0.5..=2.0).contains(&ratio),
        format!("half {:.4}, full {:.4}", out.sup_half, out.sup_full),
    );
    rep.check("curve nonincreasing in a", out.curve.windows(2).all(|w| w[0] >= w[1]), "");
    let se = (out.exact_at_one * (1.0 - out.exact_at_one) / (per * chunks) as f64).sqrt();
    rep.check(
        "a = 1 matches the series",
        (out.curve[0] - out.exact_at_one).abs() <= 4.0 * se,
        format!("{:.5} vs {:.5}", out.curve[0], out.exact_at_one),
    );
    let mut t = Table::new("claim_curve", &["a", "probability", "a_times_probability"]);
    t.rows = out.curve.iter().enumerate().map(|(i, &p)| vec![(i + 1) as f64, p, (i + 1) as f64 * p]).collect();
    rep.tables.push(t);
    (out, rep)
}
