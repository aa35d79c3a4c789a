use serde::{Deserialize, Serialize};

use super::{calibrate, grid_stream, replicate, ExperimentReport, Table};
use crate::error::Result;
use crate::map::NONE;
use crate::peeling::{centered_pareto_sums, host_from_quad, increment_tail_ccdf, peel_to_tip, IncrementSeries};
use crate::quad::sample_simple_boundary_quad;
use crate::rng::substream;
use crate::stats::{bootstrap_ci, excess_kurtosis, linear_fit, median, quantile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelTailOutcome {
    pub series: Vec<IncrementSeries>,
    /// rows (a, ccdf, a ccdf)
    pub ccdf: Vec<(u64, f64, f64)>,
    pub slope: f64,
    /// slope over every a with 10 or more exceedances, ignoring the spine cutoff
    pub slope_uncapped: f64,
    /// largest a used in the fit: half the median spine length
    pub fit_cap: f64,
    /// sup over a <= max_a of a ccdf(a), on the first half of the hosts and on all
    pub sup_half: f64,
    pub sup_full: f64,
    pub balls_contained: bool,
    /// tail constant used for the centred sums
    pub tail_constant: f64,
    /// per l: (l, median, ci_low, ci_high, excess kurtosis)
    pub cauchy: Vec<(usize, f64, f64, f64, f64)>,
    /// interquartile ranges at the largest l for tail exponents 1 and 2
    pub contrast_iqr: (f64, f64),
}

fn sup_a_ccdf(series: &[IncrementSeries], max_a: u64) -> Result<f64> {
    Ok(increment_tail_ccdf(series, max_a)?.iter().map(|r| r.2).fold(0.0, f64::max))
}

/// Peels `hosts` instances from spine segment [0, 0] to the spine tip, pools
/// increments and checks the layer containment on every instance.
#[allow(clippy::too_many_arguments)]
pub fn peel_tail_experiment(
    host_faces: usize,
    sigma: f64,
    min_spine: usize,
    hosts: usize,
    max_a: u64,
    cauchy_l: &[usize],
    cauchy_samples: usize,
    sampler_window: f64,
    seed: u64,
) -> Result<(PeelTailOutcome, ExperimentReport)> {
    let l = ((sigma * (host_faces as f64).sqrt()).floor() as usize).max(1);
    let cfg = calibrate(host_faces, l, sampler_window, seed, 0)?;
    let rows = replicate(hosts, |i| grid_stream(seed, 0, i), |_, rng| {
        let s = sample_simple_boundary_quad(host_faces, l, cfg, rng)?;
        let host = host_from_quad(s.quad, min_spine, rng)?;
        let (series, states) = peel_to_tip(&host, 0)?;
        let dist = host.adjacency().bfs(&host.segment_vertices(0))?;
        let mut ok = true;
        for (layer, st) in states.iter().enumerate() {
            ok &= dist.iter().zip(&st.filled).all(|(&d, &inside)| d == NONE || d as usize > layer || inside);
        }
        Ok((series, ok))
    })?;
    let balls_contained = rows.iter().all(|r| r.1);
    let series: Vec<IncrementSeries> = rows.into_iter().map(|r| r.0).collect();
    let ccdf = increment_tail_ccdf(&series, max_a)?;
    let total: usize = series.iter().map(|s| s.increments.len()).sum();
    // an increment never exceeds the spine left to peel, so the fit stops at
    // half the median spine length and needs 10 increments above a
    let spines: Vec<f64> = series.iter().map(|s| s.increments.iter().sum::<u64>() as f64).collect();
    let fit_cap = median(&spines) / 2.0;
    let fitted = |cap: f64| -> Vec<&(u64, f64, f64)> {
        ccdf.iter().filter(|r| r.1 * total as f64 >= 10.0 && r.0 as f64 <= cap).collect()
    };
    let slope_of = |rows: &[&(u64, f64, f64)]| {
        if rows.len() < 2 {
            return f64::NAN;
        }
        let (x, y): (Vec<f64>, Vec<f64>) = rows.iter().map(|r| ((r.0 as f64).ln(), r.1.ln())).unzip();
        linear_fit(&x, &y).0
    };
    let slope = slope_of(&fitted(fit_cap));
    let slope_uncapped = slope_of(&fitted(f64::INFINITY));
    let half = &series[..series.len() / 2];
    let sup_half = sup_a_ccdf(half, max_a).unwrap_or(f64::NAN);
    let sup_full = sup_a_ccdf(&series, max_a)?;

    // tail constant: average of a ccdf(a) over the fitted range
    let used: Vec<f64> = fitted(fit_cap).iter().map(|r| r.2).collect();
    let tail_constant = if used.is_empty() { 1.0 } else { used.iter().sum::<f64>() / used.len() as f64 };
    let mut cauchy = Vec::new();
    let mut largest = Vec::new();
    for (j, &lc) in cauchy_l.iter().enumerate() {
        let mut rng = substream(seed, (1 << 50) + j as u64);
        let xs = centered_pareto_sums(lc, cauchy_samples, tail_constant, 1.0, &mut rng);
        let (lo, hi) = bootstrap_ci(&xs, median, 200, 0.95, &mut rng);
        cauchy.push((lc, median(&xs), lo, hi, excess_kurtosis(&xs)));
        largest = xs;
    }
    let iqr = |v: &[f64]| quantile(v, 0.75) - quantile(v, 0.25);
    let contrast_iqr = match cauchy_l.last() {
        Some(&lc) => {
            let mut rng = substream(seed, (1 << 51) + 1);
            let light = centered_pareto_sums(lc, cauchy_samples, tail_constant, 2.0, &mut rng);
            (iqr(&largest), iqr(&light))
        }
        None => (f64::NAN, f64::NAN),
    };

    let mut rep = ExperimentReport::new("peel-tail", seed);
    rep.echo("host_faces", host_faces);
    rep.echo("sigma", sigma);
    rep.echo("min_spine", min_spine);
    rep.echo("hosts", hosts);
    rep.echo("max_a", max_a);
    rep.echo("cauchy_l", cauchy_l);
    rep.echo("cauchy_samples", cauchy_samples);
    rep.echo("sampler_window", sampler_window);
    rep.echo("slope_fit_cap", fit_cap);
    rep.check("ball containment on every instance", balls_contained, format!("{hosts} hosts"));
    rep.check("increment CCDF slope in [-1.6, -0.8]", (-1.6..=-0.8).contains(&slope), format!("{slope:.3} over a <= {fit_cap:.1}; {slope_uncapped:.3} uncapped"));
    let ratio = sup_full / sup_half;
    rep.check(
        "sup a*ccdf(a) stable within factor 2 under doubling",
        (0.5..=2.0).contains(&ratio),
        format!("half {sup_half:.4}, full {sup_full:.4}"),
    );
    let overlap = cauchy.windows(2).all(|w| w[0].2 <= w[1].3 && w[1].2 <= w[0].3);
    rep.check("centred-sum median stable across l", overlap, format!("{:?}", cauchy));
    rep.check(
        "centred sums heavier than Gaussian",
        cauchy.iter().all(|c| c.4 > 0.0),
        format!("{:?}", cauchy.iter().map(|c| c.4).collect::<Vec<_>>()),
    );
    rep.check(
        "exponent-2 sums concentrate more",
        contrast_iqr.1 < contrast_iqr.0,
        format!("iqr {:.4} vs {:.4}", contrast_iqr.0, contrast_iqr.1),
    );
    let mut t = Table::new("increment_ccdf", &["a", "ccdf", "a_times_ccdf"]);
    t.rows = ccdf.iter().map(|r| vec![r.0 as f64, r.1, r.2]).collect();
    rep.tables.push(t);
    let mut inc = Table::new("increments", &["host", "layer", "increment"]);
    for (h, s) in series.iter().enumerate() {
        for (layer, &x) in s.increments.iter().enumerate() {
            inc.rows.push(vec![h as f64, (layer + 1) as f64, x as f64]);
        }
    }
    rep.tables.push(inc);
    let mut ct = Table::new("centred_sums", &["l", "median", "ci_low", "ci_high", "excess_kurtosis"]);
    ct.rows = cauchy.iter().map(|c| vec![c.0 as f64, c.1, c.2, c.3, c.4]).collect();
    rep.tables.push(ct);
    let out = PeelTailOutcome {
        series,
        ccdf,
        slope,
        slope_uncapped,
        fit_cap,
        sup_half,
        sup_full,
        balls_contained,
        tail_constant,
        cauchy,
        contrast_iqr,
    };
    Ok((out, rep))
}
