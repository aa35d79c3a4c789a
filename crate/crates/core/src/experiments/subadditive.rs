use serde::{Deserialize, Serialize};

use super::{calibrate, grid_stream, replicate, ExperimentReport, ScalingPoint, ScalingSeries, Table};
use crate::error::Result;
use crate::peeling::host_from_quad;
use crate::quad::sample_simple_boundary_quad;
use crate::stats::median;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubadditiveOutcome {
    pub n_grid: Vec<usize>,
    /// per replicate, d(kappa_0, kappa_n) for each n in the grid
    pub distances: Vec<Vec<u32>>,
    pub medians: Vec<f64>,
    /// d(kappa_0, kappa_n) <= n everywhere
    pub bounded_by_n: bool,
    /// triangle inequality along the spine at grid points
    pub subadditive: bool,
}

/// On hosts with a spine of depth at least max(n_grid), the map distance
/// from the root to the spine vertex at index n, divided by n.
pub fn subadditive_experiment(
    n_grid: &[usize],
    host_faces: usize,
    sigma: f64,
    replicates: usize,
    sampler_window: f64,
    seed: u64,
) -> Result<(SubadditiveOutcome, ExperimentReport)> {
    let need = n_grid.iter().copied().max().unwrap_or(0);
    let l = ((sigma * (host_faces as f64).sqrt()).floor() as usize).max(1);
    let cfg = calibrate(host_faces, l, sampler_window, seed, 0)?;
    let rows = replicate(replicates, |i| grid_stream(seed, 0, i), |_, rng| {
        let s = sample_simple_boundary_quad(host_faces, l, cfg, rng)?;
        let host = host_from_quad(s.quad, need, rng)?;
        let adj = host.adjacency();
        // sources: spine index 0 and every grid point
        let mut idx: Vec<usize> = std::iter::once(0).chain(n_grid.iter().copied()).collect();
        idx.sort_unstable();
        idx.dedup();
        let dist: Vec<Vec<u32>> = idx.iter().map(|&n| adj.bfs(&[host.spine[n]]).unwrap()).collect();
        let d = |a: usize, b: usize| dist[a][host.spine[idx[b]] as usize];
        let mut tri = true;
        for a in 0..idx.len() {
            for b in a..idx.len() {
                // d(0, b) <= d(0, a) + d(a, b)
                tri &= d(0, b) <= d(0, a) + d(a, b);
            }
        }
        let from_root: Vec<u32> = n_grid.iter().map(|&n| dist[0][host.spine[n] as usize]).collect();
        Ok((from_root, tri, s.realized))
    })?;
    let mut out = SubadditiveOutcome {
        n_grid: n_grid.to_vec(),
        distances: rows.iter().map(|r| r.0.clone()).collect(),
        medians: Vec::new(),
        bounded_by_n: true,
        subadditive: rows.iter().all(|r| r.1),
    };
    let mut series = ScalingSeries::new("median_spine_distance_ratio", "d(kappa_0, kappa_n) / n");
    let mut table = Table::new("spine_distances", &["replicate", "n", "distance"]);
    for (j, &n) in n_grid.iter().enumerate() {
        let ratios: Vec<f64> = rows
            .iter()
            .map(|r| if n == 0 { 0.0 } else { r.0[j] as f64 / n as f64 })
            .collect();
        out.bounded_by_n &= rows.iter().all(|r| r.0[j] as usize <= n);
        let m = median(&ratios);
        out.medians.push(m);
        series.push(ScalingPoint { f: n as f64, sigma_realized: sigma, value: m, replicates });
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, &n) in n_grid.iter().enumerate() {
            table.rows.push(vec![i as f64, n as f64, r.0[j] as f64]);
        }
    }
    let mut rep = ExperimentReport::new("subadditive", seed);
    rep.echo("n", n_grid);
    rep.echo("host_faces", host_faces);
    rep.echo("sigma", sigma);
    rep.echo("replicates", replicates);
    rep.echo("sampler_window", sampler_window);
    let nz: Vec<f64> = n_grid.iter().zip(&out.medians).filter(|(n, _)| **n > 0).map(|(_, m)| *m).collect();
    rep.check(
        "median d/n decreasing in n",
        nz.windows(2).all(|w| w[1] < w[0]),
        format!("{:?}", out.medians),
    );
    rep.check("d(kappa_0, kappa_n) <= n", out.bounded_by_n, "every replicate");
    rep.check("triangle inequality along the spine", out.subadditive, "every replicate");
    rep.series.push(series);
    rep.tables.push(table);
    Ok((out, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hosts() {
        let (out, _) = subadditive_experiment(&[0, 2, 4, 8], 1500, 3.0, 6, 0.3, 3).unwrap();
        assert!(out.bounded_by_n && out.subadditive);
        assert!(out.distances.iter().all(|d| d[0] == 0));
    }
}
