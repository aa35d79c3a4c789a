use serde::{Deserialize, Serialize};

use super::{calibrate, fraction, grid_stream, replicate, ExperimentReport, ScalingPoint, ScalingSeries, Table};
use crate::error::Result;
use crate::gluing::glue;
use crate::map::Adjacency;
use crate::quad::sample_simple_boundary_quad;
use crate::stats::median;
use crate::tree::{sample_uniform_tree, PlaneTree};

/// Intrinsic diameter of a plane tree (double sweep).
pub fn tree_diameter(t: &PlaneTree) -> u32 {
    let n = t.vertex_count();
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (t.parent(v).unwrap(), v)).collect();
    let adj = Adjacency::from_edges(n, &edges);
    let d0 = adj.bfs(&[0]).unwrap();
    let far = (0..n).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap() as u32;
    let d1 = adj.bfs(&[far]).unwrap();
    d1.into_iter().max().unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterOutcome {
    pub f_grid: Vec<usize>,
    /// per f: (realized faces, realized tree size, map diameter, tree diameter)
    pub samples: Vec<Vec<(usize, usize, u32, u32)>>,
    pub medians: Vec<f64>,
    pub lower_bound_rate: Vec<f64>,
    pub glued_shorter: bool,
}

/// For each f: windowed simple quadrangulation with half-perimeter
/// floor(sigma sqrt f), uniform tree of the realized half-perimeter, glue,
/// and measure the diameter of the tree vertices in the map metric.
pub fn diameter_experiment(
    f_grid: &[usize],
    sigma: f64,
    alpha: f64,
    replicates: usize,
    sampler_window: f64,
    seed: u64,
) -> Result<(DiameterOutcome, ExperimentReport)> {
    let mut rep = ExperimentReport::new("diameter", seed);
    rep.echo("f", f_grid);
    rep.echo("sigma", sigma);
    rep.echo("alpha", alpha);
    rep.echo("replicates", replicates);
    rep.echo("sampler_window", sampler_window);
    let mut plain = ScalingSeries::new("median_diam_over_f_quarter", "diam / f^(1/4)");
    let mut logged = ScalingSeries::new("median_diam_log_scaled", "diam * log(f)^alpha / f^(1/4)");
    let mut table = Table::new("diameters", &["f", "replicate", "realized_faces", "tree_size", "diam_map", "diam_tree"]);
    let mut out = DiameterOutcome {
        f_grid: f_grid.to_vec(),
        samples: Vec::new(),
        medians: Vec::new(),
        lower_bound_rate: Vec::new(),
        glued_shorter: true,
    };
    for (cell, &f) in f_grid.iter().enumerate() {
        let l = ((sigma * (f as f64).sqrt()).floor() as usize).max(1);
        let cfg = calibrate(f, l, sampler_window, seed, cell)?;
        let rows = replicate(replicates, |i| grid_stream(seed, cell, i), |_, rng| {
            let s = sample_simple_boundary_quad(f, l, cfg, rng)?;
            let k = s.quad.half_perimeter;
            let t = sample_uniform_tree(k, rng);
            let (d, _) = glue(&s.quad, &t)?;
            let adj = Adjacency::new(&d.map);
            let tree_vertices: Vec<u32> = (0..=k as u32).collect();
            Ok((s.realized.0, k, adj.diameter_of_subset(&tree_vertices), tree_diameter(&t)))
        })?;
        let fq = (f as f64).powf(0.25);
        let ratios: Vec<f64> = rows.iter().map(|r| r.2 as f64 / (r.0 as f64).powf(0.25)).collect();
        let med = median(&ratios);
        let lb = fraction(&rows, |r| r.2 as f64 >= fq / (f as f64).ln().powi(2));
        let sig = median(&rows.iter().map(|r| r.1 as f64 / (r.0 as f64).sqrt()).collect::<Vec<_>>());
        plain.push(ScalingPoint { f: f as f64, sigma_realized: sig, value: med, replicates });
        logged.push(ScalingPoint {
            f: f as f64,
            sigma_realized: sig,
            value: med * (f as f64).ln().powf(alpha),
            replicates,
        });
        out.glued_shorter &= rows.iter().all(|r| r.2 <= r.3);
        for (i, r) in rows.iter().enumerate() {
            table.rows.push(vec![f as f64, i as f64, r.0 as f64, r.1 as f64, r.2 as f64, r.3 as f64]);
        }
        out.medians.push(med);
        out.lower_bound_rate.push(lb);
        out.samples.push(rows);
    }
    let decreasing = plain.strictly_decreasing();
    rep.check("median diam/f^(1/4) strictly decreasing", decreasing, format!("{:?}", out.medians));
    rep.check(
        "diam >= f^(1/4)/log(f)^2 in at least 95% of replicates",
        out.lower_bound_rate.iter().all(|&r| r >= 0.95),
        format!("{:?}", out.lower_bound_rate),
    );
    rep.check("glued tree diameter at most intrinsic diameter", out.glued_shorter, "every replicate");
    rep.series.push(plain);
    rep.series.push(logged);
    rep.tables.push(table);
    Ok((out, rep))
}
