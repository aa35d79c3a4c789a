use serde::{Deserialize, Serialize};

use super::{calibrate, fit_tail_exponent_with, grid_stream, replicate, ExperimentReport, FitConfig, TailFit, TailMethod};
use crate::error::Result;
use crate::quad::{sample_simple_boundary_quad, SimpleBoundaryQuad};

/// Simple and face overshoots at boundary position `at`, looking `window`
/// positions to each side. Positions at+1, at+2, ... form the positive side
/// and at, at-1, ... the negative side. Values are capped at `window`.
pub fn boundary_overshoots(q: &SimpleBoundaryQuad, at: i64, window: usize) -> (u64, u64) {
    let map = &q.map;
    let w = window.min(q.half_perimeter.saturating_sub(1)).max(1) as i64;
    let mut label = vec![i64::MIN; map.vertex_count()];
    for z in -w..=w {
        label[q.boundary_vertex(at + z) as usize] = z;
    }
    let n = q.boundary.len() as i64;
    let mut outer = vec![false; map.half_edge_count()];
    for &a in &q.boundary {
        outer[map.twin(a) as usize] = true;
    }
    let out_edge = |z: i64| q.boundary[(at + z).rem_euclid(n) as usize];
    let mut simple = 0i64;
    for e in map.rotation_from(out_edge(0)) {
        simple = simple.max(label[map.target(e) as usize]);
    }
    let mut face = 0i64;
    for z in -w..=0 {
        for e in map.rotation_from(out_edge(z)) {
            let cyc = map.face_cycle(e);
            if cyc.iter().any(|&h| outer[h as usize]) {
                continue;
            }
            for &h in &cyc {
                face = face.max(label[map.origin(h) as usize]);
            }
        }
    }
    (simple.max(0) as u64, face.max(0) as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OvershootOutcome {
    pub simple: Vec<u64>,
    pub face: Vec<u64>,
    pub simple_fit: TailFit,
    pub face_fit: TailFit,
    pub window: usize,
    pub positions: usize,
    /// realized (faces, half-perimeter) per replicate
    pub realized: Vec<(usize, usize)>,
    pub dominated: bool,
}

/// Samples `replicates` simple-boundary quadrangulations near (f, l) and
/// measures both overshoots at `positions` equally spaced boundary vertices
/// (rerooting preserves the law). The window is l/(2 positions) so windows
/// do not overlap; fits stop at half the window.
pub fn overshoot_experiment(
    f: usize,
    l: usize,
    replicates: usize,
    positions: usize,
    sampler_window: f64,
    seed: u64,
) -> Result<(OvershootOutcome, ExperimentReport)> {
    let positions = positions.max(1);
    let window = (l / (2 * positions)).max(2);
    let cfg = calibrate(f, l, sampler_window, seed, 0)?;
    let per = replicate(replicates, |i| grid_stream(seed, 0, i), |_, rng| {
        let s = sample_simple_boundary_quad(f, l, cfg, rng)?;
        let q = &s.quad;
        let lr = q.half_perimeter as i64;
        let w = window.min(q.half_perimeter / (2 * positions)).max(1);
        let vals: Vec<(u64, u64)> =
            (0..positions as i64).map(|p| boundary_overshoots(q, p * 2 * lr / positions as i64, w)).collect();
        Ok((s.realized, vals))
    })?;
    let mut simple = Vec::new();
    let mut face = Vec::new();
    let mut realized = Vec::new();
    for (r, vals) in per {
        realized.push(r);
        for (s, o) in vals {
            simple.push(s);
            face.push(o);
        }
    }
    let dominated = simple.iter().zip(&face).all(|(s, o)| o >= s);
    let fcfg = FitConfig { method: TailMethod::CcdfRegression, upper: Some(window as f64 / 2.0), ..Default::default() };
    let as_f = |v: &[u64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    let simple_fit = fit_tail_exponent_with(&as_f(&simple), &fcfg)?;
    let face_fit = fit_tail_exponent_with(&as_f(&face), &fcfg)?;

    let mut rep = ExperimentReport::new("overshoot", seed);
    rep.echo("faces", f);
    rep.echo("half_perimeter", l);
    rep.echo("replicates", replicates);
    rep.echo("positions", positions);
    rep.echo("window", window);
    rep.echo("sampler_window", sampler_window);
    rep.echo("calibrated_start", cfg.start);
    rep.fit("simple_overshoot", simple_fit.clone());
    rep.fit("face_overshoot", face_fit.clone());
    let mut t = super::Table::new("overshoots", &["replicate", "position", "realized_faces", "realized_half_perimeter", "simple", "face"]);
    for (i, r) in realized.iter().enumerate() {
        for p in 0..positions {
            let j = i * positions + p;
            t.rows.push(vec![i as f64, p as f64, r.0 as f64, r.1 as f64, simple[j] as f64, face[j] as f64]);
        }
    }
    rep.tables.push(t);
    rep.check("face overshoot dominates simple overshoot", dominated, "pointwise over all measurements");
    rep.check(
        "simple overshoot exponent in [-1.8, -1.2]",
        (-1.8..=-1.2).contains(&simple_fit.exponent),
        format!("{:.3} [{:.3}, {:.3}]", simple_fit.exponent, simple_fit.ci_low, simple_fit.ci_high),
    );
    rep.check(
        "face overshoot exponent in [-0.75, -0.3]",
        (-0.75..=-0.3).contains(&face_fit.exponent),
        format!("{:.3} [{:.3}, {:.3}]", face_fit.exponent, face_fit.ci_low, face_fit.ci_high),
    );
    let out = OvershootOutcome { simple, face, simple_fit, face_fit, window, positions, realized, dominated };
    Ok((out, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::cycle_map;

    #[test]
    fn single_square() {
        let q = SimpleBoundaryQuad::from_map(cycle_map(4)).unwrap();
        let (s, o) = boundary_overshoots(&q, 0, 1);
        assert_eq!((s, o), (1, 1));
    }

    #[test]
    fn face_dominates_simple() {
        let (out, rep) = overshoot_experiment(600, 40, 100, 2, 0.3, 9).unwrap();
        assert!(out.dominated);
        assert!(out.simple.iter().all(|&s| s >= 1));
        assert_eq!(out.simple.len(), 200);
        assert!(rep.checks[0].pass);
    }
}
