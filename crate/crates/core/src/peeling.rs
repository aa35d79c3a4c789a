//! Layered exploration of a glued map around a segment of the tree spine,
//! and Monte-Carlo oracles for the overshoot/hitting-time comparison behind
//! the increment bound.
//!
//! Each layer reveals every unexplored face with a vertex in the explored
//! set, extends the explored spine segment to the furthest spine index whose
//! hanging tree was touched, and fills in every unexplored component that is
//! cut off from the spine tip. After l layers the explored set contains the
//! l-neighbourhood of the initial set.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gluing::{glue, TreeDecoratedQuad};
use crate::map::{faces, Adjacency, NONE};
use crate::quad::core::RejectionConfig;
use crate::quad::{sample_simple_boundary_quad, SimpleBoundaryQuad};
use crate::tree::{sample_uniform_tree, PlaneTree};

/// A glued map with a distinguished path of the tree starting at the root.
/// Tree vertex ids coincide with glued vertex ids.
#[derive(Debug, Clone)]
pub struct SpineHost {
    pub decorated: TreeDecoratedQuad,
    pub tree: PlaneTree,
    /// spine[n] is the spine vertex at index n, spine[0] the root
    pub spine: Vec<u32>,
    /// spine index each tree vertex hangs from, NONE off the tree
    pub hang: Vec<u32>,
    pub realized: (usize, usize),
    adj: Adjacency,
    face_vertices: Vec<[u32; 4]>,
    vertex_faces_off: Vec<u32>,
    vertex_faces: Vec<u32>,
}

impl SpineHost {
    pub fn new(decorated: TreeDecoratedQuad, tree: PlaneTree, spine: Vec<u32>, realized: (usize, usize)) -> Self {
        let map = &decorated.map;
        let nv = map.vertex_count();
        let mut hang = vec![NONE; nv];
        let mut on_spine = vec![NONE; tree.vertex_count()];
        for (i, &v) in spine.iter().enumerate() {
            on_spine[v as usize] = i as u32;
        }
        // preorder ids: parents come first
        for v in 0..tree.vertex_count() as u32 {
            hang[v as usize] = if on_spine[v as usize] != NONE {
                on_spine[v as usize]
            } else {
                hang[tree.parent(v).unwrap() as usize]
            };
        }
        let fd = faces(map);
        let face_vertices: Vec<[u32; 4]> = fd
            .faces
            .iter()
            .map(|c| {
                let mut a = [NONE; 4];
                for (i, &e) in c.iter().take(4).enumerate() {
                    a[i] = map.origin(e);
                }
                a
            })
            .collect();
        let mut vertex_faces_off = vec![0u32; nv + 1];
        for fv in &face_vertices {
            for &v in fv.iter().filter(|&&v| v != NONE) {
                vertex_faces_off[v as usize + 1] += 1;
            }
        }
        for i in 0..nv {
            vertex_faces_off[i + 1] += vertex_faces_off[i];
        }
        let mut fill = vertex_faces_off.clone();
        let mut vertex_faces = vec![0u32; vertex_faces_off[nv] as usize];
        for (f, fv) in face_vertices.iter().enumerate() {
            for &v in fv.iter().filter(|&&v| v != NONE) {
                vertex_faces[fill[v as usize] as usize] = f as u32;
                fill[v as usize] += 1;
            }
        }
        let adj = Adjacency::new(map);
        SpineHost { decorated, tree, spine, hang, realized, adj, face_vertices, vertex_faces_off, vertex_faces }
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    fn faces_at(&self, v: u32) -> &[u32] {
        &self.vertex_faces[self.vertex_faces_off[v as usize] as usize..self.vertex_faces_off[v as usize + 1] as usize]
    }

    pub fn tip(&self) -> u32 {
        *self.spine.last().unwrap()
    }

    /// Vertices of the tree restricted to the spine segment [0, r] and the
    /// trees hanging from it.
    pub fn segment_vertices(&self, r: usize) -> Vec<u32> {
        (0..self.tree.vertex_count() as u32).filter(|&v| (self.hang[v as usize] as usize) <= r).collect()
    }
}

/// Glues a windowed simple-boundary quadrangulation with about f faces and
/// half-perimeter `floor(sigma sqrt f)` to a uniform tree of the realized
/// size, with the spine running from the root to a uniform tree vertex of
/// depth at least `min_spine`.
pub fn sample_spine_host<R: Rng + ?Sized>(
    f: usize,
    sigma: f64,
    min_spine: usize,
    cfg: RejectionConfig,
    rng: &mut R,
) -> Result<SpineHost> {
    let l = ((sigma * (f as f64).sqrt()).floor() as usize).max(1);
    let s = sample_simple_boundary_quad(f, l, cfg, rng)?;
    host_from_quad(s.quad, min_spine, rng)
}

pub fn host_from_quad<R: Rng + ?Sized>(q: SimpleBoundaryQuad, min_spine: usize, rng: &mut R) -> Result<SpineHost> {
    let k = q.half_perimeter;
    let realized = (q.faces, k);
    for _ in 0..1000 {
        let t = sample_uniform_tree(k, rng);
        let depth = t.depths();
        let deep: Vec<u32> = (0..t.vertex_count() as u32).filter(|&v| depth[v as usize] as usize >= min_spine).collect();
        if deep.is_empty() {
            continue;
        }
        let mut v = deep[rng.gen_range(0..deep.len())];
        let mut spine = vec![v];
        while let Some(p) = t.parent(v) {
            spine.push(p);
            v = p;
        }
        spine.reverse();
        let (d, _) = glue(&q, &t)?;
        return Ok(SpineHost::new(d, t, spine, realized));
    }
    Err(Error::SpineTooShort { len: 0, need: min_spine })
}

/// Snapshot of the exploration after `layer` layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingState {
    pub layer: usize,
    /// explored vertices bordering unexplored faces
    pub frontier: Vec<u32>,
    pub spine_reach: usize,
    pub filled: Vec<bool>,
    pub explored_faces: Vec<bool>,
    /// the spine tip has been reached
    pub done: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IncrementSeries {
    pub increments: Vec<u64>,
    pub layers: usize,
}

fn close_faces(host: &SpineHost, filled: &[bool], explored: &mut [bool]) {
    for (f, fv) in host.face_vertices.iter().enumerate() {
        if !explored[f] && fv.iter().all(|&v| v == NONE || filled[v as usize]) {
            explored[f] = true;
        }
    }
}

fn frontier_of(host: &SpineHost, filled: &[bool], explored: &[bool]) -> Vec<u32> {
    (0..filled.len() as u32)
        .filter(|&v| filled[v as usize] && host.faces_at(v).iter().any(|&f| !explored[f as usize]))
        .collect()
}

pub fn init_peeling(host: &SpineHost, r: usize) -> Result<PeelingState> {
    let len = host.spine.len() - 1;
    if len <= r {
        return Err(Error::SpineTooShort { len, need: r });
    }
    let nv = host.decorated.map.vertex_count();
    let mut filled = vec![false; nv];
    for v in host.segment_vertices(r) {
        filled[v as usize] = true;
    }
    let mut explored = vec![false; host.face_vertices.len()];
    close_faces(host, &filled, &mut explored);
    let frontier = frontier_of(host, &filled, &explored);
    Ok(PeelingState { layer: 0, frontier, spine_reach: r, filled, explored_faces: explored, done: false })
}

pub fn peel_step(host: &SpineHost, state: &PeelingState) -> Result<PeelingState> {
    if state.done || state.explored_faces.iter().all(|&x| x) {
        return Err(Error::Exhausted);
    }
    let mut filled = state.filled.clone();
    let mut explored = state.explored_faces.clone();
    let mut reach = state.spine_reach;
    for &v in &state.frontier {
        for &f in host.faces_at(v) {
            if explored[f as usize] {
                continue;
            }
            explored[f as usize] = true;
            for &w in host.face_vertices[f as usize].iter().filter(|&&w| w != NONE) {
                filled[w as usize] = true;
                let h = host.hang[w as usize];
                if h != NONE {
                    reach = reach.max(h as usize);
                }
            }
        }
    }
    for v in host.segment_vertices(reach) {
        filled[v as usize] = true;
    }
    let tip = host.tip();
    let done = filled[tip as usize];
    if !done {
        // fill in everything cut off from the tip
        let open: Vec<bool> = filled.iter().map(|&x| !x).collect();
        let d = host.adj.bfs_within(&[tip], &open);
        for v in 0..filled.len() {
            if d[v] == NONE {
                filled[v] = true;
            }
        }
    }
    close_faces(host, &filled, &mut explored);
    let frontier = frontier_of(host, &filled, &explored);
    Ok(PeelingState { layer: state.layer + 1, frontier, spine_reach: reach, filled, explored_faces: explored, done })
}

/// Peels from spine segment [0, r] until the tip is reached, recording the
/// spine-reach increments.
pub fn peel_to_tip(host: &SpineHost, r: usize) -> Result<(IncrementSeries, Vec<PeelingState>)> {
    let mut st = init_peeling(host, r)?;
    let mut states = vec![st.clone()];
    let mut series = IncrementSeries::default();
    while !st.done {
        let nx = match peel_step(host, &st) {
            Ok(s) => s,
            Err(Error::Exhausted) => break,
            Err(e) => return Err(e),
        };
        series.increments.push((nx.spine_reach - st.spine_reach) as u64);
        series.layers += 1;
        st = nx;
        states.push(st.clone());
    }
    Ok((series, states))
}

/// Rows (a, P(X >= a), a P(X >= a)) for a = 1..=max.
pub fn increment_tail_ccdf(series: &[IncrementSeries], max_a: u64) -> Result<Vec<(u64, f64, f64)>> {
    let all: Vec<u64> = series.iter().flat_map(|s| s.increments.iter().copied()).collect();
    if all.len() < 1000 {
        return Err(Error::TooFewSamples { got: all.len(), need: 1000 });
    }
    let n = all.len() as f64;
    let top = all.iter().copied().max().unwrap_or(0).min(max_a) as usize;
    let mut counts = vec![0u64; top + 2];
    for &x in &all {
        counts[(x as usize).min(top + 1)] += 1;
    }
    // suffix sums give the CCDF
    let mut ge = vec![0u64; top + 3];
    for a in (0..=top + 1).rev() {
        ge[a] = ge[a + 1] + counts[a];
    }
    Ok((1..=max_a)
        .map(|a| {
            let c = if (a as usize) <= top + 1 { ge[a as usize] } else { 0 } as f64 / n;
            (a, c, a as f64 * c)
        })
        .collect())
}

/// Sample of O with P(O >= k) = k^{-beta}, k >= 1.
fn discrete_pareto<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> u64 {
    let u: f64 = 1.0 - rng.gen::<f64>();
    let x = u.powf(-1.0 / beta).floor();
    if x >= 1e18 {
        u64::MAX / 2
    } else {
        x as u64
    }
}

/// Depth reached below 0 by a simple random walk run for `steps` steps,
/// stopping early once `cap` is reached.
fn walk_depth<R: Rng + ?Sized>(steps: u64, cap: u64, rng: &mut R) -> u64 {
    let mut x: i64 = 0;
    let mut low: i64 = 0;
    let mut left = steps;
    while left > 0 && (-low as u64) < cap {
        // 64 steps per random word
        let word: u64 = rng.gen();
        let take = left.min(64);
        for b in 0..take {
            x += if (word >> b) & 1 == 1 { 1 } else { -1 };
            if x < low {
                low = x;
            }
        }
        left -= take;
    }
    (-low) as u64
}

/// Histogram of min(depth, max_a) over `samples` draws, where depth is how
/// far below 0 the walk gets within O steps.
pub fn overshoot_depth_counts<R: Rng + ?Sized>(max_a: u64, samples: u64, tail_exponent: f64, rng: &mut R) -> Vec<u64> {
    let mut hits = vec![0u64; max_a as usize + 1];
    for _ in 0..samples {
        let o = discrete_pareto(tail_exponent, rng);
        let depth = walk_depth(o, max_a, rng).min(max_a);
        hits[depth as usize] += 1;
    }
    hits
}

/// Turns depth counts into P(depth >= a) for a = 1..=max_a.
pub fn depth_counts_to_curve(hits: &[u64]) -> Vec<f64> {
    let samples: u64 = hits.iter().sum();
    let max_a = hits.len() - 1;
    let mut out = vec![0.0; max_a];
    let mut acc = 0u64;
    for a in (1..=max_a).rev() {
        acc += hits[a];
        out[a - 1] = acc as f64 / samples.max(1) as f64;
    }
    out
}

/// Estimates P(O >= tau_1 + ... + tau_a) for a = 1..=max_a at once. The sum of
/// hitting times is at most j exactly when the walk reaches -a within j steps.
pub fn overshoot_vs_tau_curve<R: Rng + ?Sized>(max_a: u64, samples: u64, tail_exponent: f64, rng: &mut R) -> Vec<f64> {
    depth_counts_to_curve(&overshoot_depth_counts(max_a, samples, tail_exponent, rng))
}

pub fn overshoot_vs_tau_oracle<R: Rng + ?Sized>(a: u64, samples: u64, tail_exponent: f64, rng: &mut R) -> f64 {
    overshoot_vs_tau_curve(a, samples, tail_exponent, rng)[a as usize - 1]
}

/// Exact value at a = 1 and exponent beta: sum over n of
/// P(tau = 2n+1) (2n+1)^{-beta} with P(tau = 2n+1) = C_n / 2^{2n+1}.
pub fn overshoot_vs_tau_at_one(beta: f64, terms: usize) -> f64 {
    let mut p = 0.5; // C_0 / 2
    let mut s = 0.0;
    for n in 0..terms {
        s += p * ((2 * n + 1) as f64).powf(-beta);
        // C_{n+1}/C_n = 2(2n+1)/(n+2), and one more factor 1/4
        p *= 2.0 * (2 * n + 1) as f64 / (n + 2) as f64 / 4.0;
    }
    s
}

/// Samples of l^{-1} (s_1 + ... + s_l) minus its centering, where the s_j are
/// Pareto with P(s >= x) = (c/x)^exponent for x >= c. Exponent 1 is centered
/// by c log l, larger exponents by the mean.
pub fn centered_pareto_sums<R: Rng + ?Sized>(l: usize, samples: usize, c: f64, exponent: f64, rng: &mut R) -> Vec<f64> {
    let center = if (exponent - 1.0).abs() < 1e-12 {
        c * (l as f64).ln()
    } else {
        c * exponent / (exponent - 1.0)
    };
    (0..samples)
        .map(|_| {
            let mut s = 0.0;
            for _ in 0..l {
                let u: f64 = 1.0 - rng.gen::<f64>();
                s += c * u.powf(-1.0 / exponent);
            }
            s / l as f64 - center
        })
        .collect()
}

pub fn cauchy_sum_probe<R: Rng + ?Sized>(l: usize, samples: usize, c: f64, rng: &mut R) -> Vec<f64> {
    centered_pareto_sums(l, samples, c, 1.0, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn host(seed: u64) -> SpineHost {
        let mut rng = seeded(seed);
        let cfg = RejectionConfig { window: 0.2, ..Default::default() };
        sample_spine_host(2000, 2.0, 6, cfg, &mut rng).unwrap()
    }

    #[test]
    fn init_contains_segment() {
        let h = host(1);
        let st = init_peeling(&h, 0).unwrap();
        assert_eq!(st.layer, 0);
        for v in h.segment_vertices(0) {
            assert!(st.filled[v as usize]);
        }
        assert_eq!(st.filled.iter().filter(|&&x| x).count(), h.segment_vertices(0).len());
        assert!(matches!(init_peeling(&h, h.spine.len() - 1), Err(Error::SpineTooShort { .. })));
    }

    #[test]
    fn balls_are_contained_in_layers() {
        for s in 0..6 {
            let h = host(10 + s);
            let init: Vec<u32> = h.segment_vertices(1);
            let dist = h.adjacency().bfs(&init).unwrap();
            let (series, states) = peel_to_tip(&h, 1).unwrap();
            assert_eq!(series.layers, states.len() - 1);
            for (l, st) in states.iter().enumerate() {
                for v in 0..dist.len() {
                    if dist[v] as usize <= l {
                        assert!(st.filled[v], "layer {l} misses vertex at distance {}", dist[v]);
                    }
                }
                if l > 0 {
                    let prev = &states[l - 1];
                    assert!(prev.filled.iter().zip(&st.filled).all(|(&a, &b)| !a || b));
                    assert!(st.spine_reach >= prev.spine_reach);
                }
            }
        }
    }

    #[test]
    fn series_oracle_at_one() {
        let exact = overshoot_vs_tau_at_one(1.5, 200_000);
        let mut rng = seeded(3);
        let est = overshoot_vs_tau_oracle(1, 400_000, 1.5, &mut rng);
        let se = (exact * (1.0 - exact) / 400_000.0).sqrt();
        assert!((est - exact).abs() < 4.0 * se, "est {est} exact {exact}");
        let curve = overshoot_vs_tau_curve(50, 100_000, 1.5, &mut rng);
        assert!(curve.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn pareto_sums_contrast() {
        let mut rng = seeded(4);
        let heavy = centered_pareto_sums(1000, 2000, 1.0, 1.0, &mut rng);
        let light = centered_pareto_sums(1000, 2000, 1.0, 2.0, &mut rng);
        assert!(crate::stats::excess_kurtosis(&heavy) > 3.0);
        let iqr = |v: &[f64]| crate::stats::quantile(v, 0.75) - crate::stats::quantile(v, 0.25);
        assert!(iqr(&light) < iqr(&heavy));
    }
}
