//! Simple cores of general-boundary quadrangulations and the windowed
//! rejection sampler for simple boundaries.

use rand::Rng;

use crate::error::{Error, Result};
use crate::map::{faces, restrict, HalfEdgeMap, Restricted, NONE};
use crate::quad::{sample_general_boundary_quad, GeneralBoundaryQuad, SimpleBoundaryQuad};

/// A general quadrangulation split into its largest simple block and the
/// rest. `attachments` records, at every vertex shared by both, the last
/// core half-edge before the rest and the first rest half-edge after it
/// (original ids), which is enough to splice the rotations back.
#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    pub core: SimpleBoundaryQuad,
    /// core half-edge id -> original id
    pub core_half_edge_old: Vec<u32>,
    pub core_vertex_old: Vec<u32>,
    pub rest: Option<Restricted>,
    pub attachments: Vec<(u32, u32)>,
    pub original_root: u32,
    pub original_vertex_count: usize,
}

/// Groups inner faces connected through edges that have inner faces on both
/// sides. Returns (component of each face or NONE for the root face, sizes).
fn face_components(map: &HalfEdgeMap, face_of: &[u32], faces_n: usize, root_face: usize) -> (Vec<u32>, Vec<usize>) {
    let mut comp = vec![NONE; faces_n];
    let mut sizes = Vec::new();
    // one representative half-edge per face
    let mut rep = vec![NONE; faces_n];
    for e in 0..map.half_edge_count() {
        let f = face_of[e] as usize;
        if rep[f] == NONE {
            rep[f] = e as u32;
        }
    }
    let mut stack = Vec::new();
    for f0 in 0..faces_n {
        if f0 == root_face || comp[f0] != NONE {
            continue;
        }
        let c = sizes.len() as u32;
        comp[f0] = c;
        let mut size = 0;
        stack.push(f0);
        while let Some(f) = stack.pop() {
            size += 1;
            let start = rep[f];
            let mut e = start;
            loop {
                let g = face_of[map.twin(e) as usize] as usize;
                if g != root_face && comp[g] == NONE {
                    comp[g] = c;
                    stack.push(g);
                }
                e = map.face_next(e);
                if e == start {
                    break;
                }
            }
        }
        sizes.push(size);
    }
    (comp, sizes)
}

/// Extracts the simple block with the most inner faces (ties broken
/// uniformly) and reroots it at a uniform boundary half-edge.
pub fn extract_simple_core<R: Rng + ?Sized>(q: &GeneralBoundaryQuad, rng: &mut R) -> Result<CoreDecomposition> {
    let map = &q.map;
    let fd = faces(map);
    if fd.faces.len() < 2 {
        return Err(Error::DegenerateCore);
    }
    let (comp, sizes) = face_components(map, &fd.face_of, fd.faces.len(), fd.root_face);
    let best = *sizes.iter().max().unwrap();
    let ties: Vec<usize> = (0..sizes.len()).filter(|&c| sizes[c] == best).collect();
    let chosen = ties[rng.gen_range(0..ties.len())] as u32;
    let n = map.half_edge_count();
    let mut keep = vec![false; n];
    for e in 0..n {
        if comp[fd.face_of[e] as usize] == chosen {
            keep[e] = true;
            keep[map.twin(e as u32) as usize] = true;
        }
    }
    // any kept half-edge whose twin lies in the root face can serve as root
    let outer: Vec<u32> =
        (0..n as u32).filter(|&e| keep[e as usize] && fd.face_of[e as usize] as usize == fd.root_face).collect();
    let h = outer[rng.gen_range(0..outer.len())];
    let root = map.twin(h);
    let core = restrict(map, &keep, root);
    let core_q = SimpleBoundaryQuad::from_map(core.map.clone()).ok_or(Error::DegenerateCore)?;
    debug_assert_eq!(core_q.faces, best);
    let rest_keep: Vec<bool> = keep.iter().map(|&k| !k).collect();
    let (rest, attachments) = if let Some(first) = rest_keep.iter().position(|&k| k) {
        let rest = restrict(map, &rest_keep, first as u32);
        let mut att = Vec::new();
        for e in 0..n as u32 {
            if keep[e as usize] && !keep[map.next(e) as usize] {
                att.push((e, map.next(e)));
            }
        }
        (Some(rest), att)
    } else {
        (None, vec![])
    };
    Ok(CoreDecomposition {
        core: core_q,
        core_half_edge_old: core.half_edge_old,
        core_vertex_old: core.vertex_old,
        rest,
        attachments,
        original_root: q.map.root(),
        original_vertex_count: q.map.vertex_count(),
    })
}

impl CoreDecomposition {
    /// Rebuilds the original map from the core and the pruned rest.
    pub fn reassemble(&self) -> HalfEdgeMap {
        let mut n = self.core_half_edge_old.len();
        if let Some(r) = &self.rest {
            n += r.half_edge_old.len();
        }
        let mut twin = vec![NONE; n];
        let mut next = vec![NONE; n];
        let mut origin = vec![NONE; n];
        let mut put = |m: &HalfEdgeMap, he_old: &[u32], v_old: &[u32]| {
            for (i, &e) in he_old.iter().enumerate() {
                let i = i as u32;
                twin[e as usize] = he_old[m.twin(i) as usize];
                next[e as usize] = he_old[m.next(i) as usize];
                origin[e as usize] = v_old[m.origin(i) as usize];
            }
        };
        put(&self.core.map, &self.core_half_edge_old, &self.core_vertex_old);
        if let Some(r) = &self.rest {
            put(&r.map, &r.half_edge_old, &r.vertex_old);
            // splice: x -> first ... last -> (old core successor of x)
            for &(x, first) in &self.attachments {
                let core_succ = next[x as usize];
                let mut last = first;
                while next[last as usize] != first {
                    last = next[last as usize];
                }
                next[x as usize] = first;
                next[last as usize] = core_succ;
            }
        }
        HalfEdgeMap::from_parts(twin, next, origin, self.original_root, self.original_vertex_count as u32)
    }
}

/// An accepted simple-boundary sample with its bookkeeping.
#[derive(Debug, Clone)]
pub struct SimpleSample {
    pub quad: SimpleBoundaryQuad,
    pub requested: (usize, usize),
    pub realized: (usize, usize),
    pub attempts: u64,
    /// general-boundary parameters used by the accepted attempt
    pub inflated: (usize, usize),
}

/// Parameters of the rejection sampler.
#[derive(Debug, Clone, Copy)]
pub struct RejectionConfig {
    pub window: f64,
    pub max_attempts: u64,
    /// starting general-boundary parameters; a rough guess is derived when absent
    pub start: Option<(usize, usize)>,
}

impl Default for RejectionConfig {
    fn default() -> Self {
        RejectionConfig { window: 0.1, max_attempts: 10_000, start: None }
    }
}

/// Initial guess for the general-boundary parameters whose core has about
/// f faces and half-perimeter l.
pub fn inflate_guess(f: usize, l: usize) -> (usize, usize) {
    let ff = (f as f64 * 1.05).ceil().max(1.0) as usize;
    let pp = (l as f64 * 2.0).ceil().max(1.0) as usize;
    (ff, pp)
}

/// Rejection sampler: draws general-boundary quadrangulations, keeps the
/// simple core and accepts when it falls in the window
/// [f(1-w), f(1+w)] x [l(1-w), l(1+w)]. The inflated parameters are adapted
/// from the cores seen so far. Given the realized (f, l) the sample is
/// uniform.
pub fn sample_simple_boundary_quad<R: Rng + ?Sized>(
    f: usize,
    l: usize,
    cfg: RejectionConfig,
    rng: &mut R,
) -> Result<SimpleSample> {
    if l == 0 {
        return Err(Error::InadmissibleParameters("half-perimeter must be at least 1".into()));
    }
    if f + 1 < l && !(f == 0 && l == 1) {
        return Err(Error::InadmissibleParameters(format!("no simple quadrangulation with f={f}, l={l}")));
    }
    if f == 0 {
        let quad = SimpleBoundaryQuad::from_map(crate::map::path_map(1)).unwrap();
        return Ok(SimpleSample { quad, requested: (0, 1), realized: (0, 1), attempts: 1, inflated: (0, 1) });
    }
    let w = cfg.window.max(0.0);
    let lo_f = (f as f64 * (1.0 - w)).ceil() as usize;
    let hi_f = (f as f64 * (1.0 + w)).floor() as usize;
    let lo_l = (l as f64 * (1.0 - w)).ceil() as usize;
    let hi_l = (l as f64 * (1.0 + w)).floor() as usize;
    let (mut big_f, mut big_p) = cfg.start.unwrap_or_else(|| inflate_guess(f, l));
    let (mut bf, mut bp) = (big_f as f64, big_p as f64);
    // the core never exceeds the general map, and the upper cap stops the
    // adaptation from drifting away on small targets
    let (min_f, min_p) = (f as f64, l as f64);
    let (max_f, max_p) = (4.0 * bf.max(min_f), 4.0 * bp.max(min_p));
    for attempt in 1..=cfg.max_attempts {
        let g = sample_general_boundary_quad(big_f, big_p, rng)?;
        let core = match extract_simple_core(&g, rng) {
            Ok(c) => c,
            Err(Error::DegenerateCore) => {
                bf = (bf * 1.2).min(max_f);
                big_f = bf.round() as usize;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (cf, cl) = (core.core.faces, core.core.half_perimeter);
        if (lo_f..=hi_f).contains(&cf) && (lo_l..=hi_l).contains(&cl) {
            return Ok(SimpleSample {
                quad: core.core,
                requested: (f, l),
                realized: (cf, cl),
                attempts: attempt,
                inflated: (big_f, big_p),
            });
        }
        // damped multiplicative correction toward the target
        let rf = (f as f64 / cf.max(1) as f64).clamp(0.5, 2.0);
        let rl = (l as f64 / cl.max(1) as f64).clamp(0.5, 2.0);
        bf = (bf * rf.powf(0.5)).clamp(min_f, max_f);
        bp = (bp * rl.powf(0.5)).clamp(min_p, max_p);
        big_f = bf.round().max(1.0) as usize;
        big_p = bp.round().max(1.0) as usize;
    }
    Err(Error::AcceptanceTooLow { attempts: cfg.max_attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::has_simple_boundary;
    use crate::rng::seeded;

    #[test]
    fn simple_input_is_its_own_core() {
        let mut rng = seeded(1);
        let q = GeneralBoundaryQuad::from_map(crate::map::cycle_map(4));
        let c = extract_simple_core(&q, &mut rng).unwrap();
        assert!(c.rest.is_none());
        assert_eq!(c.core.faces, 1);
        assert_eq!(c.core.half_perimeter, 2);
    }

    #[test]
    fn reassembly_round_trip() {
        let mut rng = seeded(2);
        for i in 0..300 {
            let f = 1 + i % 30;
            let p = 1 + i % 7;
            let q = sample_general_boundary_quad(f, p, &mut rng).unwrap();
            let c = extract_simple_core(&q, &mut rng).unwrap();
            assert!(has_simple_boundary(&c.core.map));
            assert!(c.core.half_perimeter <= p);
            assert_eq!(c.reassemble(), q.map);
        }
    }

    #[test]
    fn tree_has_degenerate_core() {
        let mut rng = seeded(3);
        let q = sample_general_boundary_quad(0, 5, &mut rng).unwrap();
        assert!(matches!(extract_simple_core(&q, &mut rng), Err(Error::DegenerateCore)));
    }

    #[test]
    fn windowed_sampler_hits_window() {
        let mut rng = seeded(4);
        let s = sample_simple_boundary_quad(400, 30, RejectionConfig { window: 0.1, ..Default::default() }, &mut rng)
            .unwrap();
        assert!(has_simple_boundary(&s.quad.map));
        assert!((360..=440).contains(&s.realized.0));
        assert!((27..=33).contains(&s.realized.1));
        assert_eq!(s.quad.map.vertex_count(), s.realized.0 + s.realized.1 + 1);
    }
}
