//! Uniform quadrangulations with a general boundary from labeled forests.
//!
//! A forest of p plane trees with f edges in total, labels changing by -1, 0
//! or +1 along edges, and root labels forming a cyclic sequence whose steps
//! are at least -1, is turned into a pointed quadrangulation by linking each
//! corner to the next corner (cyclically, in contour order) with label one
//! less, and the minimal-label corners to an extra vertex. The root face is
//! the face that sits below the row of tree roots. All pointed rooted maps
//! arise equally often and the vertex count f + p + 1 does not depend on the
//! map, so forgetting the point gives the uniform law.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::map::{HalfEdgeMap, NONE};
use crate::quad::GeneralBoundaryQuad;

/// Forest of p trees with f edges in total, as one step sequence per tree.
pub fn sample_forest<R: Rng + ?Sized>(f: usize, p: usize, rng: &mut R) -> Vec<Vec<bool>> {
    let n = 2 * f + p;
    let mut s: Vec<bool> = (0..n).map(|i| i < f).collect();
    s.shuffle(rng);
    let mut h = 0i64;
    let mut min = 0i64;
    for &u in &s {
        h += if u { 1 } else { -1 };
        min = min.min(h);
    }
    let level = min + rng.gen_range(0..p as i64);
    // start right after the first time the walk reaches `level`
    let mut h = 0i64;
    let mut start = 0;
    if level < 0 {
        for (i, &u) in s.iter().enumerate() {
            h += if u { 1 } else { -1 };
            if h == level {
                start = i + 1;
                break;
            }
        }
    }
    s.rotate_left(start % n);
    let mut trees = Vec::with_capacity(p);
    let mut cur = Vec::new();
    let mut h = 0i64;
    let mut floor = 0i64;
    for u in s {
        h += if u { 1 } else { -1 };
        if h < floor {
            floor = h;
            trees.push(std::mem::take(&mut cur));
        } else {
            cur.push(u);
        }
    }
    debug_assert_eq!(trees.len(), p);
    trees
}

/// Cyclic sequence of p root labels starting at 0 whose steps are >= -1.
pub fn sample_root_labels<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Vec<i64> {
    // p stars and p-1 bars; step i = (stars in bin i) - 1
    let mut s: Vec<bool> = (0..2 * p - 1).map(|i| i < p).collect();
    s.shuffle(rng);
    let mut counts = vec![0i64; p];
    let mut bin = 0;
    for star in s {
        if star {
            counts[bin] += 1;
        } else {
            bin += 1;
        }
    }
    let mut labels = Vec::with_capacity(p);
    let mut l = 0i64;
    for i in 0..p {
        labels.push(l);
        l += counts[i] - 1;
    }
    labels
}

/// A labeled forest ready to be turned into a map.
#[derive(Debug, Clone)]
pub struct LabeledForest {
    pub trees: Vec<Vec<bool>>,
    /// label of every vertex, vertices numbered tree by tree in preorder
    pub labels: Vec<i64>,
    /// (vertex, label) of each corner in contour order
    pub corners: Vec<u32>,
    pub roots: Vec<u32>,
}

pub fn sample_labeled_forest<R: Rng + ?Sized>(f: usize, p: usize, rng: &mut R) -> LabeledForest {
    let trees = sample_forest(f, p, rng);
    let root_labels = sample_root_labels(p, rng);
    let mut labels = Vec::with_capacity(f + p);
    let mut corners = Vec::with_capacity(2 * f + p);
    let mut roots = Vec::with_capacity(p);
    let mut stack: Vec<u32> = Vec::new();
    for (t, steps) in trees.iter().enumerate() {
        let root = labels.len() as u32;
        roots.push(root);
        labels.push(root_labels[t]);
        stack.clear();
        stack.push(root);
        corners.push(root);
        for &u in steps {
            if u {
                let parent = *stack.last().unwrap();
                let v = labels.len() as u32;
                let inc = rng.gen_range(-1i64..=1);
                labels.push(labels[parent as usize] + inc);
                stack.push(v);
            } else {
                stack.pop();
            }
            corners.push(*stack.last().unwrap());
        }
    }
    LabeledForest { trees, labels, corners, roots }
}

/// Builds the pointed quadrangulation. Returns the map (not yet rooted on
/// the boundary: root is an arbitrary half-edge), the index of the extra
/// vertex and one half-edge of the boundary face.
pub fn forest_to_map(lf: &LabeledForest) -> (HalfEdgeMap, u32, u32) {
    let n = lf.corners.len();
    let nv = lf.labels.len();
    let point = nv as u32;
    let clab: Vec<i64> = lf.corners.iter().map(|&v| lf.labels[v as usize]).collect();
    let min = *clab.iter().min().unwrap();
    let max = *clab.iter().max().unwrap();
    let width = (max - min + 1) as usize;
    // successor corner, NONE for the extra vertex
    let mut succ = vec![NONE; n];
    let mut last = vec![NONE; width];
    for _ in 0..2 {
        for i in (0..n).rev() {
            let l = (clab[i] - min) as usize;
            if l > 0 && succ[i] == NONE {
                succ[i] = last[l - 1];
            }
            last[l] = i as u32;
        }
    }
    // arc i: half-edge 2i leaves corner i, 2i+1 arrives at its successor
    let mut incoming: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut to_point: Vec<u32> = Vec::new();
    for i in 0..n {
        if succ[i] == NONE {
            to_point.push(i as u32);
        } else {
            incoming[succ[i] as usize].push(i as u32);
        }
    }
    let h = 2 * n;
    let twin: Vec<u32> = (0..h as u32).map(|e| e ^ 1).collect();
    let mut origin = vec![0u32; h];
    for i in 0..n {
        origin[2 * i] = lf.corners[i];
        origin[2 * i + 1] = if succ[i] == NONE { point } else { lf.corners[succ[i] as usize] };
    }
    // rotation lists per vertex: corners in contour order, each contributing
    // its incoming arcs (nearest behind first) and then its outgoing arc
    let mut rot: Vec<Vec<u32>> = vec![Vec::new(); nv + 1];
    for j in 0..n {
        let v = lf.corners[j] as usize;
        let inc = &mut incoming[j];
        inc.sort_by_key(|&i| (j + n - i as usize) % n);
        for &i in inc.iter() {
            rot[v].push(2 * i + 1);
        }
        rot[v].push(2 * j as u32);
    }
    for &i in to_point.iter().rev() {
        rot[nv].push(2 * i + 1);
    }
    let mut next = vec![0u32; h];
    for r in &rot {
        for k in 0..r.len() {
            next[r[k] as usize] = r[(k + 1) % r.len()];
        }
    }
    // the root face contains the sector after the outgoing arc of the last
    // corner of the first tree's root
    let first_tree_last = lf.trees[0].len();
    let boundary_he = twin[2 * first_tree_last];
    (HalfEdgeMap::from_parts(twin, next, origin, 0, nv as u32 + 1), point, boundary_he)
}

/// Uniform quadrangulation with f inner faces and a root face of degree 2p.
pub fn sample_general_boundary_quad<R: Rng + ?Sized>(f: usize, p: usize, rng: &mut R) -> Result<GeneralBoundaryQuad> {
    if p == 0 {
        return Err(Error::InadmissibleParameters("half-perimeter must be at least 1".into()));
    }
    let lf = sample_labeled_forest(f, p, rng);
    let (map, _point, bhe) = forest_to_map(&lf);
    let cyc = map.face_cycle(bhe);
    debug_assert_eq!(cyc.len(), 2 * p);
    let h = cyc[rng.gen_range(0..cyc.len())];
    let map = map.rerooted(map.twin(h));
    Ok(GeneralBoundaryQuad::from_map(map))
}
