//! Exploration of a simple-boundary quadrangulation from a marked boundary
//! arc toward the antipodal boundary point.
//!
//! The filled-in ball of radius s is the ball B(root, s) together with every
//! component of its complement that does not contain the target. r_0 is the
//! least s for which it covers the arc. Everything that is not separated from
//! the target by the filled-in ball of radius r_0 + r is left unexplored.

use crate::error::{Error, Result};
use crate::map::{faces, restrict, Adjacency, HalfEdgeMap, NONE};
use crate::quad::SimpleBoundaryQuad;

#[derive(Debug, Clone)]
pub struct BoundaryExploration {
    /// explored part, rooted at the original root edge when it survives
    pub retained: HalfEdgeMap,
    /// retained half-edge -> original half-edge
    pub retained_half_edges: Vec<u32>,
    /// retained vertex -> original vertex
    pub retained_vertices: Vec<u32>,
    /// last retained boundary vertex before the unexplored arc and first
    /// one after it (retained ids)
    pub v1: u32,
    pub v2: u32,
    pub r0: u32,
    pub radius: u32,
    /// half the perimeter of the unexplored region
    pub leftover_perimeter: usize,
    /// inner faces of the unexplored region
    pub leftover_area: usize,
    /// inner faces counted directly on the retained map
    pub retained_inner_faces: usize,
    /// edges between the unexplored region and retained inner faces
    pub inner_boundary: usize,
    /// original boundary edges that stay in the retained part
    pub outer_boundary: usize,
    /// the target fell inside the ball: nothing is left unexplored
    pub swallowed: bool,
}

/// Vertices of the component of `target` in {d > s}, or None when the
/// target itself is within distance s.
fn target_component(adj: &Adjacency, dist: &[u32], target: u32, s: u32) -> Option<Vec<bool>> {
    if dist[target as usize] <= s {
        return None;
    }
    let allowed: Vec<bool> = dist.iter().map(|&d| d > s).collect();
    let d = adj.bfs_within(&[target], &allowed);
    Some(d.iter().map(|&x| x != NONE).collect())
}

pub fn explore_boundary(q: &SimpleBoundaryQuad, a: usize, b: usize, r: u32) -> Result<BoundaryExploration> {
    let l = q.half_perimeter;
    if a + b >= 2 * l {
        return Err(Error::ArcTooLarge(a + b));
    }
    let map = &q.map;
    let adj = Adjacency::new(map);
    let root_v = map.root_vertex();
    let dist = adj.bfs(&[root_v])?;
    let target = q.boundary_vertex(l as i64);
    let arc: Vec<u32> = (-(a as i64)..=b as i64).map(|i| q.boundary_vertex(i)).collect();
    let covers = |s: u32| match target_component(&adj, &dist, target, s) {
        None => true,
        Some(k) => arc.iter().all(|&v| !k[v as usize]),
    };
    // covering is monotone in s
    let (mut lo, mut hi) = (0u32, dist[target as usize]);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if covers(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let r0 = lo;
    let big_r = r0.saturating_add(r);
    let whole = || BoundaryExploration {
        retained: map.clone(),
        retained_half_edges: (0..map.half_edge_count() as u32).collect(),
        retained_vertices: (0..map.vertex_count() as u32).collect(),
        v1: target,
        v2: target,
        r0,
        radius: r,
        leftover_perimeter: 0,
        leftover_area: 0,
        retained_inner_faces: q.faces,
        inner_boundary: 0,
        outer_boundary: 2 * l,
        swallowed: true,
    };
    let k = match target_component(&adj, &dist, target, big_r) {
        None => return Ok(whole()),
        Some(k) => k,
    };

    let fd = faces(map);
    let nf = fd.faces.len();
    let mut unexplored = vec![false; nf];
    for (fi, cyc) in fd.faces.iter().enumerate() {
        if fi != fd.root_face && cyc.iter().any(|&e| k[map.origin(e) as usize]) {
            unexplored[fi] = true;
        }
    }
    let n = map.half_edge_count();
    let mut keep: Vec<bool> = (0..n)
        .map(|e| {
            let f = fd.face_of[e] as usize;
            let g = fd.face_of[map.twin(e as u32) as usize] as usize;
            let kept = |h: usize| h != fd.root_face && !unexplored[h];
            kept(f) || kept(g)
        })
        .collect();
    // an edge survives when it borders an explored inner face; keep only
    // what is attached to the root vertex; enclosed pieces join
    // the unexplored region
    let start = map.rotation_from(map.root()).into_iter().find(|&e| keep[e as usize]);
    let mut reach = vec![false; n];
    if let Some(s) = start {
        let mut stack = vec![s];
        reach[s as usize] = true;
        while let Some(e) = stack.pop() {
            for x in [map.twin(e), map.next(e)] {
                let mut y = x;
                // skip dropped half-edges around the vertex
                while !keep[y as usize] {
                    y = map.next(y);
                }
                if !reach[y as usize] {
                    reach[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    for e in 0..n {
        if keep[e] && !reach[e] {
            keep[e] = false;
            let f = fd.face_of[e] as usize;
            if f != fd.root_face {
                unexplored[f] = true;
            }
        }
    }
    // faces whose edges all went away are unexplored as well
    for (fi, cyc) in fd.faces.iter().enumerate() {
        if fi != fd.root_face && cyc.iter().all(|&e| !keep[e as usize]) {
            unexplored[fi] = true;
        }
    }

    let mut perim = 0usize;
    let mut inner_boundary = 0usize;
    for e in 0..n {
        let f = fd.face_of[e] as usize;
        let g = fd.face_of[map.twin(e as u32) as usize] as usize;
        if unexplored[f] && !unexplored[g] {
            perim += 1;
            if g != fd.root_face {
                inner_boundary += 1;
            }
        }
    }
    let outer_boundary =
        q.boundary.iter().filter(|&&h| !unexplored[fd.face_of[h as usize] as usize]).count();
    let leftover_area = unexplored.iter().filter(|&&u| u).count();

    let root = if keep[map.root() as usize] { map.root() } else { start.unwrap_or(NONE) };
    let res = restrict(map, &keep, if root == NONE { 0 } else { root });
    // direct recount: retained faces that are whole original inner faces
    let retained_inner_faces = if res.map.is_vertex_map() {
        0
    } else {
        let rf = faces(&res.map);
        rf.faces
            .iter()
            .filter(|cyc| {
                let of = fd.face_of[res.half_edge_old[cyc[0] as usize] as usize] as usize;
                of != fd.root_face
                    && cyc.len() == fd.degrees[of]
                    && cyc.iter().all(|&e| fd.face_of[res.half_edge_old[e as usize] as usize] as usize == of)
            })
            .count()
    };
    let mut vnew = vec![NONE; map.vertex_count()];
    for (i, &v) in res.vertex_old.iter().enumerate() {
        vnew[v as usize] = i as u32;
    }
    // unexplored boundary run around the antipode
    let present = |i: i64| vnew[q.boundary_vertex(i) as usize] != NONE;
    let mut i1 = l as i64;
    while !present(i1) && i1 > l as i64 - 2 * l as i64 {
        i1 -= 1;
    }
    let mut i2 = l as i64;
    while !present(i2) && i2 < l as i64 + 2 * l as i64 {
        i2 += 1;
    }
    let v1 = vnew[q.boundary_vertex(i1) as usize];
    let v2 = vnew[q.boundary_vertex(i2) as usize];
    Ok(BoundaryExploration {
        retained: res.map,
        retained_half_edges: res.half_edge_old,
        retained_vertices: res.vertex_old,
        v1,
        v2,
        r0,
        radius: r,
        leftover_perimeter: perim / 2,
        leftover_area,
        retained_inner_faces,
        inner_boundary,
        outer_boundary,
        swallowed: false,
    })
}
