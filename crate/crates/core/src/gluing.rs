//! Gluing a simple-boundary quadrangulation along the contour of a plane
//! tree, the inverse cut, the two-sided gluing of spine trees, and the
//! quotient distance computed without building the glued map.
//!
//! Boundary label i of the quadrangulation is matched with contour time i of
//! the tree. The boundary edge from i to i+1 is sewn to the edge traversed by
//! the partner contour step, so that `twin(a_i) = a_{p(i)}`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::map::{path_map, HalfEdgeMap, NONE};
use crate::quad::SimpleBoundaryQuad;
use crate::tree::{PlaneTree, SpineTree};

/// A quadrangulation with a marked spanning-free tree containing the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecoratedQuad {
    pub map: HalfEdgeMap,
    /// half-edge traversed at each contour step, `tree_half_edges[0]` is the root
    pub tree_half_edges: Vec<u32>,
    /// glued vertex visited at each contour time 0..2k-1
    pub contour_curve: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingCertificate {
    /// boundary label -> glued vertex
    pub vertex_class_map: Vec<u32>,
    /// number of tree vertices, k + 1
    pub class_count: usize,
    /// quadrangulation vertex -> glued vertex
    pub vertex_map: Vec<u32>,
    /// quadrangulation half-edge -> glued half-edge, NONE for sewn outer sides
    pub half_edge_map: Vec<u32>,
}

/// Partner of each contour step (same edge, other direction).
fn partner_steps(steps: &[bool]) -> Vec<usize> {
    let mut p = vec![0; steps.len()];
    let mut stack = Vec::new();
    for (i, &u) in steps.iter().enumerate() {
        if u {
            stack.push(i);
        } else {
            let j = stack.pop().expect("Dyck path");
            p[i] = j;
            p[j] = i;
        }
    }
    p
}

/// Core sewing routine. Edge labels in `[0, split)` carry the first `split`
/// contour steps, labels in `[split + gap, 2l)` the remaining ones; the `gap`
/// labels in between stay on the boundary.
fn sew(q: &SimpleBoundaryQuad, t: &PlaneTree, split: usize) -> (TreeDecoratedQuad, GluingCertificate) {
    let l = q.half_perimeter;
    let k = t.size();
    let two_l = 2 * l;
    let gap = two_l - 2 * k;
    let steps = t.steps();
    let partner = partner_steps(&steps);
    let cv = t.contour_vertices();
    let map = &q.map;
    let a = &q.boundary;
    // edge label -> contour step
    let step_of = |i: usize| -> Option<usize> {
        if i < split {
            Some(i)
        } else if i >= split + gap {
            Some(i - gap)
        } else {
            None
        }
    };
    let label_of_step = |s: usize| if s < split { s } else { s + gap };
    let zipped: Vec<bool> = (0..two_l).map(|i| step_of(i).is_some()).collect();
    let p_label: Vec<usize> =
        (0..two_l).map(|i| step_of(i).map(|s| label_of_step(partner[s])).unwrap_or(NONE as usize)).collect();

    let n = map.half_edge_count();
    let mut dropped = vec![false; n];
    for i in 0..two_l {
        if zipped[i] {
            dropped[map.twin(a[i]) as usize] = true;
        }
    }
    let mut next: Vec<u32> = map.nexts().to_vec();
    let mut twin: Vec<u32> = map.twins().to_vec();
    for m in 0..two_l {
        if !zipped[m] {
            continue;
        }
        let pm = p_label[m];
        twin[a[m] as usize] = a[pm];
        next[a[pm] as usize] = map.next(map.twin(a[m]));
    }
    if gap > 0 {
        // the tip closes the open stretch of boundary
        next[a[split] as usize] = map.twin(a[split + gap - 1]);
    }

    // vertices: tree vertices first, then the rest in original order
    let mut vmap = vec![NONE; map.vertex_count()];
    for j in 0..two_l {
        let time = if j <= split {
            Some(j)
        } else if j >= split + gap {
            Some(j - gap)
        } else {
            None
        };
        if let Some(tm) = time {
            vmap[map.origin(a[j]) as usize] = cv[tm % (2 * k)];
        }
    }
    let mut vc = (k + 1) as u32;
    for v in 0..map.vertex_count() {
        if vmap[v] == NONE {
            vmap[v] = vc;
            vc += 1;
        }
    }
    let mut hmap = vec![NONE; n];
    let mut m = 0u32;
    for e in 0..n {
        if !dropped[e] {
            hmap[e] = m;
            m += 1;
        }
    }
    let mut nt = Vec::with_capacity(m as usize);
    let mut nn = Vec::with_capacity(m as usize);
    let mut no = Vec::with_capacity(m as usize);
    for e in 0..n {
        if dropped[e] {
            continue;
        }
        nt.push(hmap[twin[e] as usize]);
        nn.push(hmap[next[e] as usize]);
        no.push(vmap[map.origin(e as u32) as usize]);
    }
    let root = hmap[a[0] as usize];
    let glued = HalfEdgeMap::from_parts(nt, nn, no, root, vc);
    let tree_half_edges = (0..2 * k).map(|s| hmap[a[label_of_step(s)] as usize]).collect();
    let contour_curve = cv[..2 * k].to_vec();
    let vertex_class_map = (0..two_l).map(|j| vmap[map.origin(a[j]) as usize]).collect();
    (
        TreeDecoratedQuad { map: glued, tree_half_edges, contour_curve },
        GluingCertificate { vertex_class_map, class_count: k + 1, vertex_map: vmap, half_edge_map: hmap },
    )
}

fn single_edge_gluing() -> (TreeDecoratedQuad, GluingCertificate) {
    (
        TreeDecoratedQuad { map: path_map(1), tree_half_edges: vec![0, 1], contour_curve: vec![0, 1] },
        GluingCertificate {
            vertex_class_map: vec![0, 1],
            class_count: 2,
            vertex_map: vec![0, 1],
            half_edge_map: vec![0, 1],
        },
    )
}

/// Glues the boundary of `q` along the contour of `t`. Requires `l = k`.
pub fn glue(q: &SimpleBoundaryQuad, t: &PlaneTree) -> Result<(TreeDecoratedQuad, GluingCertificate)> {
    let k = t.size();
    if q.half_perimeter != k || k == 0 {
        return Err(Error::SizeMismatch { perimeter: q.half_perimeter, tree: k });
    }
    if q.faces == 0 {
        return Ok(single_edge_gluing());
    }
    Ok(sew(q, t, 2 * k))
}

/// Two-sided gluing of a spine tree into a longer boundary: the contour up
/// to the corner of the tip between its two hanging trees is zipped forward
/// from the root edge, the rest backward from the root, and the remaining
/// `2(l - k)` boundary edges form the root face of the result, pinched at
/// the tip. Trees without a tip corner are zipped entirely forward.
pub fn glue_extended(q: &SimpleBoundaryQuad, t: &SpineTree) -> Result<(TreeDecoratedQuad, GluingCertificate)> {
    let k = t.tree.size();
    let l = q.half_perimeter;
    if l < k {
        return Err(Error::WindowTooShort { perimeter: l, tree: k });
    }
    if k == 0 {
        return Err(Error::SizeMismatch { perimeter: l, tree: 0 });
    }
    if q.faces == 0 {
        return Ok(single_edge_gluing());
    }
    let split = if l == k { 2 * k } else { t.meeting_time.unwrap_or(2 * k) };
    Ok(sew(q, &t.tree, split))
}

/// Cuts a decorated quadrangulation open along its tree: every tree edge
/// becomes two boundary edges.
pub fn cut(d: &TreeDecoratedQuad) -> Result<(SimpleBoundaryQuad, PlaneTree)> {
    let map = &d.map;
    let n = map.half_edge_count();
    let mut in_tree = vec![false; n];
    for &e in &d.tree_half_edges {
        if e as usize >= n {
            return Err(Error::DecorationNotATree(format!("half-edge {e} out of range")));
        }
        in_tree[e as usize] = true;
    }
    let root = map.root();
    if !in_tree[root as usize] {
        return Err(Error::DecorationNotATree("root edge not in tree".into()));
    }
    if (0..n).any(|e| in_tree[e] && !in_tree[map.twin(e as u32) as usize]) {
        return Err(Error::DecorationNotATree("not closed under twin".into()));
    }
    let te = in_tree.iter().filter(|&&x| x).count();
    let k = te / 2;
    // contour walk inside the map
    let next_tree = |e: u32| {
        let mut x = map.next(map.twin(e));
        while !in_tree[x as usize] {
            x = map.next(x);
        }
        x
    };
    let mut walk = Vec::with_capacity(te);
    let mut e = root;
    for _ in 0..te {
        walk.push(e);
        e = next_tree(e);
    }
    let mut seen = vec![false; n];
    for &x in &walk {
        if seen[x as usize] {
            return Err(Error::DecorationNotATree("contour revisits a half-edge".into()));
        }
        seen[x as usize] = true;
    }
    if e != root {
        return Err(Error::DecorationNotATree("contour does not close".into()));
    }
    let mut tv = vec![false; map.vertex_count()];
    let mut vcount = 0;
    for &x in &walk {
        let v = map.origin(x) as usize;
        if !tv[v] {
            tv[v] = true;
            vcount += 1;
        }
    }
    if vcount != k + 1 {
        return Err(Error::DecorationNotATree(format!("{k} edges on {vcount} vertices")));
    }
    let mut edge_seen = vec![false; n];
    let steps: Vec<bool> = walk
        .iter()
        .map(|&x| {
            let first = !edge_seen[map.twin(x) as usize];
            edge_seen[x as usize] = true;
            first
        })
        .collect();
    let tree = PlaneTree::from_steps(&steps)?;
    if map.face_count() == 1 {
        // one face: the bare edge, or a single square folded shut
        match n {
            2 => return Ok((SimpleBoundaryQuad::from_map(path_map(1)).unwrap(), tree)),
            4 => {}
            _ => return Err(Error::DecorationNotATree("no inner faces left after cutting".into())),
        }
    }

    let two_k = 2 * k;
    let o = |i: usize| (n + i) as u32;
    let mut twin: Vec<u32> = map.twins().to_vec();
    let mut next: Vec<u32> = map.nexts().to_vec();
    let mut origin: Vec<u32> = map.origins().to_vec();
    twin.resize(n + two_k, 0);
    next.resize(n + two_k, 0);
    origin.resize(n + two_k, 0);
    // new vertex ids: boundary labels first, then untouched vertices
    let mut vnew = vec![NONE; map.vertex_count()];
    let mut vc = two_k as u32;
    for v in 0..map.vertex_count() {
        if !tv[v] {
            vnew[v] = vc;
            vc += 1;
        }
    }
    for e in 0..n {
        origin[e] = vnew[map.origin(e as u32) as usize];
    }
    for i in 0..two_k {
        let ai = walk[i];
        let prev_in = map.twin(walk[(i + two_k - 1) % two_k]);
        twin[ai as usize] = o(i);
        twin[o(i) as usize] = ai;
        origin[o(i) as usize] = ((i + 1) % two_k) as u32;
        // sector at label i: strictly between twin(a_{i-1}) and a_i
        let first = map.next(prev_in);
        next[o((i + two_k - 1) % two_k) as usize] = first;
        next[ai as usize] = o((i + two_k - 1) % two_k);
        let mut x = first;
        while x != ai {
            origin[x as usize] = i as u32;
            x = map.next(x);
        }
        origin[ai as usize] = i as u32;
    }
    let out = HalfEdgeMap::from_parts(twin, next, origin, root, vc);
    let q = SimpleBoundaryQuad::from_map(out.canonical())
        .ok_or_else(|| Error::DecorationNotATree("cut boundary is not simple".into()))?;
    Ok((q, tree))
}

/// Glued distances from a quadrangulation vertex, computed on the
/// quadrangulation with zero-cost jumps between boundary vertices of the
/// same class. Indexed by quadrangulation vertex.
pub fn quotient_chain_distances(q: &SimpleBoundaryQuad, cert: &GluingCertificate, x: u32) -> Vec<u32> {
    let map = &q.map;
    let nv = map.vertex_count();
    let nodes = nv + cert.class_count;
    // class node -> its boundary vertices
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); cert.class_count];
    let mut class_of = vec![NONE; nv];
    for (j, &c) in cert.vertex_class_map.iter().enumerate() {
        if (c as usize) < cert.class_count {
            let v = q.boundary_vertex(j as i64);
            members[c as usize].push(v);
            class_of[v as usize] = c;
        }
    }
    let adj = map.adjacency();
    let mut dist = vec![u32::MAX; nodes];
    let mut dq = VecDeque::new();
    dist[x as usize] = 0;
    dq.push_back(x as usize);
    while let Some(u) = dq.pop_front() {
        let d = dist[u];
        if u >= nv {
            for &w in &members[u - nv] {
                if dist[w as usize] > d {
                    dist[w as usize] = d;
                    dq.push_front(w as usize);
                }
            }
            continue;
        }
        let c = class_of[u];
        if c != NONE {
            let cn = nv + c as usize;
            if dist[cn] > d {
                dist[cn] = d;
                dq.push_front(cn);
            }
        }
        for &w in adj.neighbors(u as u32) {
            if dist[w as usize] > d + 1 {
                dist[w as usize] = d + 1;
                dq.push_back(w as usize);
            }
        }
    }
    dist.truncate(nv);
    dist
}

pub fn quotient_chain_distance(q: &SimpleBoundaryQuad, cert: &GluingCertificate, x: u32, y: u32) -> u32 {
    quotient_chain_distances(q, cert, x)[y as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{bfs_distances, faces};
    use crate::quad::core::RejectionConfig;
    use crate::quad::{sample_simple_boundary_quad, Enumerator};
    use crate::rng::seeded;
    use crate::tree::{all_trees, sample_uniform_tree};

    fn random_pair(f: usize, l: usize, seed: u64) -> (SimpleBoundaryQuad, PlaneTree) {
        let mut rng = seeded(seed);
        let cfg = RejectionConfig { window: 0.5, max_attempts: 100_000, start: None };
        let q = sample_simple_boundary_quad(f, l, cfg, &mut rng).unwrap().quad;
        let t = sample_uniform_tree(q.half_perimeter, &mut rng);
        (q, t)
    }

    #[test]
    fn folded_square_cuts_back() {
        let q = SimpleBoundaryQuad::from_map(crate::map::cycle_map(4)).unwrap();
        for t in all_trees(2) {
            let (d, _) = glue(&q, &t).unwrap();
            assert_eq!(d.map.face_count(), 1);
            let (q2, t2) = cut(&d).unwrap();
            assert_eq!(q2.map, q.map.canonical());
            assert_eq!(t2, t);
        }
        let t = &all_trees(1)[0];
        for m in Enumerator::new().simple(1, 1).unwrap() {
            let q = SimpleBoundaryQuad::from_map(m).unwrap();
            let (d, _) = glue(&q, t).unwrap();
            assert_eq!(d.map.face_count(), 1);
            let (q2, t2) = cut(&d).unwrap();
            assert_eq!(q2.map, q.map.canonical());
            assert_eq!(&t2, t);
        }
    }

    #[test]
    fn glued_map_is_a_quadrangulation() {
        for s in 0..40 {
            let (q, t) = random_pair(30 + s as usize, 3 + s as usize % 6, s);
            let (d, cert) = glue(&q, &t).unwrap();
            d.map.validate().unwrap();
            let fd = faces(&d.map);
            assert_eq!(fd.faces.len(), q.faces);
            assert!(fd.degrees.iter().all(|&x| x == 4));
            let k = t.size();
            assert_eq!(d.map.vertex_count(), q.map.vertex_count() - (k - 1));
            assert_eq!(cert.class_count, k + 1);
            assert_eq!(d.map.root(), d.tree_half_edges[0]);
            // the decoration is the tree
            let mut keep = vec![false; d.map.half_edge_count()];
            for &e in &d.tree_half_edges {
                keep[e as usize] = true;
            }
            let sub = crate::map::restrict(&d.map, &keep, d.map.root());
            assert_eq!(sub.map.canonical(), t.to_map().canonical());
        }
    }

    #[test]
    fn size_mismatch() {
        let (q, _) = random_pair(20, 4, 1);
        let t = crate::tree::path_tree(q.half_perimeter + 1);
        assert!(matches!(glue(&q, &t), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn cut_inverts_glue() {
        for s in 0..200 {
            let (q, t) = random_pair(10 + s as usize % 40, 1 + s as usize % 20, 1000 + s);
            let (d, _) = glue(&q, &t).unwrap();
            let (q2, t2) = cut(&d).unwrap();
            assert_eq!(q2.map.canonical_key(), q.map.canonical_key());
            assert_eq!(t2, t);
            assert_eq!(q2.half_perimeter, t.size());
        }
    }

    #[test]
    fn smallest_cases() {
        let mut en = Enumerator::new();
        let q = SimpleBoundaryQuad::from_map(en.simple(0, 1).unwrap()[0].clone()).unwrap();
        let (d, _) = glue(&q, &crate::tree::path_tree(1)).unwrap();
        assert_eq!(d.map.half_edge_count(), 2);
        let (q2, t2) = cut(&d).unwrap();
        assert_eq!(q2.map.canonical_key(), q.map.canonical_key());
        assert_eq!(t2.size(), 1);
        // one inner face, tree with one edge: the two quadrangulations with a
        // double-edge boundary give two decorated maps
        let all = en.simple(1, 1).unwrap();
        let mut keys = std::collections::HashSet::new();
        for m in all {
            let q = SimpleBoundaryQuad::from_map(m).unwrap();
            for t in all_trees(1) {
                let (d, _) = glue(&q, &t).unwrap();
                keys.insert((d.map.canonical_key(), d.tree_half_edges.clone()));
            }
        }
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn quotient_distance_matches_bfs() {
        for s in 0..15 {
            let (q, t) = random_pair(40, 2 + s as usize % 10, 50 + s);
            let (d, cert) = glue(&q, &t).unwrap();
            for x in 0..q.map.vertex_count() as u32 {
                let dq = quotient_chain_distances(&q, &cert, x);
                let dg = bfs_distances(&d.map, &[cert.vertex_map[x as usize]]).unwrap();
                for y in 0..q.map.vertex_count() {
                    assert_eq!(dq[y], dg[cert.vertex_map[y] as usize]);
                }
            }
        }
    }

    #[test]
    fn extended_equals_glue_on_full_inputs() {
        let mut rng = seeded(9);
        for s in 0..30 {
            let st = crate::tree::sample_infinite_tree_truncation(1 + s % 3, &mut rng);
            let k = st.tree.size();
            let cfg = RejectionConfig { window: 0.0, max_attempts: 1_000_000, start: None };
            if k > 12 {
                continue;
            }
            let q = sample_simple_boundary_quad(3 * k, k, cfg, &mut rng).unwrap().quad;
            assert_eq!(glue_extended(&q, &st).unwrap(), glue(&q, &st.tree).unwrap());
        }
    }

    #[test]
    fn extended_gluing_with_open_boundary() {
        let mut rng = seeded(10);
        for s in 0..30 {
            let st = crate::tree::sample_infinite_tree_truncation(2 + s % 4, &mut rng);
            let k = st.tree.size();
            if k > 25 {
                continue;
            }
            let cfg = RejectionConfig { window: 0.3, ..Default::default() };
            let q = sample_simple_boundary_quad(k * k + 40, k + 3, cfg, &mut rng).unwrap().quad;
            if q.half_perimeter < k {
                assert!(matches!(glue_extended(&q, &st), Err(Error::WindowTooShort { .. })));
                continue;
            }
            let (d, cert) = glue_extended(&q, &st).unwrap();
            d.map.validate().unwrap();
            let fd = faces(&d.map);
            let gap = 2 * (q.half_perimeter - k);
            // the open stretch of boundary is the face of its first outer side
            let o = q.map.twin(q.boundary[st.meeting_time.unwrap()]);
            let open_face = fd.face_of[cert.half_edge_map[o as usize] as usize] as usize;
            for (i, &deg) in fd.degrees.iter().enumerate() {
                if gap > 0 && i == open_face {
                    assert_eq!(deg, gap);
                } else {
                    assert_eq!(deg, 4);
                }
            }
            assert_eq!(fd.faces.len(), q.faces + usize::from(gap > 0));
            // spine vertices are glued images of the tree spine
            for &v in &st.spine {
                assert!((v as usize) < cert.class_count);
            }
        }
    }
}
