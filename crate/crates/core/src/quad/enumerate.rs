//! Exhaustive generation of rooted quadrangulations with a boundary by
//! root-edge deletion.
//!
//! Let M(f, p) be the rooted maps whose inner faces are quadrangles, with f
//! inner faces and a root face of degree 2p. Removing the root edge either
//! disconnects the map into a pair in M(f1, p1) x M(f2, p2) with
//! p1 + p2 = p - 1, or merges the inner face left of the root into the root
//! face, giving a map in M(f - 1, p + 1). Both operations are inverted below.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::map::HalfEdgeMap;

/// Flat u8 storage of maps sharing the same (f, p).
#[derive(Debug, Clone, Default)]
struct Arena {
    half_edges: usize,
    vertices: usize,
    data: Vec<u8>,
}

impl Arena {
    fn len(&self) -> usize {
        if self.half_edges == 0 {
            self.data.len()
        } else {
            self.data.len() / (3 * self.half_edges)
        }
    }
    fn push(&mut self, m: &HalfEdgeMap) {
        debug_assert!(m.is_vertex_map() || m.root() == 0);
        if m.is_vertex_map() {
            self.data.push(0);
            return;
        }
        self.data.extend(m.twins().iter().map(|&x| x as u8));
        self.data.extend(m.nexts().iter().map(|&x| x as u8));
        self.data.extend(m.origins().iter().map(|&x| x as u8));
    }
    fn get(&self, i: usize) -> HalfEdgeMap {
        let n = self.half_edges;
        if n == 0 {
            return HalfEdgeMap::vertex_map();
        }
        let s = &self.data[3 * n * i..3 * n * (i + 1)];
        let w = |a: &[u8]| a.iter().map(|&x| x as u32).collect::<Vec<u32>>();
        HalfEdgeMap::from_parts(w(&s[..n]), w(&s[n..2 * n]), w(&s[2 * n..]), 0, self.vertices as u32)
    }
}

/// Largest number of edges the general enumerator will build.
pub const MAX_GENERAL_EDGES: usize = 11;
/// Largest number of edges for simple-boundary enumeration.
pub const MAX_SIMPLE_EDGES: usize = 12;

/// Memoized enumerator. Maps are stored in canonical form, rooted at 0.
#[derive(Debug, Default)]
pub struct Enumerator {
    cache: HashMap<(usize, usize), Arena>,
}

/// Bridge composition: new root edge from the root vertex of `a` to the root
/// vertex of `b`, placed in both root faces.
pub fn join_bridge(a: &HalfEdgeMap, b: &HalfEdgeMap) -> HalfEdgeMap {
    let na = a.half_edge_count() as u32;
    let nb = b.half_edge_count() as u32;
    let va = a.vertex_count() as u32;
    let n = (na + nb + 2) as usize;
    let mut twin = Vec::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    let mut origin = Vec::with_capacity(n);
    twin.extend_from_slice(a.twins());
    next.extend_from_slice(a.nexts());
    origin.extend_from_slice(a.origins());
    twin.extend(b.twins().iter().map(|&x| x + na));
    next.extend(b.nexts().iter().map(|&x| x + na));
    origin.extend(b.origins().iter().map(|&x| x + va));
    let r = na + nb;
    let rt = r + 1;
    twin.extend([rt, r]);
    next.extend([r, rt]);
    origin.extend([a.root_vertex(), va + b.root_vertex()]);
    if na > 0 {
        let ar = a.root() as usize;
        next[r as usize] = next[ar];
        next[ar] = r;
    }
    if nb > 0 {
        let br = (b.root() + na) as usize;
        next[rt as usize] = next[br];
        next[br] = rt;
    }
    HalfEdgeMap::from_parts(twin, next, origin, r, va + b.vertex_count() as u32)
}

/// Adds a quadrangle in the root face: a new edge from the root vertex that
/// closes the face made of itself and the three root-face half-edges ending
/// at the root. Requires a root face of degree at least 4.
pub fn add_root_quadrangle(m: &HalfEdgeMap) -> HalfEdgeMap {
    let a = m.root();
    let ta = m.twin(a);
    let s2 = m.face_prev(ta);
    let s1 = m.face_prev(s2);
    let u = m.face_prev(s1);
    let pu = m.twin(u);
    debug_assert_eq!(m.next(pu), s1);
    let n = m.half_edge_count() as u32;
    let rho = n;
    let trho = n + 1;
    let mut twin = m.twins().to_vec();
    let mut next = m.nexts().to_vec();
    let mut origin = m.origins().to_vec();
    twin.extend([trho, rho]);
    next.extend([next[a as usize], s1]);
    origin.extend([m.origin(a), m.origin(s1)]);
    next[a as usize] = rho;
    next[pu as usize] = trho;
    HalfEdgeMap::from_parts(twin, next, origin, rho, m.vertex_count() as u32)
}

/// Boundary visits 2p distinct vertices.
pub fn has_simple_boundary(m: &HalfEdgeMap) -> bool {
    if m.is_vertex_map() {
        return false;
    }
    let cyc = m.face_cycle(m.twin(m.root()));
    let mut seen = vec![false; m.vertex_count()];
    for e in cyc {
        let v = m.origin(e) as usize;
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure(&mut self, f: usize, p: usize) {
        if self.cache.contains_key(&(f, p)) {
            return;
        }
        let mut arena = Arena { half_edges: 2 * (2 * f + p), vertices: f + p + 1, data: vec![] };
        if p == 0 {
            if f == 0 {
                arena.push(&HalfEdgeMap::vertex_map());
            }
        } else {
            // bridges
            for f1 in 0..=f {
                for p1 in 0..p {
                    let f2 = f - f1;
                    let p2 = p - 1 - p1;
                    self.ensure(f1, p1);
                    self.ensure(f2, p2);
                    let (la, lb) = (self.cache[&(f1, p1)].len(), self.cache[&(f2, p2)].len());
                    for i in 0..la {
                        let a = self.cache[&(f1, p1)].get(i);
                        for j in 0..lb {
                            let b = self.cache[&(f2, p2)].get(j);
                            arena.push(&join_bridge(&a, &b).canonical());
                        }
                    }
                }
            }
            if f >= 1 {
                self.ensure(f - 1, p + 1);
                let src = &self.cache[&(f - 1, p + 1)];
                for i in 0..src.len() {
                    arena.push(&add_root_quadrangle(&src.get(i)).canonical());
                }
            }
        }
        self.cache.insert((f, p), arena);
    }

    /// All rooted quadrangulations with general boundary 2p and f inner
    /// faces, up to root-preserving isomorphism.
    pub fn general(&mut self, f: usize, p: usize) -> Result<Vec<HalfEdgeMap>> {
        if 2 * f + p > MAX_GENERAL_EDGES {
            return Err(Error::TooLarge(format!("2f+p = {} > {MAX_GENERAL_EDGES}", 2 * f + p)));
        }
        self.ensure(f, p);
        let a = &self.cache[&(f, p)];
        Ok((0..a.len()).map(|i| a.get(i)).collect())
    }

    pub fn general_count(&mut self, f: usize, p: usize) -> Result<usize> {
        if 2 * f + p > MAX_GENERAL_EDGES {
            return Err(Error::TooLarge(format!("2f+p = {} > {MAX_GENERAL_EDGES}", 2 * f + p)));
        }
        self.ensure(f, p);
        Ok(self.cache[&(f, p)].len())
    }

    /// All rooted quadrangulations with a simple boundary of length 2l and f
    /// inner faces.
    pub fn simple(&mut self, f: usize, l: usize) -> Result<Vec<HalfEdgeMap>> {
        if 2 * f + l > MAX_SIMPLE_EDGES {
            return Err(Error::TooLarge(format!("2f+l = {} > {MAX_SIMPLE_EDGES}", 2 * f + l)));
        }
        if l == 0 {
            return Ok(vec![]);
        }
        if f == 0 {
            // only the single edge has a simple boundary without faces
            return Ok(if l == 1 { vec![crate::map::path_map(1)] } else { vec![] });
        }
        // a simple boundary of length >= 4 has no bridge at the root
        self.ensure(f - 1, l + 1);
        let src = &self.cache[&(f - 1, l + 1)];
        let mut out = Vec::new();
        for i in 0..src.len() {
            let m = add_root_quadrangle(&src.get(i));
            if has_simple_boundary(&m) {
                out.push(m.canonical());
            }
        }
        Ok(out)
    }
}
