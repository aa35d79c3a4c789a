//! Rotation-system planar maps.
//!
//! A map is stored as three parallel arrays indexed by half-edge: `twin`,
//! `next` (counter-clockwise successor around the origin vertex) and
//! `origin`. Faces are the orbits of `face_next(e) = next(twin(e))`; the root
//! face is the orbit of `twin(root)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const NONE: u32 = u32::MAX;

/// One row of a raw half-edge table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdgeRecord {
    pub twin: u32,
    pub next: u32,
    pub origin: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfEdgeMap {
    twin: Vec<u32>,
    next: Vec<u32>,
    origin: Vec<u32>,
    root: u32,
    vertex_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDecomposition {
    pub faces: Vec<Vec<u32>>,
    pub face_of: Vec<u32>,
    pub root_face: usize,
    pub degrees: Vec<usize>,
}

/// Validated constructor from a raw table.
pub fn build_map(table: &[HalfEdgeRecord], root: u32, vertex_count: u32) -> Result<HalfEdgeMap> {
    if table.is_empty() || !table.len().is_multiple_of(2) {
        return Err(Error::MalformedTable(format!(
            "need a nonempty even number of half-edges, got {}",
            table.len()
        )));
    }
    let map = HalfEdgeMap {
        twin: table.iter().map(|r| r.twin).collect(),
        next: table.iter().map(|r| r.next).collect(),
        origin: table.iter().map(|r| r.origin).collect(),
        root,
        vertex_count,
    };
    map.validate()?;
    Ok(map)
}

impl HalfEdgeMap {
    /// Builds without validation. Callers in this crate guarantee invariants;
    /// debug builds still check them.
    pub(crate) fn from_parts(
        twin: Vec<u32>,
        next: Vec<u32>,
        origin: Vec<u32>,
        root: u32,
        vertex_count: u32,
    ) -> Self {
        let m = HalfEdgeMap { twin, next, origin, root, vertex_count };
        debug_assert!(m.twin.is_empty() || m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// The map with one vertex and no edges.
    pub fn vertex_map() -> Self {
        HalfEdgeMap { twin: vec![], next: vec![], origin: vec![], root: NONE, vertex_count: 1 }
    }

    pub fn is_vertex_map(&self) -> bool {
        self.twin.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.twin.len();
        let nv = self.vertex_count as usize;
        if n == 0 {
            return if nv == 1 { Ok(()) } else { Err(Error::Disconnected) };
        }
        if self.root as usize >= n {
            return Err(Error::MalformedTable(format!("root {} out of range", self.root)));
        }
        for e in 0..n {
            let t = self.twin[e] as usize;
            if t >= n || t == e || self.twin[t] as usize != e {
                return Err(Error::BrokenInvolution(e));
            }
            if self.next[e] as usize >= n {
                return Err(Error::MalformedTable(format!("next of {e} out of range")));
            }
            if self.origin[e] as usize >= nv {
                return Err(Error::MalformedTable(format!("origin of {e} out of range")));
            }
        }
        // next must be a permutation whose cycles are exactly the vertex classes
        let mut indeg = vec![0u8; n];
        for e in 0..n {
            let s = self.next[e] as usize;
            indeg[s] += 1;
            if indeg[s] > 1 {
                return Err(Error::BrokenRotation(self.origin[s] as usize));
            }
            if self.origin[s] != self.origin[e] {
                return Err(Error::BrokenRotation(self.origin[e] as usize));
            }
        }
        let mut seen = vec![false; n];
        let mut vseen = vec![false; nv];
        for e in 0..n {
            if seen[e] {
                continue;
            }
            let v = self.origin[e] as usize;
            if vseen[v] {
                return Err(Error::BrokenRotation(v));
            }
            vseen[v] = true;
            let mut x = e;
            while !seen[x] {
                seen[x] = true;
                x = self.next[x] as usize;
            }
        }
        if vseen.iter().any(|&b| !b) {
            return Err(Error::Disconnected);
        }
        // connectivity over twin/next
        let mut reach = vec![false; n];
        let mut stack = vec![self.root as usize];
        reach[self.root as usize] = true;
        let mut count = 1;
        while let Some(e) = stack.pop() {
            for x in [self.twin[e] as usize, self.next[e] as usize] {
                if !reach[x] {
                    reach[x] = true;
                    count += 1;
                    stack.push(x);
                }
            }
        }
        if count != n {
            return Err(Error::Disconnected);
        }
        let f = self.face_count() as i64;
        let chi = nv as i64 - (n / 2) as i64 + f;
        if chi != 2 {
            return Err(Error::NonPlanar(chi));
        }
        Ok(())
    }

    #[inline]
    pub fn twin(&self, e: u32) -> u32 {
        self.twin[e as usize]
    }
    #[inline]
    pub fn next(&self, e: u32) -> u32 {
        self.next[e as usize]
    }
    #[inline]
    pub fn origin(&self, e: u32) -> u32 {
        self.origin[e as usize]
    }
    #[inline]
    pub fn target(&self, e: u32) -> u32 {
        self.origin[self.twin[e as usize] as usize]
    }
    #[inline]
    pub fn face_next(&self, e: u32) -> u32 {
        self.next[self.twin[e as usize] as usize]
    }
    /// Clockwise predecessor around the origin. Linear in the vertex degree.
    pub fn prev(&self, e: u32) -> u32 {
        let mut x = e;
        loop {
            let n = self.next(x);
            if n == e {
                return x;
            }
            x = n;
        }
    }
    /// Face predecessor: the half-edge `h` with `face_next(h) = e`.
    pub fn face_prev(&self, e: u32) -> u32 {
        self.twin(self.prev(e))
    }
    pub fn root(&self) -> u32 {
        self.root
    }
    pub fn root_vertex(&self) -> u32 {
        if self.is_vertex_map() {
            0
        } else {
            self.origin(self.root)
        }
    }
    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }
    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }
    pub fn twins(&self) -> &[u32] {
        &self.twin
    }
    pub fn nexts(&self) -> &[u32] {
        &self.next
    }
    pub fn origins(&self) -> &[u32] {
        &self.origin
    }
    pub fn records(&self) -> Vec<HalfEdgeRecord> {
        (0..self.twin.len())
            .map(|e| HalfEdgeRecord { twin: self.twin[e], next: self.next[e], origin: self.origin[e] })
            .collect()
    }

    /// Same map with another root half-edge.
    pub fn rerooted(&self, root: u32) -> HalfEdgeMap {
        let mut m = self.clone();
        m.root = root;
        m
    }

    pub fn face_count(&self) -> usize {
        if self.is_vertex_map() {
            return 1;
        }
        let n = self.twin.len();
        let mut seen = vec![false; n];
        let mut f = 0;
        for e in 0..n {
            if seen[e] {
                continue;
            }
            f += 1;
            let mut x = e as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                x = self.face_next(x);
            }
        }
        f
    }

    /// Cycle of `face_next` starting at `e`.
    pub fn face_cycle(&self, e: u32) -> Vec<u32> {
        let mut out = vec![e];
        let mut x = self.face_next(e);
        while x != e {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// Half-edges with origin `v` in counter-clockwise order starting at `e`.
    pub fn rotation_from(&self, e: u32) -> Vec<u32> {
        let mut out = vec![e];
        let mut x = self.next(e);
        while x != e {
            out.push(x);
            x = self.next(x);
        }
        out
    }

    /// One outgoing half-edge per vertex.
    pub fn vertex_half_edges(&self) -> Vec<u32> {
        let mut out = vec![NONE; self.vertex_count as usize];
        for e in (0..self.twin.len()).rev() {
            out[self.origin[e] as usize] = e as u32;
        }
        out
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.vertex_count as usize];
        for &o in &self.origin {
            d[o as usize] += 1;
        }
        d
    }

    /// Root-preserving canonical relabeling. Two rooted maps are isomorphic
    /// iff their canonical forms are equal. Also returns old -> new ids.
    pub fn canonical_with_map(&self) -> (HalfEdgeMap, Vec<u32>) {
        let n = self.twin.len();
        if n == 0 {
            return (self.clone(), vec![]);
        }
        let mut new_id = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        let mut q = VecDeque::with_capacity(n);
        new_id[self.root as usize] = 0;
        order.push(self.root);
        q.push_back(self.root);
        while let Some(e) = q.pop_front() {
            for x in [self.next(e), self.twin(e)] {
                if new_id[x as usize] == NONE {
                    new_id[x as usize] = order.len() as u32;
                    order.push(x);
                    q.push_back(x);
                }
            }
        }
        let mut vnew = vec![NONE; self.vertex_count as usize];
        let mut vc = 0u32;
        let mut twin = vec![0; n];
        let mut next = vec![0; n];
        let mut origin = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            twin[i] = new_id[self.twin(e) as usize];
            next[i] = new_id[self.next(e) as usize];
            let v = self.origin(e) as usize;
            if vnew[v] == NONE {
                vnew[v] = vc;
                vc += 1;
            }
            origin[i] = vnew[v];
        }
        (HalfEdgeMap { twin, next, origin, root: 0, vertex_count: vc }, new_id)
    }

    pub fn canonical(&self) -> HalfEdgeMap {
        self.canonical_with_map().0
    }

    /// Compact isomorphism key of the rooted map.
    pub fn canonical_key(&self) -> Vec<u32> {
        let c = self.canonical();
        let mut k = c.twin;
        k.extend_from_slice(&c.next);
        k
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }
}

/// Faces under `face_next(e) = next(twin(e))`, root face through `twin(root)`.
pub fn faces(map: &HalfEdgeMap) -> FaceDecomposition {
    if map.is_vertex_map() {
        return FaceDecomposition { faces: vec![vec![]], face_of: vec![], root_face: 0, degrees: vec![0] };
    }
    let n = map.half_edge_count();
    let mut face_of = vec![NONE; n];
    let mut faces = Vec::new();
    for e in 0..n as u32 {
        if face_of[e as usize] != NONE {
            continue;
        }
        let id = faces.len() as u32;
        let cyc = map.face_cycle(e);
        for &x in &cyc {
            face_of[x as usize] = id;
        }
        faces.push(cyc);
    }
    let root_face = face_of[map.twin(map.root()) as usize] as usize;
    let degrees = faces.iter().map(|f| f.len()).collect();
    FaceDecomposition { faces, face_of, root_face, degrees }
}

/// Compressed adjacency lists (one entry per half-edge, so multi-edges repeat).
#[derive(Debug, Clone)]
pub struct Adjacency {
    pub offsets: Vec<u32>,
    pub targets: Vec<u32>,
}

impl Adjacency {
    pub fn new(map: &HalfEdgeMap) -> Self {
        let nv = map.vertex_count();
        let mut offsets = vec![0u32; nv + 1];
        for &o in map.origins() {
            offsets[o as usize + 1] += 1;
        }
        for i in 0..nv {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; map.half_edge_count()];
        for e in 0..map.half_edge_count() as u32 {
            let o = map.origin(e) as usize;
            targets[fill[o] as usize] = map.target(e);
            fill[o] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0u32; vertex_count + 1];
        for &(a, b) in edges {
            offsets[a as usize + 1] += 1;
            offsets[b as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; 2 * edges.len()];
        for &(a, b) in edges {
            targets[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
            targets[fill[b as usize] as usize] = a;
            fill[b as usize] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// Hop distance to the nearest source; `NONE` when unreachable.
    pub fn bfs(&self, sources: &[u32]) -> Result<Vec<u32>> {
        if sources.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        let mut dist = vec![NONE; self.vertex_count()];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s as usize] != 0 {
                dist[s as usize] = 0;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            let d = dist[v as usize] + 1;
            for &w in self.neighbors(v) {
                if dist[w as usize] == NONE {
                    dist[w as usize] = d;
                    q.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// BFS restricted to vertices with `allowed[v]`.
    pub fn bfs_within(&self, sources: &[u32], allowed: &[bool]) -> Vec<u32> {
        let mut dist = vec![NONE; self.vertex_count()];
        let mut q = VecDeque::new();
        for &s in sources {
            if allowed[s as usize] && dist[s as usize] != 0 {
                dist[s as usize] = 0;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            let d = dist[v as usize] + 1;
            for &w in self.neighbors(v) {
                if allowed[w as usize] && dist[w as usize] == NONE {
                    dist[w as usize] = d;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Eccentricities restricted to `targets`, computed 64 sources at a time
    /// with bit-parallel BFS. Returns max over all pairs in `targets`.
    pub fn diameter_of_subset(&self, subset: &[u32]) -> u32 {
        let nv = self.vertex_count();
        let mut is_target = vec![false; nv];
        for &t in subset {
            is_target[t as usize] = true;
        }
        let mut best = 0u32;
        let mut seen = vec![0u64; nv];
        let mut frontier = vec![0u64; nv];
        let mut nextf = vec![0u64; nv];
        for chunk in subset.chunks(64) {
            seen.iter_mut().for_each(|x| *x = 0);
            frontier.iter_mut().for_each(|x| *x = 0);
            let mut active: Vec<u32> = Vec::new();
            for (i, &s) in chunk.iter().enumerate() {
                if seen[s as usize] == 0 {
                    active.push(s);
                }
                seen[s as usize] |= 1 << i;
                frontier[s as usize] |= 1 << i;
            }
            let mut level = 0u32;
            let mut last_target_level = 0u32;
            while !active.is_empty() {
                level += 1;
                let mut next_active = Vec::new();
                for &v in &active {
                    let f = frontier[v as usize];
                    if f == 0 {
                        continue;
                    }
                    for &w in self.neighbors(v) {
                        let add = f & !seen[w as usize];
                        if add != 0 {
                            if nextf[w as usize] == 0 {
                                next_active.push(w);
                            }
                            nextf[w as usize] |= add;
                            seen[w as usize] |= add;
                        }
                    }
                }
                for &v in &active {
                    frontier[v as usize] = 0;
                }
                let mut hit = false;
                for &w in &next_active {
                    frontier[w as usize] = nextf[w as usize];
                    nextf[w as usize] = 0;
                    if is_target[w as usize] {
                        hit = true;
                    }
                }
                if hit {
                    last_target_level = level;
                }
                active = next_active;
            }
            best = best.max(last_target_level);
        }
        best
    }
}

/// Multi-source BFS distances on the map graph.
pub fn bfs_distances(map: &HalfEdgeMap, sources: &[u32]) -> Result<Vec<u32>> {
    Adjacency::new(map).bfs(sources)
}

/// Result of restricting a map to a twin-closed subset of half-edges.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub map: HalfEdgeMap,
    /// new half-edge id -> old id
    pub half_edge_old: Vec<u32>,
    /// new vertex id -> old id
    pub vertex_old: Vec<u32>,
}

/// Restriction of the rotation system to `keep` (must be closed under twin).
/// New ids follow old ids in increasing order; the result is not validated.
pub fn restrict(map: &HalfEdgeMap, keep: &[bool], root: u32) -> Restricted {
    let n = map.half_edge_count();
    let mut new_id = vec![NONE; n];
    let mut half_edge_old = Vec::new();
    for e in 0..n {
        if keep[e] {
            debug_assert!(keep[map.twin(e as u32) as usize]);
            new_id[e] = half_edge_old.len() as u32;
            half_edge_old.push(e as u32);
        }
    }
    let m = half_edge_old.len();
    let mut next = vec![NONE; m];
    let mut origin = vec![NONE; m];
    let mut vnew = vec![NONE; map.vertex_count()];
    let mut vertex_old = Vec::new();
    for i in 0..m {
        if next[i] != NONE {
            continue;
        }
        let e = half_edge_old[i];
        let v = map.origin(e) as usize;
        if vnew[v] == NONE {
            vnew[v] = vertex_old.len() as u32;
            vertex_old.push(v as u32);
        }
        let mut ring = Vec::new();
        let mut x = e;
        loop {
            if keep[x as usize] {
                ring.push(new_id[x as usize]);
            }
            x = map.next(x);
            if x == e {
                break;
            }
        }
        for j in 0..ring.len() {
            next[ring[j] as usize] = ring[(j + 1) % ring.len()];
            origin[ring[j] as usize] = vnew[v];
        }
    }
    let twin = half_edge_old.iter().map(|&e| new_id[map.twin(e) as usize]).collect();
    let root_new = if m == 0 { NONE } else { new_id[root as usize] };
    let vc = vertex_old.len().max(1) as u32;
    let mapn = HalfEdgeMap { twin, next, origin, root: root_new, vertex_count: vc };
    if m == 0 {
        vertex_old.push(map.root_vertex());
    }
    Restricted { map: mapn, half_edge_old, vertex_old }
}

#[derive(Debug, Clone)]
pub struct DecoratedBall {
    pub submap: HalfEdgeMap,
    pub radius: u32,
    /// in submap vertex ids
    pub truncated_curve: Vec<u32>,
    /// submap vertex -> parent vertex
    pub vertex_old: Vec<u32>,
}

/// Ball of radius `r` around the root vertex with the induced (internal)
/// metric, and the curve frozen outside the first exit times. `curve[start]`
/// plays the role of time 0; the part before `start` is truncated backward.
pub fn truncated_ball(map: &HalfEdgeMap, curve: &[u32], start: usize, r: u32) -> DecoratedBall {
    let adj = Adjacency::new(map);
    let root_v = map.root_vertex();
    let dist = adj.bfs(&[root_v]).expect("nonempty");
    let inside: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
    let keep: Vec<bool> = (0..map.half_edge_count() as u32)
        .map(|e| inside[map.origin(e) as usize] && inside[map.target(e) as usize])
        .collect();
    let root = if map.is_vertex_map() || !keep[map.root() as usize] {
        // root edge leaves the ball only when r = 0
        NONE
    } else {
        map.root()
    };
    let sub = if root == NONE {
        Restricted { map: HalfEdgeMap::vertex_map(), half_edge_old: vec![], vertex_old: vec![root_v] }
    } else {
        restrict(map, &keep, root)
    };
    let mut vnew = vec![NONE; map.vertex_count()];
    for (i, &v) in sub.vertex_old.iter().enumerate() {
        vnew[v as usize] = i as u32;
    }
    let truncated = if curve.is_empty() {
        vec![]
    } else {
        let from = curve[start];
        let cd = adj.bfs(&[from]).expect("nonempty");
        let mut out = curve.to_vec();
        let hi = (start + 1..curve.len()).find(|&t| cd[curve[t] as usize] >= r);
        if let Some(h) = hi {
            for t in h + 1..curve.len() {
                out[t] = curve[h];
            }
        }
        let lo = (0..start).rev().find(|&t| cd[curve[t] as usize] >= r);
        if let Some(l) = lo {
            for t in 0..l {
                out[t] = curve[l];
            }
        }
        if r == 0 {
            out.iter_mut().for_each(|x| *x = from);
        }
        out.iter().map(|&v| vnew[v as usize]).collect()
    };
    DecoratedBall { submap: sub.map, radius: r, truncated_curve: truncated, vertex_old: sub.vertex_old }
}

/// HEMAP v1 serialization with optional `marked` and `boundary` lines.
pub fn write_hemap(map: &HalfEdgeMap, marked: Option<&[u32]>, boundary: Option<&[u32]>) -> String {
    let mut s = String::from("HEMAP 1\n");
    for e in 0..map.half_edge_count() {
        let _ = writeln!(s, "{} {} {} {}", e, map.twin[e], map.next[e], map.origin[e]);
    }
    let _ = writeln!(s, "root {}", map.root);
    for (tag, list) in [("marked", marked), ("boundary", boundary)] {
        if let Some(l) = list {
            s.push_str(tag);
            for x in l {
                let _ = write!(s, " {x}");
            }
            s.push('\n');
        }
    }
    s
}

#[derive(Debug, Clone)]
pub struct HemapFile {
    pub map: HalfEdgeMap,
    pub marked: Option<Vec<u32>>,
    pub boundary: Option<Vec<u32>>,
}

pub fn read_hemap(text: &str) -> Result<HemapFile> {
    let perr = |m: &str| Error::Parse(m.to_string());
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some("HEMAP 1") {
        return Err(perr("missing HEMAP 1 header"));
    }
    let mut rows: Vec<(usize, HalfEdgeRecord)> = Vec::new();
    let mut root = None;
    let mut marked = None;
    let mut boundary = None;
    for line in lines {
        let mut it = line.split_whitespace();
        let head = it.next().unwrap_or("");
        let nums = |it: std::str::SplitWhitespace| -> Result<Vec<u32>> {
            it.map(|x| x.parse::<u32>().map_err(|_| perr(line))).collect()
        };
        match head {
            "root" => root = Some(*nums(it)?.first().ok_or_else(|| perr(line))?),
            "marked" => marked = Some(nums(it)?),
            "boundary" => boundary = Some(nums(it)?),
            _ => {
                let id: usize = head.parse().map_err(|_| perr(line))?;
                let v = nums(it)?;
                if v.len() != 3 {
                    return Err(perr(line));
                }
                rows.push((id, HalfEdgeRecord { twin: v[0], next: v[1], origin: v[2] }));
            }
        }
    }
    rows.sort_by_key(|r| r.0);
    if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
        return Err(perr("half-edge ids must be 0..n"));
    }
    let table: Vec<HalfEdgeRecord> = rows.into_iter().map(|r| r.1).collect();
    let vc = table.iter().map(|r| r.origin + 1).max().unwrap_or(1);
    let map = build_map(&table, root.ok_or_else(|| perr("missing root"))?, vc)?;
    Ok(HemapFile { map, marked, boundary })
}

/// Path graph v0 - v1 - ... - v_len as a plane tree map, rooted at v0 -> v1.
pub fn path_map(len: usize) -> HalfEdgeMap {
    assert!(len >= 1);
    // edge i: half-edges 2i (v_i -> v_{i+1}) and 2i+1 (back)
    let n = 2 * len;
    let twin: Vec<u32> = (0..n as u32).map(|e| e ^ 1).collect();
    let origin: Vec<u32> = (0..n as u32).map(|e| if e % 2 == 0 { e / 2 } else { e / 2 + 1 }).collect();
    let mut next = vec![0u32; n];
    for v in 0..=len {
        let mut ring = Vec::new();
        if v < len {
            ring.push(2 * v as u32);
        }
        if v > 0 {
            ring.push(2 * (v - 1) as u32 + 1);
        }
        for j in 0..ring.len() {
            next[ring[j] as usize] = ring[(j + 1) % ring.len()];
        }
    }
    HalfEdgeMap::from_parts(twin, next, origin, 0, len as u32 + 1)
}

/// Cycle of length `n` (n >= 1 edges; n = 1 is a loop, n = 2 a double edge).
pub fn cycle_map(n: usize) -> HalfEdgeMap {
    // edge i: 2i from v_i to v_{i+1 mod n}, 2i+1 back
    let h = 2 * n;
    let twin: Vec<u32> = (0..h as u32).map(|e| e ^ 1).collect();
    let origin: Vec<u32> =
        (0..h as u32).map(|e| if e % 2 == 0 { e / 2 } else { (e / 2 + 1) % n as u32 }).collect();
    let mut next = vec![0u32; h];
    for v in 0..n {
        let out = 2 * v as u32;
        let inc = 2 * ((v + n - 1) % n) as u32 + 1;
        next[out as usize] = inc;
        next[inc as usize] = out;
    }
    HalfEdgeMap::from_parts(twin, next, origin, 0, n as u32)
}
