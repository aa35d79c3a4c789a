//! Plane trees, contour functions and tree samplers.
//!
//! Contour convention: the walker starts at the root, goes down the first
//! child, and visits children in their stored order. Seen as a map, child
//! lists are the counter-clockwise rotation after the parent edge, so the
//! contour is the face walk `face_next` from the root half-edge.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::map::{HalfEdgeMap, NONE};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    /// children of each vertex, in contour order; vertex 0 is the root and
    /// ids follow preorder
    children: Vec<Vec<u32>>,
    parent: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourFunction {
    pub values: Vec<u32>,
}

impl ContourFunction {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() || values[0] != 0 || *values.last().unwrap() != 0 {
            return Err(Error::InvalidDyckPath("endpoints must be 0".into()));
        }
        if values.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(Error::InvalidDyckPath("steps must be +-1".into()));
        }
        Ok(ContourFunction { values })
    }
    pub fn edge_count(&self) -> usize {
        (self.values.len() - 1) / 2
    }
    pub fn from_steps(up: &[bool]) -> Result<Self> {
        let mut v = Vec::with_capacity(up.len() + 1);
        let mut h: i64 = 0;
        v.push(0);
        for &u in up {
            h += if u { 1 } else { -1 };
            if h < 0 {
                return Err(Error::InvalidDyckPath("path goes below 0".into()));
            }
            v.push(h as u32);
        }
        ContourFunction::new(v)
    }
}

impl PlaneTree {
    pub fn single_vertex() -> Self {
        PlaneTree { children: vec![vec![]], parent: vec![NONE] }
    }
    pub fn size(&self) -> usize {
        self.children.len() - 1
    }
    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }
    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }
    pub fn parent(&self, v: u32) -> Option<u32> {
        let p = self.parent[v as usize];
        (p != NONE).then_some(p)
    }

    /// Builds a tree from up/down steps (true = up). Vertex ids follow preorder.
    pub fn from_steps(up: &[bool]) -> Result<Self> {
        let mut children = vec![vec![]];
        let mut parent = vec![NONE];
        let mut cur = 0u32;
        for &u in up {
            if u {
                let id = children.len() as u32;
                children.push(vec![]);
                parent.push(cur);
                children[cur as usize].push(id);
                cur = id;
            } else {
                if cur == 0 {
                    return Err(Error::InvalidDyckPath("path goes below 0".into()));
                }
                cur = parent[cur as usize];
            }
        }
        if cur != 0 {
            return Err(Error::InvalidDyckPath("path does not return to 0".into()));
        }
        Ok(PlaneTree { children, parent })
    }

    /// Up/down steps of the contour.
    pub fn steps(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(2 * self.size());
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, i) = stack[top];
            if i < self.children[v as usize].len() {
                stack[top].1 += 1;
                out.push(true);
                stack.push((self.children[v as usize][i], 0));
            } else {
                stack.pop();
                if !stack.is_empty() {
                    out.push(false);
                }
            }
        }
        out
    }

    /// Vertex visited at each contour time 0..=2k.
    pub fn contour_vertices(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        let mut cur = 0u32;
        let mut next_id = 1u32;
        out.push(0);
        // preorder ids make the visit sequence computable from the steps
        for u in self.steps() {
            if u {
                cur = next_id;
                next_id += 1;
            } else {
                cur = self.parent[cur as usize];
            }
            out.push(cur);
        }
        out
    }

    pub fn depths(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.vertex_count()];
        for v in 1..self.vertex_count() {
            d[v] = d[self.parent[v] as usize] + 1;
        }
        d
    }

    /// Number of edges in the subtree of each vertex.
    pub fn subtree_sizes(&self) -> Vec<u32> {
        let mut s = vec![0u32; self.vertex_count()];
        for v in (1..self.vertex_count()).rev() {
            let p = self.parent[v] as usize;
            s[p] += s[v] + 1;
        }
        s
    }

    pub fn to_paren(&self) -> String {
        self.steps().iter().map(|&u| if u { '(' } else { ')' }).collect()
    }

    pub fn from_paren(s: &str) -> Result<Self> {
        let steps: Result<Vec<bool>> = s
            .trim()
            .chars()
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                _ => Err(Error::InvalidDyckPath(format!("unexpected character {c:?}"))),
            })
            .collect();
        PlaneTree::from_steps(&steps?)
    }

    /// The tree as a planar map. Half-edges `2(v-1)` (parent -> v) and
    /// `2(v-1)+1` (v -> parent) for each non-root vertex v; root half-edge is
    /// root -> first child. Vertex ids are kept.
    pub fn to_map(&self) -> HalfEdgeMap {
        let k = self.size();
        assert!(k >= 1, "a map needs at least one edge");
        let n = 2 * k;
        let down = |v: u32| 2 * (v - 1);
        let up = |v: u32| 2 * (v - 1) + 1;
        let twin: Vec<u32> = (0..n as u32).map(|e| e ^ 1).collect();
        let mut origin = vec![0u32; n];
        let mut next = vec![0u32; n];
        for v in 1..=k as u32 {
            origin[down(v) as usize] = self.parent[v as usize];
            origin[up(v) as usize] = v;
        }
        for v in 0..=k as u32 {
            let mut ring: Vec<u32> = Vec::new();
            if v != 0 {
                ring.push(up(v));
            }
            ring.extend(self.children[v as usize].iter().map(|&c| down(c)));
            for j in 0..ring.len() {
                next[ring[j] as usize] = ring[(j + 1) % ring.len()];
            }
        }
        HalfEdgeMap::from_parts(twin, next, origin, down(1), k as u32 + 1)
    }
}

pub fn contour_of(tree: &PlaneTree) -> ContourFunction {
    let mut v = Vec::with_capacity(2 * tree.size() + 1);
    let mut h = 0u32;
    v.push(0);
    for u in tree.steps() {
        if u {
            h += 1
        } else {
            h -= 1
        }
        v.push(h);
    }
    ContourFunction { values: v }
}

pub fn tree_of(c: &ContourFunction) -> Result<PlaneTree> {
    let steps: Vec<bool> = c.values.windows(2).map(|w| w[1] > w[0]).collect();
    PlaneTree::from_steps(&steps)
}

/// `C(i) + C(j) - 2 min_{[i,j]} C`.
pub fn contour_distance(c: &ContourFunction, i: usize, j: usize) -> Result<u32> {
    let max = c.values.len() - 1;
    for x in [i, j] {
        if x > max {
            return Err(Error::IndexOutOfRange { index: x, max });
        }
    }
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    let m = *c.values[a..=b].iter().min().unwrap();
    Ok(c.values[i] + c.values[j] - 2 * m)
}

/// All plane trees with k edges, in lexicographic order of their steps.
pub fn all_trees(k: usize) -> Vec<PlaneTree> {
    fn rec(k: usize, up: usize, down: usize, cur: &mut Vec<bool>, out: &mut Vec<PlaneTree>) {
        if up == k && down == k {
            out.push(PlaneTree::from_steps(cur).unwrap());
            return;
        }
        if up < k {
            cur.push(true);
            rec(k, up + 1, down, cur, out);
            cur.pop();
        }
        if down < up {
            cur.push(false);
            rec(k, up, down + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 0, 0, &mut Vec::new(), &mut out);
    out
}

pub fn catalan(n: usize) -> BigUint {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

pub fn catalan_f64(n: usize) -> f64 {
    catalan(n).to_f64().unwrap_or(f64::INFINITY)
}

/// Uniform Dyck path with k up-steps via the cycle lemma.
pub fn uniform_dyck_steps<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<bool> {
    let mut s: Vec<bool> = (0..2 * k + 1).map(|i| i < k).collect();
    s.shuffle(rng);
    // rotate to start right after the first global minimum
    let mut h = 0i64;
    let mut best = 0i64;
    let mut at = 0usize;
    for (i, &u) in s.iter().enumerate() {
        h += if u { 1 } else { -1 };
        if h < best {
            best = h;
            at = i + 1;
        }
    }
    let len = s.len();
    s.rotate_left(at % len);
    s.pop();
    s
}

pub fn sample_uniform_tree<R: Rng + ?Sized>(k: usize, rng: &mut R) -> PlaneTree {
    PlaneTree::from_steps(&uniform_dyck_steps(k, rng)).unwrap()
}

/// Contour steps of a critical geometric GW tree: a simple random walk run
/// until it first hits -1, with the final down-step dropped. Gives up and
/// returns `None` once the walk exceeds `cap` steps.
pub fn gw_steps<R: Rng + ?Sized>(rng: &mut R, cap: Option<usize>) -> Option<Vec<bool>> {
    let mut s = Vec::new();
    let mut h = 0i64;
    loop {
        // 64 fair bits per draw
        let mut bits: u64 = rng.gen();
        for _ in 0..64 {
            let u = bits & 1 == 1;
            bits >>= 1;
            h += if u { 1 } else { -1 };
            if h < 0 {
                return Some(s);
            }
            s.push(u);
            if let Some(c) = cap {
                if s.len() > c {
                    return None;
                }
            }
        }
    }
}

pub fn sample_gw_tree<R: Rng + ?Sized>(rng: &mut R) -> PlaneTree {
    PlaneTree::from_steps(&gw_steps(rng, None).unwrap()).unwrap()
}

/// A finite tree with a distinguished spine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineTree {
    pub tree: PlaneTree,
    /// tau_0, tau_{-1}, ..., tau_{-m}
    pub spine: Vec<u32>,
    /// tau_1, ..., tau_m (bi-infinite trees only)
    pub forward_spine: Vec<u32>,
    pub depth: usize,
    /// contour time of the corner of tau_{-m} separating its two hanging
    /// trees (one-sided trees only)
    pub meeting_time: Option<usize>,
}

/// Builder that appends children in contour order while tracking preorder.
struct StepWriter {
    steps: Vec<bool>,
    next_id: u32,
}

impl StepWriter {
    fn open(&mut self) -> u32 {
        self.steps.push(true);
        let id = self.next_id;
        self.next_id += 1;
        id
    }
    fn close(&mut self) {
        self.steps.push(false);
    }
    /// Children of a hanging tree root, written in place.
    fn hang(&mut self, t: &[bool]) {
        self.steps.extend_from_slice(t);
        self.next_id += t.iter().filter(|&&u| u).count() as u32;
    }
}

/// The truncation t_inf(m): spine tau_0..tau_{-m}, each spine vertex carrying
/// a left and a right critical geometric GW tree. Trees are drawn per spine
/// vertex in order (left, right), so a larger `m` extends a smaller one under
/// the same stream. Layout at tau_{-n}, after the parent edge:
/// `[left..., tau_{-n-1}, right...]`; at the root `[tau_{-1}, right..., left...]`.
pub fn sample_infinite_tree_truncation<R: Rng + ?Sized>(m: usize, rng: &mut R) -> SpineTree {
    let hanging: Vec<(Vec<bool>, Vec<bool>)> =
        (0..=m).map(|_| (gw_steps(rng, None).unwrap(), gw_steps(rng, None).unwrap())).collect();
    infinite_tree_from_hanging(&hanging)
}

pub(crate) fn infinite_tree_from_hanging(hanging: &[(Vec<bool>, Vec<bool>)]) -> SpineTree {
    let m = hanging.len() - 1;
    assert!(m >= 1);
    let mut w = StepWriter { steps: Vec::new(), next_id: 1 };
    let mut spine = vec![0u32];
    let mut meeting = 0;
    // root: first child is tau_{-1}
    for n in 1..=m {
        let id = w.open();
        spine.push(id);
        if n < m {
            w.hang(&hanging[n].0);
        } else {
            w.hang(&hanging[n].0);
            meeting = w.steps.len();
            w.hang(&hanging[n].1);
        }
    }
    for n in (1..=m).rev() {
        w.close();
        if n > 1 {
            w.hang(&hanging[n - 1].1);
        }
    }
    w.hang(&hanging[0].1);
    w.hang(&hanging[0].0);
    let tree = PlaneTree::from_steps(&w.steps).unwrap();
    SpineTree { tree, spine, forward_spine: vec![], depth: m, meeting_time: Some(meeting) }
}

/// The truncation of the bi-infinite tree: spine tau_{-m}..tau_m, one GW tree
/// per spine vertex hung on the same side. Root children
/// `[tau_{-1}, hanging..., tau_1]`; at tau_{-n} `[tau_{-n-1}, hanging...]`,
/// at tau_n `[hanging..., tau_{n+1}]`. With m = 0 the result is the root and
/// its hanging tree.
pub fn sample_bi_infinite_tree_truncation<R: Rng + ?Sized>(m: usize, rng: &mut R) -> SpineTree {
    // order of draws: tau_0, then tau_{-1}, tau_1, tau_{-2}, tau_2, ...
    let h0 = gw_steps(rng, None).unwrap();
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for _ in 1..=m {
        neg.push(gw_steps(rng, None).unwrap());
        pos.push(gw_steps(rng, None).unwrap());
    }
    let mut w = StepWriter { steps: Vec::new(), next_id: 1 };
    let mut spine = vec![0u32];
    for n in 1..=m {
        spine.push(w.open());
        if n == m {
            w.hang(&neg[n - 1]);
        }
    }
    for n in (1..=m).rev() {
        w.close();
        if n >= 2 {
            w.hang(&neg[n - 2]);
        }
    }
    w.hang(&h0);
    let mut forward = Vec::new();
    for n in 1..=m {
        forward.push(w.open());
        w.hang(&pos[n - 1]);
    }
    for _ in 1..=m {
        w.close();
    }
    let tree = PlaneTree::from_steps(&w.steps).unwrap();
    SpineTree { tree, spine, forward_spine: forward, depth: m, meeting_time: None }
}

/// Result of the ball-growth exploration of a tree toward the vertex visited
/// at contour time k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTree {
    pub tree: PlaneTree,
    /// leaf where the unexplored subtree attaches; `None` for the whole tree
    pub marked: Option<u32>,
    /// edges of `tree`, counting the attaching edge
    pub size: usize,
    pub radius: usize,
    pub target: usize,
}

/// Explores `tree` by growing balls around the root toward the vertex
/// visited at contour time k = tree size. At radius m the retained part is
/// everything outside the subtree of the ancestor `w` of that vertex at
/// depth m + 1, plus the edge into `w` as a marked stub. Stops at the first
/// radius whose retained part has at least `j` edges.
pub fn explore_tree(tree: &PlaneTree, j: usize) -> MarkedTree {
    let k = tree.size();
    assert!(j >= 1 && j <= k);
    let cv = tree.contour_vertices();
    let target = cv[k];
    let mut anc = vec![target];
    while let Some(p) = tree.parent(*anc.last().unwrap()) {
        anc.push(p);
    }
    anc.reverse();
    let sub = tree.subtree_sizes();
    let height = anc.len() - 1;
    for m in 0.. {
        if height <= m {
            return MarkedTree { tree: tree.clone(), marked: None, size: k, radius: m, target: j };
        }
        let w = anc[m + 1];
        let r = k - sub[w as usize] as usize;
        if r >= j {
            let (t, mark) = prune_below(tree, w);
            return MarkedTree { tree: t, marked: Some(mark), size: r, radius: m, target: j };
        }
    }
    unreachable!()
}

/// Removes the strict descendants of `w`; returns the new id of `w`.
fn prune_below(tree: &PlaneTree, w: u32) -> (PlaneTree, u32) {
    let sub = tree.subtree_sizes();
    // preorder ids: the subtree of w is the id range w..=w+sub[w]
    let lo = w + 1;
    let hi = w + sub[w as usize];
    let mut steps = Vec::new();
    let cv = tree.contour_vertices();
    let st = tree.steps();
    for (i, &u) in st.iter().enumerate() {
        let a = cv[i];
        let b = cv[i + 1];
        let inside = |v: u32| v >= lo && v <= hi;
        if inside(a) || inside(b) {
            continue;
        }
        steps.push(u);
    }
    (PlaneTree::from_steps(&steps).unwrap(), w)
}

/// Inserts `sub` at the marked leaf of `t`.
pub fn complete_marked(t: &MarkedTree, sub: &PlaneTree) -> PlaneTree {
    let Some(w) = t.marked else { return t.tree.clone() };
    let cv = t.tree.contour_vertices();
    let st = t.tree.steps();
    let mut steps = Vec::new();
    for (i, &u) in st.iter().enumerate() {
        steps.push(u);
        if cv[i + 1] == w && u {
            steps.extend(sub.steps());
        }
    }
    PlaneTree::from_steps(&steps).unwrap()
}

/// Exact probability that the exploration of a uniform tree of size k
/// returns `t`: `C_{k-r} / C_k`.
pub fn exploration_probability(t: &MarkedTree, k: usize) -> Result<BigRational> {
    if t.size > k || (t.marked.is_none() && t.size != k) {
        return Err(Error::InadmissibleMarkedTree);
    }
    // any completion must explore back to t
    let filler = path_tree(k - t.size);
    let full = complete_marked(t, &filler);
    if t.target == 0 || t.target > k || explore_tree(&full, t.target) != *t {
        return Err(Error::InadmissibleMarkedTree);
    }
    Ok(BigRational::new(catalan(k - t.size).into(), catalan(k).into()))
}

pub fn path_tree(k: usize) -> PlaneTree {
    let mut s = vec![true; k];
    s.extend(std::iter::repeat_n(false, k));
    PlaneTree::from_steps(&s).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessKind {
    Excursion,
    TwoSided,
    BesselLike,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourProcess {
    /// for `TwoSided`, index n holds time 0 and index n - t holds time -t
    pub values: Vec<i64>,
    pub kind: ProcessKind,
}

/// Probability that the conditioned walk steps up from height y >= 1.
/// Height y corresponds to x = y - 1 for the walk kept off -1 by h(x) = x + 1.
pub fn bessel_up_probability(y: i64) -> f64 {
    let x = (y - 1) as f64;
    (x + 2.0) / (2.0 * (x + 1.0))
}

pub fn sample_contour_process<R: Rng + ?Sized>(kind: ProcessKind, n: usize, rng: &mut R) -> ContourProcess {
    let values = match kind {
        ProcessKind::Excursion => {
            let mut v = vec![0i64];
            let mut h = 0;
            for u in uniform_dyck_steps(n, rng) {
                h += if u { 1 } else { -1 };
                v.push(h);
            }
            v
        }
        ProcessKind::TwoSided => {
            let walk = |rng: &mut R| {
                let mut v = vec![0i64];
                let mut h = 0;
                for _ in 0..n {
                    h += if rng.gen::<bool>() { 1 } else { -1 };
                    v.push(h);
                }
                v
            };
            let fwd = walk(rng);
            let bwd = walk(rng);
            let mut v: Vec<i64> = bwd[1..].iter().rev().copied().collect();
            v.extend(fwd);
            v
        }
        ProcessKind::BesselLike => {
            let mut v = vec![0i64, 1];
            let mut y = 1i64;
            for _ in 1..n {
                y += if rng.gen::<f64>() < bessel_up_probability(y) { 1 } else { -1 };
                v.push(y);
            }
            v.truncate(n + 1);
            v
        }
    };
    ContourProcess { values, kind }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{bfs_distances, faces};
    use crate::rng::seeded;
    use std::collections::HashMap;

    #[test]
    fn cherry_contour() {
        let t = PlaneTree::from_paren("()()").unwrap();
        assert_eq!(contour_of(&t).values, vec![0, 1, 0, 1, 0]);
        let c = ContourFunction::new(vec![0, 1, 2, 1, 0]).unwrap();
        assert_eq!(tree_of(&c).unwrap(), path_tree(2));
    }

    #[test]
    fn contour_round_trip_exhaustive() {
        for k in 0..=6 {
            let all = all_trees(k);
            assert_eq!(all.len(), catalan_f64(k) as usize);
            for t in &all {
                assert_eq!(&tree_of(&contour_of(t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn contour_distance_small() {
        let c = ContourFunction::new(vec![0, 1, 0, 1, 0]).unwrap();
        assert_eq!(contour_distance(&c, 1, 3).unwrap(), 2);
        assert_eq!(contour_distance(&c, 2, 2).unwrap(), 0);
        assert!(contour_distance(&c, 0, 5).is_err());
    }

    #[test]
    fn invalid_dyck() {
        assert!(ContourFunction::new(vec![0, 1, 1, 0]).is_err());
        assert!(PlaneTree::from_paren(")(").is_err());
        assert!(PlaneTree::from_paren("((").is_err());
    }

    #[test]
    fn tree_map_is_one_face() {
        let mut rng = seeded(3);
        for k in [1, 2, 7, 40] {
            let t = sample_uniform_tree(k, &mut rng);
            let m = t.to_map();
            let f = faces(&m);
            assert_eq!(f.degrees, vec![2 * k]);
            // contour is the face walk from the root half-edge
            let cv = t.contour_vertices();
            let mut e = m.root();
            for i in 0..2 * k {
                assert_eq!(m.origin(e), cv[i]);
                e = m.face_next(e);
            }
            let d = bfs_distances(&m, &[0]).unwrap();
            assert_eq!(d, t.depths());
        }
    }

    #[test]
    fn catalan_values() {
        let v: Vec<f64> = (0..8).map(catalan_f64).collect();
        assert_eq!(v, vec![1., 1., 2., 5., 14., 42., 132., 429.]);
    }

    #[test]
    fn uniform_tree_k1_and_k4_support() {
        let mut rng = seeded(1);
        assert_eq!(sample_uniform_tree(1, &mut rng).to_paren(), "()");
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            seen.insert(sample_uniform_tree(4, &mut rng).to_paren());
        }
        assert_eq!(seen.len(), 14);
    }

    #[test]
    fn infinite_tree_layout() {
        let mut rng = seeded(5);
        let s = sample_infinite_tree_truncation(1, &mut rng);
        assert_eq!(s.spine.len(), 2);
        assert_eq!(s.tree.children(0)[0], s.spine[1]);
        let mt = s.meeting_time.unwrap();
        assert_eq!(s.tree.contour_vertices()[mt], s.spine[1]);
    }

    #[test]
    fn infinite_tree_prefix_coupling() {
        let a = sample_infinite_tree_truncation(3, &mut seeded(9));
        let b = sample_infinite_tree_truncation(5, &mut seeded(9));
        // the first hanging trees coincide: the root's last child block
        // (its left tree) is the same in both
        let ca = a.tree.children(0);
        let cb = b.tree.children(0);
        assert_eq!(ca.len(), cb.len());
        assert_eq!(b.spine.len(), 6);
    }

    #[test]
    fn bi_infinite_layout() {
        let mut rng = seeded(2);
        let s = sample_bi_infinite_tree_truncation(0, &mut rng);
        assert_eq!(s.spine, vec![0]);
        assert!(s.forward_spine.is_empty());
        let s = sample_bi_infinite_tree_truncation(3, &mut rng);
        let d = s.tree.depths();
        for (i, &v) in s.spine.iter().enumerate() {
            assert_eq!(d[v as usize] as usize, i);
        }
        for (i, &v) in s.forward_spine.iter().enumerate() {
            assert_eq!(d[v as usize] as usize, i + 1);
        }
        assert_eq!(s.tree.children(0)[0], s.spine[1]);
        assert_eq!(*s.tree.children(0).last().unwrap(), s.forward_spine[0]);
    }

    #[test]
    fn explore_path_tree() {
        let t = path_tree(4);
        let e = explore_tree(&t, 1);
        assert_eq!(e.size, 1);
        assert_eq!(e.radius, 0);
        assert_eq!(e.tree.to_paren(), "()");
        assert_eq!(e.marked, Some(1));
        let w = explore_tree(&t, 4);
        assert_eq!(w.tree, t);
        assert_eq!(w.size, 4);
    }

    #[test]
    fn exploration_probability_values() {
        // a size-3 tree whose exploration retains 2 edges
        let mut found = false;
        for t in all_trees(3) {
            let e = explore_tree(&t, 2);
            if e.size == 2 {
                let p = exploration_probability(&e, 3).unwrap();
                assert_eq!(p, BigRational::new(1.into(), 5.into()));
                found = true;
            }
        }
        assert!(found);
        let whole = explore_tree(&path_tree(3), 3);
        assert_eq!(
            exploration_probability(&whole, 3).unwrap(),
            BigRational::new(1.into(), 5.into())
        );
    }

    #[test]
    fn exploration_probabilities_sum_to_one() {
        for k in 1..=6 {
            for j in 1..=k {
                let mut outcomes: HashMap<(String, Option<u32>, usize), MarkedTree> = HashMap::new();
                for t in all_trees(k) {
                    let e = explore_tree(&t, j);
                    outcomes.insert((e.tree.to_paren(), e.marked, e.radius), e);
                }
                let mut s = BigRational::from_integer(0.into());
                for e in outcomes.values() {
                    s += exploration_probability(e, k).unwrap();
                }
                assert_eq!(s, BigRational::one(), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn inadmissible_rejected() {
        let t = path_tree(4);
        let mut e = explore_tree(&t, 1);
        e.target = 3;
        assert_eq!(exploration_probability(&e, 4), Err(Error::InadmissibleMarkedTree));
    }

    #[test]
    fn bessel_path_weights_are_h_ratios() {
        // every path of length n from height 1 has probability
        // 2^{-n} h(end) / h(start) with h(y) = y
        for n in 1..=10usize {
            let mut total = 0.0;
            for mask in 0u32..(1 << n) {
                let mut y = 1i64;
                let mut p = 1.0;
                let mut ok = true;
                for i in 0..n {
                    let up = mask >> i & 1 == 1;
                    let q = bessel_up_probability(y);
                    p *= if up { q } else { 1.0 - q };
                    y += if up { 1 } else { -1 };
                    if y < 1 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    let expect = 0.5f64.powi(n as i32) * y as f64;
                    assert!((p - expect).abs() < 1e-12);
                    total += p;
                } else {
                    assert!(p.abs() < 1e-12);
                }
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn processes_shapes() {
        let mut rng = seeded(4);
        let e = sample_contour_process(ProcessKind::Excursion, 50, &mut rng);
        assert_eq!(e.values.len(), 101);
        assert_eq!(*e.values.last().unwrap(), 0);
        assert!(e.values.iter().all(|&v| v >= 0));
        let t = sample_contour_process(ProcessKind::TwoSided, 30, &mut rng);
        assert_eq!(t.values.len(), 61);
        assert_eq!(t.values[30], 0);
        let b = sample_contour_process(ProcessKind::BesselLike, 40, &mut rng);
        assert_eq!(b.values.len(), 41);
        assert_eq!(b.values[0], 0);
        assert!(b.values[1..].iter().all(|&v| v > 0));
    }
}
