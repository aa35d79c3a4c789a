//! Quadrangulations with a boundary: samplers, enumeration, simple cores and
//! the boundary exploration.

pub mod core;
pub mod enumerate;
pub mod explore;
pub mod mobile;

use crate::map::{faces, HalfEdgeMap};

pub use self::core::{extract_simple_core, sample_simple_boundary_quad, CoreDecomposition, SimpleSample};
pub use enumerate::{has_simple_boundary, Enumerator};
pub use explore::{explore_boundary, BoundaryExploration};
pub use mobile::sample_general_boundary_quad;

/// Quadrangulation whose root face has degree 2p and whose other f faces
/// are quadrangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBoundaryQuad {
    pub map: HalfEdgeMap,
    /// inner boundary half-edges a_0 = root, a_1, ..., a_{2p-1}; `a_i` goes
    /// from boundary position i to i+1 and `twin(a_i)` lies in the root face
    pub boundary: Vec<u32>,
    pub faces: usize,
    pub half_perimeter: usize,
}

/// Quadrangulation with a simple boundary of length 2l. Boundary position i
/// is the origin of `boundary[i]`; positions increase counter-clockwise
/// around the inner side, so the root face lists them in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleBoundaryQuad {
    pub map: HalfEdgeMap,
    pub boundary: Vec<u32>,
    pub faces: usize,
    pub half_perimeter: usize,
}

/// Inner boundary half-edges starting at the root: a_{i+1} is the twin of
/// the root-face predecessor of twin(a_i).
pub fn boundary_half_edges(map: &HalfEdgeMap) -> Vec<u32> {
    let o0 = map.twin(map.root());
    let mut cyc = map.face_cycle(o0);
    // cyc = o_0, o_{2p-1}, ..., o_1
    cyc[1..].reverse();
    cyc.into_iter().map(|o| map.twin(o)).collect()
}

impl GeneralBoundaryQuad {
    pub fn from_map(map: HalfEdgeMap) -> Self {
        let boundary = boundary_half_edges(&map);
        let p = boundary.len() / 2;
        let f = map.face_count() - 1;
        GeneralBoundaryQuad { map, boundary, faces: f, half_perimeter: p }
    }

    pub fn is_simple(&self) -> bool {
        has_simple_boundary(&self.map)
    }

    /// Checks face degrees and the vertex count V = f + p + 1.
    pub fn check(&self) -> bool {
        let fd = faces(&self.map);
        fd.degrees
            .iter()
            .enumerate()
            .all(|(i, &d)| d == if i == fd.root_face { 2 * self.half_perimeter } else { 4 })
            && self.map.vertex_count() == self.faces + self.half_perimeter + 1
    }
}

impl SimpleBoundaryQuad {
    /// Wraps a map whose root face is simple.
    pub fn from_map(map: HalfEdgeMap) -> Option<Self> {
        if !has_simple_boundary(&map) {
            return None;
        }
        let g = GeneralBoundaryQuad::from_map(map);
        Some(SimpleBoundaryQuad { map: g.map, boundary: g.boundary, faces: g.faces, half_perimeter: g.half_perimeter })
    }

    /// Vertex at boundary position i (taken mod 2l).
    pub fn boundary_vertex(&self, i: i64) -> u32 {
        let n = self.boundary.len() as i64;
        self.map.origin(self.boundary[i.rem_euclid(n) as usize])
    }

    pub fn as_general(&self) -> GeneralBoundaryQuad {
        GeneralBoundaryQuad {
            map: self.map.clone(),
            boundary: self.boundary.clone(),
            faces: self.faces,
            half_perimeter: self.half_perimeter,
        }
    }

    /// The same quadrangulation rooted at boundary position i.
    pub fn rerooted_at(&self, i: usize) -> SimpleBoundaryQuad {
        SimpleBoundaryQuad::from_map(self.map.rerooted(self.boundary[i % self.boundary.len()])).unwrap()
    }
}

fn log_factorial(n: u64) -> f64 {
    statrs::function::factorial::ln_factorial(n)
}

/// Exact number of rooted quadrangulations with general boundary 2p and f
/// inner faces: 3^f (2p)!/(p!(p-1)!) (2f+p-1)!/(f!(f+p+1)!).
pub fn general_count_formula(f: usize, p: usize) -> u128 {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    let fact = |n: usize| (1..=n).fold(BigUint::from(1u32), |a, i| a * BigUint::from(i));
    if p == 0 {
        return (f == 0) as u128;
    }
    let num = BigUint::from(3u32).pow(f as u32) * fact(2 * p) * fact(2 * f + p - 1);
    let den = fact(p) * fact(p - 1) * fact(f) * fact(f + p + 1);
    (num / den).to_u128().unwrap()
}

/// Logarithm of the general-boundary count, for large arguments.
pub fn log_general_count(f: usize, p: usize) -> f64 {
    let (f, p) = (f as u64, p as u64);
    f as f64 * 3f64.ln() + log_factorial(2 * p) - log_factorial(p) - log_factorial(p - 1)
        + log_factorial(2 * f + p - 1)
        - log_factorial(f)
        - log_factorial(f + p + 1)
}

/// Natural log of sqrt(3)/(2 pi) 12^f (9/2)^l f^{-5/2} l^{1/2} exp(-9 l^2 / 4f),
/// the asymptotic count of simple-boundary quadrangulations. Real arguments
/// are accepted.
pub fn log_q_asymptotic(f: f64, l: f64) -> f64 {
    (3f64.sqrt() / (2.0 * std::f64::consts::PI)).ln() + f * 12f64.ln() + l * 4.5f64.ln() - 2.5 * f.ln()
        + 0.5 * l.ln()
        - 9.0 * l * l / (4.0 * f)
}

pub fn q_asymptotic(f: f64, l: f64) -> f64 {
    log_q_asymptotic(f, l).exp()
}
