use std::collections::HashMap;

use tdquad::quad::core::RejectionConfig;
use tdquad::quad::{sample_general_boundary_quad, sample_simple_boundary_quad, Enumerator};
use tdquad::rng::seeded;
use tdquad::stats::chi_square_uniform_pvalue;

fn general_pvalue(f: usize, p: usize, samples: usize, seed: u64) -> f64 {
    let mut en = Enumerator::new();
    let all = en.general(f, p).unwrap();
    let index: HashMap<Vec<u32>, usize> = all.iter().enumerate().map(|(i, m)| (m.canonical_key(), i)).collect();
    let mut counts = vec![0u64; all.len()];
    let mut rng = seeded(seed);
    for _ in 0..samples {
        let q = sample_general_boundary_quad(f, p, &mut rng).unwrap();
        counts[index[&q.map.canonical_key()]] += 1;
    }
    chi_square_uniform_pvalue(&counts)
}

#[test]
fn general_sampler_uniform_f1_p2() {
    let pv = general_pvalue(1, 2, 100_000, 11);
    assert!(pv > 0.001, "p-value {pv}");
}

#[test]
fn general_sampler_uniform_other_sizes() {
    for (f, p, seed) in [(2, 1, 1), (2, 2, 2), (1, 3, 3), (3, 2, 4), (0, 4, 5)] {
        let pv = general_pvalue(f, p, 60_000, seed);
        assert!(pv > 0.001, "f={f} p={p} p-value {pv}");
    }
}

#[test]
fn simple_sampler_uniform_exact_window() {
    for (f, l, seed) in [(2, 2, 7), (3, 2, 8), (3, 3, 9)] {
        let mut en = Enumerator::new();
        let all = en.simple(f, l).unwrap();
        let index: HashMap<Vec<u32>, usize> = all.iter().enumerate().map(|(i, m)| (m.canonical_key(), i)).collect();
        let mut counts = vec![0u64; all.len()];
        let mut rng = seeded(seed);
        let cfg = RejectionConfig { window: 0.0, max_attempts: 1_000_000, start: Some((f + 1, l + 1)) };
        for _ in 0..20_000 {
            let s = sample_simple_boundary_quad(f, l, cfg, &mut rng).unwrap();
            assert_eq!(s.realized, (f, l));
            counts[index[&s.quad.map.canonical_key()]] += 1;
        }
        let pv = chi_square_uniform_pvalue(&counts);
        assert!(pv > 0.001, "f={f} l={l} p-value {pv} counts {counts:?}");
    }
}
