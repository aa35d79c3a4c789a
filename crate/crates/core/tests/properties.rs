use proptest::prelude::*;

use tdquad::experiments::{fit_tail_exponent, tree_diameter, TailMethod};
use tdquad::gluing::{cut, glue};
use tdquad::map::{faces, read_hemap, write_hemap, Adjacency};
use tdquad::peeling::{host_from_quad, peel_to_tip};
use tdquad::quad::core::RejectionConfig;
use tdquad::quad::{explore_boundary, sample_simple_boundary_quad, SimpleBoundaryQuad};
use tdquad::rng::seeded;
use tdquad::tree::{contour_distance, contour_of, sample_uniform_tree, tree_of, PlaneTree};

fn quad(f: usize, l: usize, seed: u64) -> SimpleBoundaryQuad {
    let cfg = RejectionConfig { window: 0.4, ..Default::default() };
    sample_simple_boundary_quad(f, l, cfg, &mut seeded(seed)).unwrap().quad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn paren_and_contour_round_trip(k in 1usize..200, seed in any::<u64>()) {
        let t = sample_uniform_tree(k, &mut seeded(seed));
        prop_assert_eq!(&PlaneTree::from_paren(&t.to_paren()).unwrap(), &t);
        prop_assert_eq!(&tree_of(&contour_of(&t)).unwrap(), &t);
        prop_assert_eq!(t.contour_vertices().len(), 2 * k + 1);
    }

    #[test]
    fn contour_distance_is_a_pseudo_metric(k in 1usize..80, seed in any::<u64>(), i in 0usize..161, j in 0usize..161, m in 0usize..161) {
        let t = sample_uniform_tree(k, &mut seeded(seed));
        let c = contour_of(&t);
        let (i, j, m) = (i % (2 * k + 1), j % (2 * k + 1), m % (2 * k + 1));
        let d = |a, b| contour_distance(&c, a, b).unwrap();
        prop_assert_eq!(d(i, j), d(j, i));
        prop_assert!(d(i, j) <= d(i, m) + d(m, j));
        prop_assert_eq!(d(i, i), 0);
    }

    #[test]
    fn glue_is_a_quadrangulation_and_cut_inverts_it(f in 4usize..120, l in 2usize..14, seed in any::<u64>()) {
        let q = quad(f, l.min(f / 2 + 1), seed);
        let k = q.half_perimeter;
        let t = sample_uniform_tree(k, &mut seeded(seed ^ 1));
        let (d, cert) = glue(&q, &t).unwrap();
        prop_assert!(d.map.validate().is_ok());
        prop_assert!(faces(&d.map).degrees.iter().all(|&x| x == 4));
        prop_assert_eq!(d.map.vertex_count(), q.map.vertex_count() - (k - 1));
        prop_assert_eq!(cert.class_count, k + 1);
        let (q2, t2) = cut(&d).unwrap();
        prop_assert_eq!(q2.map, q.map.canonical());
        prop_assert_eq!(t2, t);
    }

    #[test]
    fn gluing_shortens_the_tree(f in 10usize..300, l in 2usize..20, seed in any::<u64>()) {
        let q = quad(f, l.min(f / 2 + 1), seed);
        let k = q.half_perimeter;
        let t = sample_uniform_tree(k, &mut seeded(seed ^ 2));
        let (d, _) = glue(&q, &t).unwrap();
        let tv: Vec<u32> = (0..=k as u32).collect();
        prop_assert!(Adjacency::new(&d.map).diameter_of_subset(&tv) <= tree_diameter(&t));
    }

    #[test]
    fn hemap_round_trip(f in 1usize..80, l in 1usize..10, seed in any::<u64>()) {
        let q = quad(f, l.min(f / 2 + 1), seed);
        let text = write_hemap(&q.map, None, Some(&q.boundary));
        let back = read_hemap(&text).unwrap();
        prop_assert_eq!(back.map, q.map.clone());
        prop_assert_eq!(back.boundary.unwrap(), q.boundary);
    }

    #[test]
    fn rerooting_keeps_the_map(f in 1usize..80, l in 2usize..10, seed in any::<u64>(), at in 0usize..40) {
        let q = quad(f, l.min(f / 2 + 1), seed);
        let r = q.rerooted_at(at);
        prop_assert_eq!(r.faces, q.faces);
        prop_assert_eq!(r.half_perimeter, q.half_perimeter);
        prop_assert_eq!(r.rerooted_at(2 * q.half_perimeter - at % (2 * q.half_perimeter)).map.canonical(), q.map.canonical());
    }

    #[test]
    fn exploration_accounting(f in 30usize..300, l in 4usize..20, seed in any::<u64>(), r in 0u32..5) {
        let q = quad(f, l.min(f / 3 + 2), seed);
        let h = q.half_perimeter;
        let e = explore_boundary(&q, h / 4, h / 4, r).unwrap();
        prop_assert_eq!(e.retained_inner_faces + e.leftover_area, q.faces);
        if !e.swallowed {
            prop_assert_eq!(2 * e.leftover_perimeter, e.inner_boundary + 2 * h - e.outer_boundary);
        }
    }

    #[test]
    fn tail_fit_is_scale_free(seed in any::<u64>(), scale in 0.01f64..100.0) {
        use rand::Rng;
        let mut rng = seeded(seed);
        let xs: Vec<f64> = (0..400).map(|_| (1.0 - rng.gen::<f64>()).powf(-1.0)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * scale).collect();
        let a = fit_tail_exponent(&xs, TailMethod::Hill, 10).unwrap();
        let b = fit_tail_exponent(&ys, TailMethod::Hill, 10).unwrap();
        prop_assert!((a.exponent - b.exponent).abs() < 1e-9);
        prop_assert!(a.ci_low <= a.exponent && a.exponent <= a.ci_high);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn peeling_layers_contain_balls(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let q = quad(1500, 100, seed);
        let host = host_from_quad(q, 4, &mut rng).unwrap();
        let (series, states) = peel_to_tip(&host, 0).unwrap();
        let dist = host.adjacency().bfs(&host.segment_vertices(0)).unwrap();
        for (l, st) in states.iter().enumerate() {
            for (v, &d) in dist.iter().enumerate() {
                // inside the l-ball implies explored; unexplored implies far
                prop_assert!(d as usize > l || st.filled[v]);
            }
        }
        prop_assert!(states.windows(2).all(|w| w[0].spine_reach <= w[1].spine_reach));
        prop_assert_eq!(series.layers, series.increments.len());
        prop_assert!(states.last().unwrap().done);
    }
}
