use pathbench::environment::{
    generate_random_env, Environment, Query, RandomEnvParams, DEFAULT_BOUNDS,
};
use pathbench::geometry::{dist, Path, Point2, Segment};
use pathbench::pso::{decode, encode, fitness, violation};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -1e3..1e3f64
}

fn point() -> impl Strategy<Value = Point2> {
    (coord(), coord()).prop_map(|(x, y)| Point2::new(x, y))
}

proptest! {
    #[test]
    fn distance_is_symmetric(a in point(), b in point()) {
        prop_assert_eq!(dist(a, b), dist(b, a));
    }

    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        prop_assert!(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-9);
    }

    #[test]
    fn translation_invariance(a in point(), b in point(), t in point()) {
        let moved = dist(a + t, b + t);
        prop_assert!((moved - dist(a, b)).abs() <= 1e-9 * (1.0 + dist(a, b)));
    }

    #[test]
    fn decode_encode_round_trip(inner in prop::collection::vec(coord(), 1..8usize).prop_map(|v| {
        let mut v = v; if v.len() % 2 == 1 { v.push(0.0); } v
    }), s in point(), g in point()) {
        let q = Query::new(s, g);
        let path = decode(&inner, &q).unwrap();
        prop_assert_eq!(path.first(), s);
        prop_assert_eq!(path.last(), g);
        prop_assert_eq!(encode(&path), inner.clone());
        prop_assert_eq!(decode(&encode(&path), &q).unwrap(), path);
    }

    #[test]
    fn zero_penalty_fitness_is_length(inner in prop::collection::vec(-40.0..20.0f64, 10)) {
        let q = Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0));
        let env = generate_random_env(3, &RandomEnvParams::default(), &q).unwrap();
        let f = fitness(&inner, &q, &env, 0.0).unwrap();
        let len = decode(&inner, &q).unwrap().length();
        prop_assert!((f - len).abs() <= 1e-9);
    }

    #[test]
    fn path_length_equals_segment_sum(pts in prop::collection::vec(point(), 2..10)) {
        let path = Path::new(pts.clone()).unwrap();
        let sum: f64 = pts.windows(2).map(|w| dist(w[0], w[1])).sum();
        prop_assert!((path.length() - sum).abs() <= 1e-9 * (1.0 + sum));
    }

    #[test]
    fn violation_is_zero_on_free_segments(a in point(), b in point()) {
        let env = Environment::empty(pathbench::geometry::Bounds::new(-1e3, 1e3, -1e3, 1e3)).unwrap();
        prop_assert_eq!(violation(&env, &[a, b]), 0.0);
    }

    #[test]
    fn violation_never_exceeds_length(seed in 0u64..200, a in point(), b in point()) {
        let q = Query::new(Point2::new(20.0, -15.0), Point2::new(-25.0, 15.0));
        let env = generate_random_env(seed, &RandomEnvParams::default(), &q).unwrap();
        let a = DEFAULT_BOUNDS.clamp(a * 0.05);
        let b = DEFAULT_BOUNDS.clamp(b * 0.05);
        let v = violation(&env, &[a, b]);
        prop_assert!(v >= 0.0 && v <= Segment::new(a, b).length() + 1e-9);
    }
}
