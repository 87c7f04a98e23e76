use std::sync::Arc;

use num_traits::Signed;
use proptest::prelude::*;
use roundsleek::checkers::{check_round, check_sleek, replay_witness, ConvexityKind, Verdict};
use roundsleek::constructions::{bounded_transform, truncate_transform};
use roundsleek::interval_union::{decide_round_interval_union, decide_sleek_interval_union, random_interval_union};
use roundsleek::number::{int, rat};
use roundsleek::space::{compare_distances, rng_for, subspace, Euclidean};
use roundsleek::topology::{closure_contains, exterior_limit_point, Answer, BallQuery};
use roundsleek::{eval_distance, BoundedReal, Cmp3, Expr, IntervalUnion, Metric, Point, Rational, Region, ToleranceConfig};

fn union(seed: u64) -> IntervalUnion {
    random_interval_union(&mut rng_for(seed, 0), 6, 20, 4)
}

fn q(n: i64) -> Rational {
    rat(n, 16)
}

fn v(x: i64, y: i64) -> Point {
    Point::vec2(q(x), q(y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn isolated_points_spoil_both(seed in any::<u64>()) {
        let u = union(seed);
        if u.has_two_points() && u.components().iter().any(|c| c.is_singleton()) {
            prop_assert!(!decide_round_interval_union(&u));
            prop_assert!(!decide_sleek_interval_union(&u));
        }
    }

    #[test]
    fn compact_unions_are_not_sleek(seed in any::<u64>()) {
        let u = union(seed);
        if u.has_two_points() && u.is_bounded() && u.components().iter().all(|c| c.lo_closed && c.hi_closed) {
            prop_assert!(!decide_sleek_interval_union(&u));
        }
    }

    #[test]
    fn exact_witnesses_replay(seed in any::<u64>()) {
        let u = union(seed);
        let space = subspace(Euclidean::new(1), Region::intervals(u.clone())).unwrap();
        let cfg = ToleranceConfig::default();
        for (v, decided) in [(check_round(&space, &cfg), decide_round_interval_union(&u)), (check_sleek(&space, &cfg), decide_sleek_interval_union(&u))] {
            prop_assert_eq!(v.verdict == Verdict::HoldsExact, decided);
            if let Some(w) = &v.witness {
                prop_assert!(replay_witness(&space, w, &cfg));
            }
        }
    }

    #[test]
    fn definitions_survive_json(seed in any::<u64>(), lambda in 1i64..16) {
        let u = union(seed);
        let back: IntervalUnion = serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
        prop_assert_eq!(back, u.clone());
        let r = Region::Union { members: vec![Region::intervals(u), Region::FullSpace { dim: 1 }] };
        let back: Region = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
        let k = ConvexityKind::Lambda { lambda: rat(lambda, 16) };
        let back: ConvexityKind = serde_json::from_str(&serde_json::to_string(&k).unwrap()).unwrap();
        prop_assert_eq!(back, k);
    }

    /// The plane is round and sleek: closures and exterior limits behave like the closed ball.
    #[test]
    fn plane_balls(cx in -32i64..32, cy in -32i64..32, yx in -32i64..32, yy in -32i64..32) {
        let r2 = Euclidean::new(2);
        let cfg = ToleranceConfig::default();
        let (c, y) = (v(cx, cy), v(yx, yy));
        prop_assume!(c != y);
        let d = eval_distance(&*r2, &c, &y).unwrap();
        // radius equal to the distance: y sits on the sphere
        let radius = Expr::Interval(d.lo().clone(), d.hi().clone());
        let on_sphere = BallQuery::open(c.clone(), radius).unwrap();
        if d.is_exact() {
            prop_assert_eq!(closure_contains(&*r2, &on_sphere, &y, &cfg).verdict, Answer::Yes);
            prop_assert_eq!(exterior_limit_point(&*r2, &c, &y, &cfg).verdict, Answer::Yes);
        }
        let smaller = BallQuery::open(c.clone(), Expr::rat(d.lo() / int(2))).unwrap();
        prop_assert_eq!(closure_contains(&*r2, &smaller, &y, &cfg).verdict, Answer::No);
    }

    #[test]
    fn bounded_transform_keeps_order(a in -64i64..64, b in -64i64..64, c in -64i64..64) {
        let r1 = Euclidean::new(1);
        let t = bounded_transform(r1.clone());
        let (x, y, z) = (Point::Scalar(q(a)), Point::Scalar(q(b)), Point::Scalar(q(c)));
        let before = compare_distances(&*r1, &x, &y, &x, &z, 6).unwrap();
        let after = compare_distances(&*t, &x, &y, &x, &z, 6).unwrap();
        prop_assert_ne!(before, Cmp3::Unknown);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn truncation_is_a_minimum(a in -64i64..64, b in -64i64..64, r in 1i64..64) {
        let t = truncate_transform(Euclidean::new(1), q(r)).unwrap();
        let d = eval_distance(&*t, &Point::Scalar(q(a)), &Point::Scalar(q(b))).unwrap();
        let want = (q(a) - q(b)).abs().min(q(r));
        prop_assert_eq!(d, BoundedReal::exact(want));
    }
}

#[test]
fn truncated_line_is_neither_round_nor_sleek() {
    let t: Arc<dyn Metric> = truncate_transform(Euclidean::new(1), int(1)).unwrap();
    let cfg = ToleranceConfig::default();
    for v in [check_round(&*t, &cfg), check_sleek(&*t, &cfg)] {
        assert_eq!(v.verdict, Verdict::Violated);
        let w = v.witness.unwrap();
        assert_eq!(w.value, BoundedReal::exact(int(1)));
        assert!(replay_witness(&*t, &w, &cfg));
    }
}
