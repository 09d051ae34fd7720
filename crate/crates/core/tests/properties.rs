use busemann_lab::grasshopper::{grasshopper_distance, GrasshopperMode, Hops};
use busemann_lab::horo::{busemann_value, BusemannEval};
use busemann_lab::tapes::tape_position;
use busemann_lab::transfer::double_transfer;
use busemann_lab::verify::random_point;
use busemann_lab::{rat, IdealPoint, MetricTree, Point, Scalar, SpaceModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spaces() -> Vec<SpaceModel> {
    let tree = MetricTree::from_edges(4, &[(0, 1, rat(1, 2)), (1, 3, rat(1, 3)), (1, 2, rat(3, 2))], 6, &[0, 2]).unwrap();
    vec![
        SpaceModel::euclidean(3),
        SpaceModel::minkowski(1.3).unwrap(),
        SpaceModel::minkowski(4.0).unwrap(),
        SpaceModel::HyperbolicPlane,
        SpaceModel::tree(tree),
        SpaceModel::sphere(2.0, 3).unwrap(),
        SpaceModel::max_product(SpaceModel::HyperbolicPlane, SpaceModel::RealLine).unwrap(),
    ]
}

fn points(space: &SpaceModel, seed: u64, k: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| random_point(space, &mut rng).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_and_symmetry(which in 0usize..7, seed in any::<u64>()) {
        let s = &spaces()[which];
        let p = points(s, seed, 3);
        let d = |i: usize, j: usize| s.distance(&p[i], &p[j]).unwrap();
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
        prop_assert!((d(0, 1) - d(1, 0)).abs() <= 1e-12);
        prop_assert_eq!(d(0, 0), 0.0);
    }

    #[test]
    fn midpoint_halves_distance(which in 0usize..5, seed in any::<u64>()) {
        let s = &spaces()[which];
        let p = points(s, seed, 2);
        prop_assume!(s.distance(&p[0], &p[1]).unwrap() > 1e-6);
        let m = s.midpoint(&p[0], &p[1]).unwrap();
        let half = s.distance(&p[0], &p[1]).unwrap() / 2.0;
        prop_assert!((s.distance(&p[0], &m).unwrap() - half).abs() <= 1e-9);
        prop_assert!((s.distance(&m, &p[1]).unwrap() - half).abs() <= 1e-9);
    }

    #[test]
    fn geodesics_have_unit_speed(which in 0usize..5, seed in any::<u64>(), s1 in 0.0f64..1.0, s2 in 0.0f64..1.0) {
        let s = &spaces()[which];
        let p = points(s, seed, 2);
        let len = s.distance(&p[0], &p[1]).unwrap();
        prop_assume!(len > 1e-6);
        let g = s.geodesic_between(&p[0], &p[1]).unwrap();
        let (a, b) = (g.point_at(s1 * len).unwrap(), g.point_at(s2 * len).unwrap());
        prop_assert!((s.distance(&a, &b).unwrap() - (s1 - s2).abs() * len).abs() <= 1e-9);
    }

    #[test]
    fn busemann_functions_are_one_lipschitz(seed in any::<u64>(), th in 0.0f64..std::f64::consts::TAU) {
        for s in [SpaceModel::euclidean(2), SpaceModel::minkowski(3.0).unwrap(), SpaceModel::HyperbolicPlane] {
            let p = points(&s, seed, 3);
            let xi = match s {
                SpaceModel::HyperbolicPlane => IdealPoint::Boundary(th.cos() * 2.0),
                _ => IdealPoint::direction(&[th.cos(), th.sin()]).unwrap(),
            };
            let ray = s.ray_from(&p[0], &xi).unwrap();
            let (b1, b2) = (busemann_value(&s, &ray, &p[1]).unwrap(), busemann_value(&s, &ray, &p[2]).unwrap());
            prop_assert!((b1 - b2).abs().to_f64() <= s.distance(&p[1], &p[2]).unwrap() + 1e-6);
        }
    }

    #[test]
    fn truncated_limit_matches_closed_form_in_lp(seed in any::<u64>(), th in 0.0f64..std::f64::consts::TAU) {
        // p >= 2 keeps the unit circle C^2, so the limit settles quickly
        let s = SpaceModel::minkowski(3.0).unwrap();
        let p = points(&s, seed, 2);
        let ray = s.ray_from(&p[0], &IdealPoint::direction(&[th.cos(), th.sin()]).unwrap()).unwrap();
        let closed = busemann_value(&s, &ray, &p[1]).unwrap().to_f64();
        let limit = BusemannEval::default().evaluate(&s, &ray, &p[1]).unwrap().value;
        prop_assert!((closed - limit).abs() <= 1e-5, "{} vs {}", closed, limit);
    }

    #[test]
    fn parallel_double_transfer_is_identity(ox in -3.0f64..3.0, oy in -3.0f64..3.0, th in 0.0f64..std::f64::consts::TAU, t in -4.0f64..4.0) {
        let s = SpaceModel::euclidean(2);
        let (u, v) = (IdealPoint::direction(&[th.cos(), th.sin()]).unwrap(), IdealPoint::direction(&[-th.cos(), -th.sin()]).unwrap());
        let a = s.line_through(&v, &u, Some(&Point::vec2(0.0, 0.0))).unwrap();
        let b = s.line_through(&v, &u, Some(&Point::vec2(ox, oy))).unwrap();
        let x = a.point_at(t).unwrap();
        let r = double_transfer(&s, &a, &b, &x).unwrap();
        prop_assert!(r.shift.to_f64().abs() <= 1e-8);
        prop_assert!(s.distance(&r.image, &x).unwrap() <= 1e-8);
    }

    #[test]
    fn tape_positions_step_by_one(p in 2usize..12, j in 1usize..12, z in -30i64..30) {
        prop_assume!(j <= p);
        let here = tape_position(p, j, z).unwrap();
        prop_assert_eq!(tape_position(p, j, z + 1).unwrap() - here, rat(1, 1));
        prop_assert_eq!(here * rat(p as i64, 1), rat(((j - 1) * (2 * p - 1)) as i64 + z * p as i64, 1));
    }

    #[test]
    fn line_grasshopper_counts_integer_gaps(x in -50i64..50, y in -50i64..50, frac in 0.01f64..0.99) {
        let r = SpaceModel::RealLine;
        let g = |a: f64, b: f64| grasshopper_distance(&r, &Point::real(a), &Point::real(b), GrasshopperMode::Analytic, None).unwrap();
        prop_assert_eq!(g(x as f64, y as f64), Hops::Finite((x - y).unsigned_abs()));
        prop_assert_eq!(g(x as f64, y as f64 + frac), Hops::Infinite);
    }

    #[test]
    fn tree_distances_stay_on_the_lattice(seed in any::<u64>()) {
        let s = &spaces()[4];
        let p = points(s, seed, 2);
        let d = s.distance_scalar(&p[0], &p[1]).unwrap();
        let q = d.exact().expect("exact");
        prop_assert_eq!(6 % q.denom(), 0);
        prop_assert!(matches!(d, Scalar::Exact(_)));
    }
}
