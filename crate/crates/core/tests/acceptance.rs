//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL
//! line; the process exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::Command;

use busemann_lab::counterexamples::{counterexample, sphere_flip_case, three_edge_point_set, COUNTEREXAMPLES};
use busemann_lab::grasshopper::{
    euclidean_jump_path, grasshopper_distance, tree_swap_bijection, GrasshopperMode, Hops, UnitJumpGraph,
};
use busemann_lab::horo::{
    check_busemann_sum_bound, check_shadow_semicontinuity, ray_pseudodistance, tits_delta, BusemannEval, RayPair,
    ShadowCheck,
};
use busemann_lab::suite::{catalog, euclidean_scissors, tree_scissors};
use busemann_lab::tapes::{build_p_tape, check_third_division, validate_p_tape};
use busemann_lab::transfer::{
    double_transfer, scissors_shift, scissors_shift_by_formula, validate_scissors, ScissorsConfig,
};
use busemann_lab::verify::{
    check_busemann_midpoints, check_busemann_on_sample, check_metric_axioms, is_isometry, preserves_unit_distance,
    tree_lattice, SampleSet, UnitMode,
};
use busemann_lab::{rat, GeodesicRef, IdealPoint, MetricTree, MidpointSelector, Point, Rational, Scalar, SpaceModel, TreePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(r: impl std::fmt::Debug) -> String {
    format!("{r:?}")
}

fn dir(x: f64, y: f64) -> IdealPoint {
    IdealPoint::direction(&[x, y]).unwrap()
}

fn coords(p: &Point) -> (f64, f64) {
    match p {
        Point::Vector(v) => (v[0], v[1]),
        Point::Half { x, y } => (*x, *y),
        _ => panic!("not planar: {p:?}"),
    }
}

fn branching_tree() -> MetricTree {
    MetricTree::from_edges(4, &[(0, 1, rat(1, 2)), (1, 3, rat(1, 2)), (1, 2, rat(3, 2))], 2, &[0, 3, 2]).unwrap()
}

fn metric_axioms() -> Outcome {
    let mut lines = 0;
    for (i, space) in catalog().iter().enumerate() {
        let sample = SampleSet::random(space, 600, 1000 + i as u64).map_err(e)?;
        let rep = check_metric_axioms(space, &sample);
        ensure!(rep.passed(), "{} failed: {:?}", space.name(), rep.witnesses.first());
        ensure!(rep.tolerance <= 1e-9, "slack {} too loose", rep.tolerance);
        // independent recomputation from raw coordinates where available
        for t in sample.points.chunks_exact(3) {
            if let SpaceModel::Euclidean { .. } = space {
                let d = |a: &Point, b: &Point| {
                    let (Point::Vector(u), Point::Vector(v)) = (a, b) else { unreachable!() };
                    u.iter().zip(v).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
                };
                for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                    let ours = d(&t[a], &t[b]);
                    let lib = space.distance(&t[a], &t[b]).map_err(e)?;
                    ensure!((ours - lib).abs() <= 1e-12, "distance oracle mismatch {ours} vs {lib}");
                }
                ensure!(d(&t[0], &t[2]) <= d(&t[0], &t[1]) + d(&t[1], &t[2]) + 1e-9, "triangle");
            }
            if let SpaceModel::MetricTree { .. } = space {
                let q = |a: usize, b: usize| -> Result<Rational, String> {
                    space.exact_distance(&t[a], &t[b]).map_err(e)?.ok_or_else(|| "tree distance not exact".to_string())
                };
                ensure!(q(0, 2)? <= q(0, 1)? + q(1, 2)?, "exact tree triangle inequality");
                ensure!(q(0, 1)? == q(1, 0)?, "exact symmetry");
            }
        }
        lines += 1;
    }
    Ok(format!("{lines} spaces x 200 triples"))
}

fn busemann_inequality() -> Outcome {
    let spaces = [
        SpaceModel::euclidean(2),
        SpaceModel::minkowski(1.5).unwrap(),
        SpaceModel::minkowski(2.0).unwrap(),
        SpaceModel::minkowski(3.0).unwrap(),
        SpaceModel::HyperbolicPlane,
        SpaceModel::tree(branching_tree()),
    ];
    for (i, s) in spaces.iter().enumerate() {
        let sample = SampleSet::random(s, 600, 2000 + i as u64).map_err(e)?;
        let rep = check_busemann_on_sample(s, &sample);
        ensure!(rep.passed() && rep.checked > 0, "{}: {:?}", s.name(), rep.witnesses.first());
    }
    let linf = SpaceModel::MinkowskiLinf;
    let (x, y, z) = (Point::vec2(0.0, 0.0), Point::vec2(2.0, 0.0), Point::vec2(2.0, 2.0));
    let m = linf.midpoint_with(&x, &y, MidpointSelector::LowerExtreme).map_err(e)?;
    let n = linf.midpoint_with(&x, &z, MidpointSelector::UpperExtreme).map_err(e)?;
    ensure!(coords(&m) == (1.0, -1.0) && coords(&n) == (1.0, 1.0), "midpoints {m:?} {n:?}");
    // sup norm by hand
    let mn = (coords(&m).0 - coords(&n).0).abs().max((coords(&m).1 - coords(&n).1).abs());
    let yz = (coords(&y).0 - coords(&z).0).abs().max((coords(&y).1 - coords(&z).1).abs());
    ensure!(mn == 2.0 && yz / 2.0 == 1.0, "mn = {mn}, |yz|/2 = {}", yz / 2.0);
    let rep = check_busemann_midpoints(&linf, &x, &y, &z, (MidpointSelector::LowerExtreme, MidpointSelector::UpperExtreme))
        .map_err(e)?;
    ensure!(!rep.passed(), "sup-norm witness was not flagged");
    ensure!(rep.witnesses[0].values.get("mn") == Some(&2.0), "witness {:?}", rep.witnesses[0]);
    Ok("6 Busemann spaces pass; sup-norm witness |mn| = 2 > 1".into())
}

fn busemann_oracles() -> Outcome {
    let eval = BusemannEval::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e2 = SpaceModel::euclidean(2);
    for _ in 0..50 {
        let o = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let th: f64 = rng.gen_range(0.0..2.0 * PI);
        let u = (th.cos(), th.sin());
        let y = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let ray = e2.ray_from(&Point::vec2(o.0, o.1), &dir(u.0, u.1)).map_err(e)?;
        let got = eval.evaluate(&e2, &ray, &Point::vec2(y.0, y.1)).map_err(e)?.value;
        let want = -((y.0 - o.0) * u.0 + (y.1 - o.1) * u.1);
        ensure!((got - want).abs() <= 1e-6, "euclidean {got} vs {want}");
    }
    let h = SpaceModel::HyperbolicPlane;
    for _ in 0..50 {
        let o = (rng.gen_range(-3.0..3.0), rng.gen_range(0.2..5.0));
        let y = (rng.gen_range(-3.0..3.0), rng.gen_range(0.2..5.0));
        let ray = h.ray_from(&Point::half(o.0, o.1), &IdealPoint::Infinity).map_err(e)?;
        let got = eval.evaluate(&h, &ray, &Point::half(y.0, y.1)).map_err(e)?.value;
        let want = -(y.1.ln()) + o.1.ln();
        ensure!((got - want).abs() <= 1e-6, "hyperbolic {got} vs {want}");
    }
    // tree: once past the branch vertex the normalised distance is constant
    let tree = branching_tree();
    let t = SpaceModel::tree(tree.clone());
    let lattice: Vec<Point> = tree_lattice(&tree).into_iter().map(Point::Tree).collect();
    let mut pairs = 0;
    for o in &lattice {
        for end in 0..tree.end_count() {
            let ray = t.ray_from(o, &IdealPoint::TreeEnd(end)).map_err(e)?;
            for y in &lattice {
                let far = Scalar::Exact(rat(40, 1));
                let p = ray.point_at_scalar(far).map_err(e)?;
                let want = t.exact_distance(y, &p).map_err(e)?.unwrap() - rat(40, 1);
                let got = eval.evaluate(&t, &ray, y).map_err(e)?.value;
                ensure!(got == *want.numer() as f64 / *want.denom() as f64, "tree {got} vs {want}");
                pairs += 1;
            }
        }
    }
    Ok(format!("50 euclidean, 50 hyperbolic within 1e-6; {pairs} tree pairs exact"))
}

fn sum_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    let e2 = SpaceModel::euclidean(2);
    for _ in 0..40 {
        let th: f64 = rng.gen_range(0.0..2.0 * PI);
        let u = (th.cos(), th.sin());
        let (c0, d0) = ((rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)), (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        let c = e2.ray_from(&Point::vec2(c0.0, c0.1), &dir(u.0, u.1)).map_err(e)?;
        let d = e2.ray_from(&Point::vec2(d0.0, d0.1), &dir(u.0, u.1)).map_err(e)?;
        let pair = RayPair::new(&e2, c, d).map_err(e)?;
        let rep = check_busemann_sum_bound(&e2, &pair).map_err(e)?;
        ensure!(rep.passed(), "euclidean {:?}", rep.witnesses);
        // parallel rays: the sum vanishes, rho is the perpendicular offset
        let w = (d0.0 - c0.0, d0.1 - c0.1);
        let along = w.0 * u.0 + w.1 * u.1;
        let perp = ((w.0 - along * u.0).powi(2) + (w.1 - along * u.1).powi(2)).sqrt();
        let rho = ray_pseudodistance(&e2, &pair, 20).map_err(e)?.to_f64();
        ensure!((rho - perp).abs() <= 1e-6, "rho {rho} vs {perp}");
        count += 1;
    }
    let h = SpaceModel::HyperbolicPlane;
    for k in 0..40 {
        let xi = if k % 2 == 0 { IdealPoint::Infinity } else { IdealPoint::Boundary(rng.gen_range(-2.0..2.0)) };
        let mut pt = || Point::half(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0));
        let (c, d) = (h.ray_from(&pt(), &xi).map_err(e)?, h.ray_from(&pt(), &xi).map_err(e)?);
        let pair = RayPair::new(&h, c, d).map_err(e)?;
        let rep = check_busemann_sum_bound(&h, &pair).map_err(e)?;
        ensure!(rep.passed(), "hyperbolic {:?}", rep.witnesses);
        let sum = rep.metric("sum").unwrap();
        ensure!(sum.abs() <= 1e-6, "hyperbolic sum should vanish, got {sum}");
        count += 1;
    }
    let tree = branching_tree();
    let t = SpaceModel::tree(tree.clone());
    let lattice = tree_lattice(&tree);
    for end in 0..tree.end_count() {
        for p in &lattice {
            for q in lattice.iter().step_by(3) {
                let xi = IdealPoint::TreeEnd(end);
                let c = t.ray_from(&Point::Tree(*p), &xi).map_err(e)?;
                let d = t.ray_from(&Point::Tree(*q), &xi).map_err(e)?;
                let pair = RayPair::new(&t, c, d).map_err(e)?;
                let rep = check_busemann_sum_bound(&t, &pair).map_err(e)?;
                ensure!(rep.passed(), "tree {:?}", rep.witnesses);
                count += 1;
            }
        }
    }
    ensure!(count >= 100, "only {count} pairs");
    Ok(format!("{count} asymptotic pairs"))
}

/// Busemann function of the boundary point `s`, vanishing at `base`.
fn beta_boundary(s: f64, base: (f64, f64), z: (f64, f64)) -> f64 {
    let f = |(x, y): (f64, f64)| (((x - s).powi(2) + y * y) / y).ln();
    f(z) - f(base)
}

fn scissors() -> Outcome {
    let (es, ec) = euclidean_scissors().map_err(e)?;
    let sh = scissors_shift(&es, &ec).map_err(e)?;
    ensure!(validate_scissors(&es, &ec).metric("degenerate") == Some(1.0), "euclidean scissors not degenerate");
    ensure!(sh.by_composition.to_f64().abs() <= 1e-6 && sh.by_formula.to_f64().abs() <= 1e-6, "euclidean {sh:?}");

    let (ts, tc) = tree_scissors().map_err(e)?;
    let sh = scissors_shift(&ts, &tc).map_err(e)?;
    ensure!(sh.by_composition.is_exact() && sh.by_composition.is_zero(), "tree composition {sh:?}");
    ensure!(sh.by_formula.is_exact() && sh.by_formula.is_zero(), "tree formula {sh:?}");

    let h = SpaceModel::HyperbolicPlane;
    let hc = ScissorsConfig::hyperbolic(-1.0, 1.0, -2.0, 2.0).map_err(e)?;
    ensure!(validate_scissors(&h, &hc).passed(), "incidence");
    // b runs -1 -> 2, c runs -2 -> 1; both have radius 3/2 and meet at (0, sqrt 2)
    let x = (0.0, 2f64.sqrt());
    ensure!((coords(&hc.x).0 - x.0).abs() < 1e-12 && (coords(&hc.x).1 - x.1).abs() < 1e-12, "centre {:?}", hc.x);
    let oracle = beta_boundary(-1.0, (0.0, 1.0), x)
        + beta_boundary(1.0, (0.0, 1.0), x)
        + beta_boundary(-2.0, (0.0, 2.0), x)
        + beta_boundary(2.0, (0.0, 2.0), x);
    let sh = scissors_shift(&h, &hc).map_err(e)?;
    let (c, f) = (sh.by_composition.to_f64(), sh.by_formula.to_f64());
    ensure!((c - f).abs() <= 1e-6, "composition {c} vs formula {f}");
    ensure!((f - oracle).abs() <= 1e-9, "formula {f} vs oracle {oracle}");
    ensure!(c > 0.01 && f > 0.01, "hyperbolic values too small: {c}, {f}");
    for (p, q) in [(0.5, 0.0), (-1.0, 0.3), (2.0, -1.5)] {
        let v = scissors_shift_by_formula(&h, &hc, Scalar::Float(p), Scalar::Float(q)).map_err(e)?.to_f64();
        ensure!((v - f).abs() <= 1e-8, "normalisation ({p}, {q}) moved {f} to {v}");
    }
    Ok(format!("hyperbolic delta T = {f:.9} (oracle {oracle:.9})"))
}

fn double_transfers() -> Outcome {
    let mut cases: Vec<(SpaceModel, GeodesicRef, GeodesicRef, Scalar)> = Vec::new();
    let e2 = SpaceModel::euclidean(2);
    for (u, p, q) in [((1.0, 0.0), (0.0, 0.0), (5.0, 2.0)), ((0.6, 0.8), (1.0, -1.0), (-2.0, 3.0))] {
        let a = e2.line_through(&dir(-u.0, -u.1), &dir(u.0, u.1), Some(&Point::vec2(p.0, p.1))).map_err(e)?;
        let b = e2.line_through(&dir(-u.0, -u.1), &dir(u.0, u.1), Some(&Point::vec2(q.0, q.1))).map_err(e)?;
        for s in [-2.0, 0.0, 1.5] {
            cases.push((e2.clone(), a.clone(), b.clone(), Scalar::Float(s)));
        }
    }
    let t = SpaceModel::tree(branching_tree());
    let a = t.line_through(&IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), None).map_err(e)?;
    let b = t.line_through(&IdealPoint::TreeEnd(2), &IdealPoint::TreeEnd(1), None).map_err(e)?;
    for k in [0, 1, 3, 7] {
        cases.push((t.clone(), a.clone(), b.clone(), Scalar::Exact(rat(k, 4))));
    }
    let h = SpaceModel::HyperbolicPlane;
    for (a0, b0, xi) in [
        (IdealPoint::Boundary(0.0), IdealPoint::Boundary(3.0), IdealPoint::Infinity),
        (IdealPoint::Boundary(-1.0), IdealPoint::Boundary(2.5), IdealPoint::Boundary(1.0)),
    ] {
        let a = h.line_through(&a0, &xi, None).map_err(e)?;
        let b = h.line_through(&b0, &xi, None).map_err(e)?;
        for s in [-1.0, 0.0, 0.7] {
            cases.push((h.clone(), a.clone(), b.clone(), Scalar::Float(s)));
        }
    }
    let n = cases.len();
    for (space, a, b, s) in cases {
        let x = a.point_at_scalar(s).map_err(e)?;
        let r = double_transfer(&space, &a, &b, &x).map_err(e)?;
        let shift = r.shift.to_f64();
        ensure!(shift >= -1e-8, "negative shift {shift} in {}", space.name());
        ensure!(shift.abs() <= 1e-8, "nonzero shift {shift} in {}", space.name());
        ensure!(space.distance(&r.image, &x).map_err(e)? <= 1e-8, "image moved in {}", space.name());
        if space.as_tree().is_some() {
            ensure!(r.shift.is_exact() && r.shift.is_zero(), "tree shift not exactly 0");
        }
    }
    Ok(format!("{n} asymptotic pairs, shift 0"))
}

fn tapes() -> Outcome {
    let p = 6usize;
    // the sup norm threshold depends on the norm: h = 0.6 for l2, 0.8 for l3
    for (space, h) in [(SpaceModel::euclidean(2), 0.6), (SpaceModel::minkowski(3.0).unwrap(), 0.8)] {
        let a = space.line_through(&dir(-1.0, 0.0), &dir(1.0, 0.0), Some(&Point::vec2(0.0, 0.0))).map_err(e)?;
        let tape = build_p_tape(&space, &a, p, 1.0, h).map_err(e)?;
        let rep = validate_p_tape(&tape).map_err(e)?;
        ensure!(rep.passed(), "{} tape invalid: {:?}", space.name(), rep.witnesses.first());
        for j in 1..=p {
            for z in tape.z_min..=tape.z_max {
                let want = (j as f64 - 1.0) * (2.0 * p as f64 - 1.0) / p as f64 + z as f64;
                let (x, y) = coords(tape.get(1, j, z).map_err(e)?);
                ensure!((x - want).abs() <= 1e-9 && y.abs() <= 1e-9, "x[1,{j},{z}] = ({x}, {y}), want {want}");
            }
        }
    }
    let e2 = SpaceModel::euclidean(2);
    for p in [2usize, 3, 5] {
        let forced: Vec<Vec<Point>> = (0..4).map(|i| vec![Point::vec2(i as f64, 0.0); p]).collect();
        let r = check_third_division(&e2, &forced).map_err(e)?;
        ensure!(r.relations_hold && r.collapsed, "forced p={p} not collapsed");
        let mut bent = forced.clone();
        bent[1][p - 1] = Point::vec2(1.0, 0.25);
        let r = check_third_division(&e2, &bent).map_err(e)?;
        ensure!(!r.relations_hold && !r.report.passed(), "perturbed p={p} accepted");
    }
    Ok("p = 6 in l2 (h = 0.6) and l3 (h = 0.8); third division forced and perturbed".into())
}

fn grasshopper() -> Outcome {
    let r = SpaceModel::RealLine;
    let g = |a: f64, b: f64| grasshopper_distance(&r, &Point::real(a), &Point::real(b), GrasshopperMode::Analytic, None);
    ensure!(g(0.0, 3.0).map_err(e)? == Hops::Finite(3), "G(0,3)");
    ensure!(g(0.0, 2.5).map_err(e)? == Hops::Infinite, "G(0,2.5)");
    let mut reach = vec![0i64];
    for _ in 0..12 {
        reach = reach.iter().flat_map(|x| [x - 2, x + 2]).collect();
        reach.sort();
        reach.dedup();
        // half-steps: 2.5 is 5 half-units; unit jumps are 2 half-units
        ensure!(!reach.contains(&5), "reached 2.5");
    }

    let e2 = SpaceModel::euclidean(2);
    let oracle = |d: f64| -> Hops {
        if d == 0.0 {
            Hops::Finite(0)
        } else if (d - 1.0).abs() <= 1e-9 {
            Hops::Finite(1)
        } else {
            Hops::Finite((d.ceil() as u64).max(2))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let y = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
        let (px, py) = (Point::Vector(x.to_vec()), Point::Vector(y.to_vec()));
        let analytic = grasshopper_distance(&e2, &px, &py, GrasshopperMode::Analytic, None).map_err(e)?;
        let d = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt();
        ensure!(analytic == oracle(d), "analytic {analytic} vs oracle {} at d = {d}", oracle(d));
        let nodes: Vec<Point> = euclidean_jump_path(&x, &y).map_err(e)?.into_iter().map(Point::Vector).collect();
        let graph = UnitJumpGraph::new(&e2, nodes).map_err(e)?;
        let bfs = grasshopper_distance(&e2, &px, &py, GrasshopperMode::Graph, Some(&graph)).map_err(e)?;
        ensure!(bfs == analytic, "graph {bfs} vs analytic {analytic}");
    }

    let tps = three_edge_point_set().map_err(e)?;
    ensure!(tps.n == 2 && tps.alpha == rat(1, 10) && tps.beta == rat(1, 5), "point set parameters");
    let space = SpaceModel::tree((*tps.tree).clone());
    let a = tps.domain_points();
    let graph = UnitJumpGraph::new(&space, a.clone()).map_err(e)?;
    let f = tree_swap_bijection(&tps);
    for i in 0..a.len() {
        let fi = graph.index_of(&f.apply(&a[i]).map_err(e)?).ok_or("image leaves A")?;
        for j in 0..a.len() {
            let fj = graph.index_of(&f.apply(&a[j]).map_err(e)?).ok_or("image leaves A")?;
            ensure!(graph.hops(i, j) == graph.hops(fi, fj), "G_d not preserved at ({i}, {j})");
        }
    }
    let nodes = tps.node_set();
    let imgs: Vec<Point> = nodes.iter().map(|p| f.apply(p)).collect::<Result<_, _>>().map_err(e)?;
    let mut unit_pairs = 0;
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let before = space.exact_distance(&nodes[i], &nodes[j]).map_err(e)?.unwrap();
            let after = space.exact_distance(&imgs[i], &imgs[j]).map_err(e)?.unwrap();
            let one = Rational::from_integer(1);
            ensure!((before == one) == (after == one), "unit relation broken at {i}, {j}");
            unit_pairs += (before == one) as usize;
        }
    }
    let sample = SampleSet::from_points(&space, nodes.clone()).map_err(e)?;
    ensure!(preserves_unit_distance(&space, &space, &f, &sample, UnitMode::Eq, 0.0).passed(), "mode eq");
    let iso = is_isometry(&space, &space, &f, &sample, 0.0);
    ensure!(!iso.passed() && !iso.witnesses.is_empty(), "no isometry violation");
    Ok(format!("|A| = {}, {} nodes, {unit_pairs} unit pairs", a.len(), nodes.len()))
}

fn counterexamples() -> Outcome {
    let mut related = Vec::new();
    for name in COUNTEREXAMPLES {
        let c = counterexample(name, 7).map_err(e)?;
        let o = c.run();
        ensure!(o.preserves_unit.passed(), "{name} breaks unit distance: {:?}", o.preserves_unit.witnesses.first());
        ensure!(!o.isometry.passed() && !o.isometry.witnesses.is_empty(), "{name} is an isometry on its sample");
        related.push(o.preserves_unit.metric("related_pairs").unwrap_or(0.0));
    }
    let big = sphere_flip_case(1.0 / PI, 40, 7).map_err(e)?.run();
    ensure!(big.confirmed() && big.preserves_unit.metric("related_pairs").unwrap() > 0.0, "r = 1/pi vacuous");
    let small = sphere_flip_case(1.0 / (2.0 * PI), 40, 7).map_err(e)?.run();
    ensure!(small.preserves_unit.passed(), "r = 1/(2 pi) failed");
    ensure!(small.preserves_unit.metric("related_pairs") == Some(0.0), "r = 1/(2 pi) not vacuous");
    Ok(format!("5 confirmed, related pairs {related:?}"))
}

fn tits() -> Outcome {
    let e2 = SpaceModel::euclidean(2);
    let o = Point::vec2(0.0, 0.0);
    let mut worst: f64 = 0.0;
    for th in [0.01, PI / 2.0, PI] {
        let got = tits_delta(&e2, &o, &dir(1.0, 0.0), &dir(th.cos(), th.sin()), 1.0).map_err(e)?;
        let want = (th / 2.0).sin();
        worst = worst.max((got - want).abs());
        ensure!((got - want).abs() <= 1e-4, "theta = {th}: {got} vs {want}");
    }
    let t = SpaceModel::tree(branching_tree());
    let d = tits_delta(&t, &Point::Tree(TreePoint::Vertex(1)), &IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), 1.0)
        .map_err(e)?;
    ensure!(d == 1.0, "tree opposite ends gave {d}");
    Ok(format!("max error {worst:.2e}; tree 1"))
}

fn shadows() -> Outcome {
    let cfg = ShadowCheck::default();
    ensure!(cfg.rho == 1.0 && cfg.epsilon == 0.1 && cfg.delta == 0.01, "defaults {cfg:?}");
    let rep = check_shadow_semicontinuity(&SpaceModel::euclidean(2), &Point::vec2(0.0, 0.0), &Point::vec2(2.0, 0.0), &cfg)
        .map_err(e)?;
    ensure!(rep.passed(), "{:?}", rep.witnesses.first());
    let pts = rep.metric("shadow_points").unwrap_or(0.0);
    ensure!(pts >= 100.0, "only {pts} shadow points");
    Ok(format!("{pts} shadow points"))
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_busemann-lab");
    let dir = tempfile::tempdir().map_err(e)?;
    let cfg = dir.path().join("scenario.json");
    std::fs::write(&cfg, r#"{"suite": "all", "seed": 11}"#).map_err(e)?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.json"));
        let status = Command::new(bin).arg("--config").arg(&cfg).arg("--out").arg(&out).status().map_err(e)?;
        ensure!(status.code() == Some(0), "run {k} exited {status:?}");
        outputs.push(std::fs::read(&out).map_err(e)?);
    }
    ensure!(outputs[0] == outputs[1], "outputs differ");
    let code = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.status.code());
    ensure!(code(&["--suite", "foo"]).map_err(e)? == Some(2), "unknown suite");
    ensure!(code(&["--suite", "axioms"]).map_err(e)? == Some(2), "missing seed");
    ensure!(code(&["--suite", "tapes", "--format", "xml"]).map_err(e)? == Some(2), "bad format");
    ensure!(code(&["--config", "/nonexistent/cfg.json"]).map_err(e)? == Some(2), "missing config");
    ensure!(code(&["--suite", "horofn", "--seed", "1", "--tol", "1e-30"]).map_err(e)? == Some(1), "failing check");
    Ok(format!("{} identical bytes; exit codes 0/1/2", outputs[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("metric axioms", metric_axioms),
        ("Busemann inequality", busemann_inequality),
        ("Busemann function oracles", busemann_oracles),
        ("Busemann sum bound", sum_bound),
        ("scissors shift", scissors),
        ("double transfer", double_transfers),
        ("p-tapes", tapes),
        ("grasshopper", grasshopper),
        ("counterexamples", counterexamples),
        ("Tits delta", tits),
        ("shadow semicontinuity", shadows),
        ("CLI determinism", cli),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
