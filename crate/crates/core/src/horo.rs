//! Busemann functions, horoballs, the asymptotic-ray pseudometric, the
//! Tits-angle quantity and shadows.

use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, LabError, Result};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::scalar::{Rational, Scalar};
use crate::space::{Curve, GeodesicRef, IdealPoint, Point, SpaceModel};
use crate::verify::{scalar_le, SampleSet};

/// Acceptance tolerance for truncated limits.
pub const BUSEMANN_TOL: f64 = 1e-6;
/// Largest truncation tried before giving up.
pub const MAX_TRUNCATION: f64 = 1e8;
const TITS_TOL: f64 = 1e-4;
const HOROBALL_SLACK: f64 = 1e-9;

/// Parameters of the truncated-limit evaluation of a Busemann function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BusemannEval {
    pub start: f64,
    pub tolerance: f64,
    pub max_truncation: f64,
}

impl Default for BusemannEval {
    fn default() -> Self {
        BusemannEval { start: 1.0, tolerance: BUSEMANN_TOL, max_truncation: MAX_TRUNCATION }
    }
}

/// Accepted value of a truncated limit and the truncation that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncated {
    pub value: f64,
    pub truncation: f64,
    /// `|f(2T) - f(T)|` at acceptance.
    pub last_step: f64,
}

fn param(g: &GeodesicRef, t: f64) -> Scalar {
    if g.is_tree() && t.fract() == 0.0 && t.abs() < 9e15 {
        Scalar::Exact(Rational::from_integer(t as i64))
    } else {
        Scalar::Float(t)
    }
}

fn as_ray(ray: &GeodesicRef) -> Result<GeodesicRef> {
    if ray.end_ideal.is_none() {
        return domain("Busemann functions need a ray with an ideal endpoint");
    }
    ray.forward_ray()
}

impl BusemannEval {
    /// `lim (|y c(T)| - T)` by doubling `T` until two consecutive values
    /// agree within the tolerance; the accepted value is the Richardson
    /// combination `2 f(2T) - f(T)`. Outside trees two consecutive
    /// combinations agreeing within a tenth of the tolerance also settle it.
    pub fn evaluate(&self, space: &SpaceModel, ray: &GeodesicRef, y: &Point) -> Result<Truncated> {
        let ray = as_ray(ray)?;
        let f = |t: f64| -> Result<f64> {
            let p = ray.point_at_scalar(param(&ray, t))?;
            Ok(space.distance(y, &p)? - t)
        };
        let mut t = self.start;
        let mut ft = f(t)?;
        let mut prev: Option<f64> = None;
        while 2.0 * t <= self.max_truncation {
            let f2 = match f(2.0 * t) {
                Ok(v) if v.is_finite() => v,
                _ => break,
            };
            let step = (f2 - ft).abs();
            let rich = 2.0 * f2 - ft;
            // Tree rays settle exactly, so only smooth models use the
            // agreement of consecutive extrapolations.
            let settled = !ray.is_tree() && t >= 16.0 && prev.is_some_and(|r| (rich - r).abs() < 0.1 * self.tolerance);
            if step < self.tolerance || settled {
                return Ok(Truncated { value: rich, truncation: 2.0 * t, last_step: step });
            }
            prev = Some(rich);
            t *= 2.0;
            ft = f2;
        }
        Err(LabError::Convergence(format!(
            "Busemann limit did not settle below {} by T = {t}",
            self.tolerance
        )))
    }
}

/// Closed form of `beta_ray(y)` when the model provides one.
pub fn busemann_closed_form(space: &SpaceModel, ray: &GeodesicRef, y: &Point) -> Option<Result<Scalar>> {
    let ray = match as_ray(ray) {
        Ok(r) => r,
        Err(e) => return Some(Err(e)),
    };
    if let Err(e) = space.check(y) {
        return Some(Err(e));
    }
    let xi = ray.end_ideal.clone()?;
    match (space, &ray.curve, &xi, y) {
        (s, Curve::Affine { origin, velocity }, IdealPoint::Direction(_), Point::Vector(v)) => {
            let phi = s.norm()?.dual_at(velocity)?;
            let w: f64 = v.iter().zip(origin).zip(&phi).map(|((a, o), f)| (a - o) * f).sum();
            Some(Ok(Scalar::Float(-w)))
        }
        (SpaceModel::HyperbolicPlane, Curve::Vertical { y0, sign, .. }, IdealPoint::Infinity, Point::Half { y: h, .. })
            if *sign > 0.0 =>
        {
            Some(Ok(Scalar::Float(-(h / y0).ln())))
        }
        (SpaceModel::HyperbolicPlane, _, IdealPoint::Boundary(xi), Point::Half { .. }) => {
            let potential = |p: &Point| match *p {
                Point::Half { x, y } => ((x - xi).powi(2) + y * y).ln() - y.ln(),
                _ => f64::NAN,
            };
            let o = match ray.point_at(0.0) {
                Ok(o) => o,
                Err(e) => return Some(Err(e)),
            };
            Some(Ok(Scalar::Float(potential(y) - potential(&o))))
        }
        (SpaceModel::MetricTree { tree }, Curve::Tree { .. }, IdealPoint::TreeEnd(k), Point::Tree(p)) => {
            Some((|| {
                let o = match ray.point_at_scalar(Scalar::ZERO)? {
                    Point::Tree(o) => o,
                    _ => unreachable!("tree curve"),
                };
                let v = crate::space::TreePoint::Vertex(tree.end_vertex(*k));
                let far = tree.distance(&v, p) + tree.distance(&v, &o) + Scalar::Exact(Rational::from_integer(1));
                let f = tree.end_point(*k, far)?;
                Ok(tree.distance(p, &f) - tree.distance(&o, &f))
            })())
        }
        _ => None,
    }
}

/// `beta_ray(y) = lim (|y c(t)| - t)`: closed form where available,
/// otherwise the truncated limit with default acceptance.
pub fn busemann_value(space: &SpaceModel, ray: &GeodesicRef, y: &Point) -> Result<Scalar> {
    match busemann_closed_form(space, ray, y) {
        Some(v) => v,
        None => BusemannEval::default().evaluate(space, ray, y).map(|t| Scalar::Float(t.value)),
    }
}

/// `x` lies in the closed horoball of `ray` through `x0`.
pub fn horoball_contains(space: &SpaceModel, ray: &GeodesicRef, x0: &Point, x: &Point) -> Result<bool> {
    let bx = busemann_value(space, ray, x)?;
    let b0 = busemann_value(space, ray, x0)?;
    Ok(scalar_le(bx, b0, HOROBALL_SLACK))
}

/// Two rays with a common ideal endpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayPair {
    pub c: GeodesicRef,
    pub d: GeodesicRef,
    pub xi: IdealPoint,
}

const ASYMPTOTIC_PROBES: [f64; 6] = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0];

impl RayPair {
    /// Checks the shared endpoint and that `|c(t) d(t)|` does not grow on
    /// sampled `t` (it is non-increasing for asymptotic rays in a Busemann
    /// space).
    pub fn new(space: &SpaceModel, c: GeodesicRef, d: GeodesicRef) -> Result<Self> {
        let c = as_ray(&c)?;
        let d = as_ray(&d)?;
        let (xi, eta) = (c.end_ideal.clone().expect("ray"), d.end_ideal.clone().expect("ray"));
        if !xi.same_as(&eta, 1e-9) {
            return domain(format!("rays end at different ideal points {xi:?} and {eta:?}"));
        }
        let pair = RayPair { c, d, xi };
        let d0 = pair.gap(space, 0.0)?;
        for &t in &ASYMPTOTIC_PROBES {
            let dt = pair.gap(space, t)?;
            if dt > d0 + 1e-6 {
                return domain(format!("rays are not asymptotic: |c(t)d(t)| grows from {d0} to {dt} at t = {t}"));
            }
        }
        Ok(pair)
    }

    /// `|c(t) d(t)|`.
    pub fn gap(&self, space: &SpaceModel, t: f64) -> Result<f64> {
        let p = self.c.point_at_scalar(param(&self.c, t))?;
        let q = self.d.point_at_scalar(param(&self.d, t))?;
        space.distance(&p, &q)
    }

    fn cross(&self, space: &SpaceModel, s: f64, t: f64) -> Result<f64> {
        let p = self.c.point_at(s)?;
        let q = self.d.point_at(t)?;
        space.distance(&p, &q)
    }
}

/// `rho_xi(c, d) = inf_{s,t >= 0} |c(s) d(t)|`.
///
/// Trees: the rays share a tail, evaluated exactly. Elsewhere a coarse
/// grid on `[0, S_k]^2` with `S_k = 2 (k + 1) (1 + |c(0) d(0)|)` followed
/// by local zooming around the best cell, for `k < levels`.
pub fn ray_pseudodistance(space: &SpaceModel, pair: &RayPair, levels: usize) -> Result<Scalar> {
    if let (SpaceModel::MetricTree { tree }, IdealPoint::TreeEnd(k)) = (space, &pair.xi) {
        let c0 = pair.c.point_at_scalar(Scalar::ZERO)?;
        let d0 = pair.d.point_at_scalar(Scalar::ZERO)?;
        let v = Point::Tree(crate::space::TreePoint::Vertex(tree.end_vertex(*k)));
        let far = space.distance_scalar(&v, &c0)? + space.distance_scalar(&v, &d0)? + Scalar::Exact(1.into());
        let f = Point::Tree(tree.end_point(*k, far)?);
        let s = space.distance_scalar(&c0, &f)?;
        let t = space.distance_scalar(&d0, &f)?;
        let p = pair.c.point_at_scalar(s)?;
        let q = pair.d.point_at_scalar(t)?;
        return space.distance_scalar(&p, &q);
    }
    let d0 = pair.gap(space, 0.0)?;
    let mut best = (d0, 0.0, 0.0);
    const N: usize = 16;
    for k in 0..levels.max(1) {
        let mut w = (2.0 * (k + 1) as f64 * (1.0 + d0)).min(400.0);
        if matches!(space, SpaceModel::HyperbolicPlane) {
            // gaps decay like e^-t; past this the coordinates underflow
            w = w.min(16.0);
        }
        let diag = pair.gap(space, w)?;
        if diag > d0 + 1e-6 {
            return domain(format!("rays are not asymptotic: |c(t)d(t)| = {diag} > {d0} at t = {w}"));
        }
        let consider = |s: f64, t: f64, best: &mut (f64, f64, f64)| {
            if let Ok(v) = pair.cross(space, s, t) {
                if v < best.0 {
                    *best = (v, s, t);
                }
            }
        };
        for i in 0..=N {
            for j in 0..=N {
                consider(w * i as f64 / N as f64, w * j as f64 / N as f64, &mut best);
            }
        }
        let mut h = w / N as f64;
        for _ in 0..40 {
            h *= 0.5;
            let (_, s0, t0) = best;
            for di in -2i32..=2 {
                for dj in -2i32..=2 {
                    let (s, t) = (s0 + di as f64 * h, t0 + dj as f64 * h);
                    if s >= 0.0 && t >= 0.0 {
                        consider(s, t, &mut best);
                    }
                }
            }
        }
    }
    Ok(Scalar::Float(best.0))
}

/// `0 <= beta_c(d(0)) + beta_d(c(0)) <= 2 rho_xi(c, d)`.
pub fn check_busemann_sum_bound(space: &SpaceModel, pair: &RayPair) -> Result<VerificationReport> {
    let c0 = pair.c.point_at_scalar(Scalar::ZERO)?;
    let d0 = pair.d.point_at_scalar(Scalar::ZERO)?;
    let sum = busemann_value(space, &pair.c, &d0)? + busemann_value(space, &pair.d, &c0)?;
    let rho = ray_pseudodistance(space, pair, 20)?;
    let mut rep = ReportBuilder::new(format!("busemann_sum_bound[{}]", space.name()), BUSEMANN_TOL);
    rep.metric("sum", sum.to_f64()).metric("rho", rho.to_f64());
    let labels = || vec![space.describe_point(&c0), space.describe_point(&d0)];
    rep.record(scalar_le(Scalar::ZERO, sum, BUSEMANN_TOL), || {
        Witness::new(labels()).with("sum", sum.to_f64())
    });
    let two_rho = rho + rho;
    rep.record(scalar_le(sum, two_rho, BUSEMANN_TOL), || {
        Witness::new(labels()).with("sum", sum.to_f64()).with("two_rho", two_rho.to_f64())
    });
    Ok(rep.finish())
}

/// `lim |c(t) d(t)| / (2t)` for the rays from `o` to `xi` and to `eta`,
/// doubling `t` from `t_start` until consecutive values agree within
/// `1e-4`; returns the Richardson combination clamped to `[0, 1]`.
pub fn tits_delta(space: &SpaceModel, o: &Point, xi: &IdealPoint, eta: &IdealPoint, t_start: f64) -> Result<f64> {
    if xi.same_as(eta, 1e-12) {
        return Err(LabError::Degenerate("Tits quantity of an ideal point with itself".into()));
    }
    if !(t_start > 0.0) {
        return domain("starting truncation must be positive");
    }
    let c = space.ray_from(o, xi)?;
    let d = space.ray_from(o, eta)?;
    let delta = |t: f64| -> Result<f64> {
        let p = c.point_at_scalar(param(&c, t))?;
        let q = d.point_at_scalar(param(&d, t))?;
        Ok(space.distance(&p, &q)? / (2.0 * t))
    };
    let mut t = t_start;
    let mut dt = delta(t)?;
    while 2.0 * t <= MAX_TRUNCATION {
        let d2 = match delta(2.0 * t) {
            Ok(v) if v.is_finite() => v,
            _ => break,
        };
        if (d2 - dt).abs() < TITS_TOL {
            return Ok((2.0 * d2 - dt).clamp(0.0, 1.0));
        }
        t *= 2.0;
        dt = d2;
    }
    Err(LabError::Convergence(format!("Tits quantity did not settle by t = {t}")))
}

/// The relation "Td < pi" in the threshold-1 reading of the quantity.
pub fn tits_below_threshold(delta: f64) -> bool {
    delta < 1.0 - TITS_TOL
}

/// Source of a shadow: a point or an ideal point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowSource {
    Point(Point),
    Ideal(IdealPoint),
}

/// `z` lies in the complete shadow of `x0` seen from `y`: `x0` is on a
/// segment (or ray) from `y` to `z`.
pub fn shadow_contains(space: &SpaceModel, y: &ShadowSource, x0: &Point, z: &Point, tol: f64) -> Result<bool> {
    match y {
        ShadowSource::Point(y) => {
            if y == x0 || space.distance(y, x0)? == 0.0 {
                return domain("shadow source coincides with the point");
            }
            let lhs = space.distance_scalar(y, x0)? + space.distance_scalar(x0, z)?;
            Ok(scalar_le(lhs, space.distance_scalar(y, z)?, tol))
        }
        ShadowSource::Ideal(xi) => {
            let ray = space.ray_from(x0, xi)?;
            let bz = busemann_value(space, &ray, z)?;
            let d = space.distance_scalar(x0, z)?;
            let diff = bz - d;
            Ok(match diff {
                Scalar::Exact(q) => q == Rational::from_integer(0),
                Scalar::Float(v) => v.abs() <= tol,
            })
        }
    }
}

/// `resolution` points of the metric sphere `S(center, rho)` in planar
/// models (normed planes, the hyperbolic plane) and the real line.
pub fn sphere_sample(space: &SpaceModel, center: &Point, rho: f64, resolution: usize) -> Result<Vec<Point>> {
    space.check(center)?;
    if !(rho > 0.0) || resolution == 0 {
        return domain("sphere sample needs positive radius and resolution");
    }
    let angles = (0..resolution).map(|k| std::f64::consts::TAU * k as f64 / resolution as f64);
    match (space, center) {
        (s, Point::Vector(v)) if s.norm().is_some() && v.len() == 1 => {
            Ok(vec![Point::real(v[0] - rho), Point::real(v[0] + rho)])
        }
        (s, Point::Vector(v)) if s.norm().is_some() && v.len() == 2 => {
            let norm = s.norm().expect("normed");
            Ok(angles
                .map(|th| {
                    let (c, sn) = (th.cos(), th.sin());
                    let k = rho / norm.eval(&[c, sn]);
                    Point::vec2(v[0] + k * c, v[1] + k * sn)
                })
                .collect())
        }
        (SpaceModel::HyperbolicPlane, Point::Half { x, y }) => {
            let (yc, r) = (y * rho.cosh(), y * rho.sinh());
            Ok(angles.map(|th| Point::half(x + r * th.cos(), yc + r * th.sin())).collect())
        }
        _ => unsupported(format!("sphere samples in {}", space.name())),
    }
}

/// Sampled spherical shadow `Shadow_y(x0, rho)`: the sphere samples that
/// pass [`shadow_contains`] with a tolerance matched to the angular step.
pub fn spherical_shadow_sample(
    space: &SpaceModel,
    y: &ShadowSource,
    x0: &Point,
    rho: f64,
    resolution: usize,
) -> Result<SampleSet> {
    let tol = rho * (std::f64::consts::PI / resolution as f64).powi(2);
    let mut kept = Vec::new();
    for z in sphere_sample(space, x0, rho, resolution)? {
        if shadow_contains(space, y, x0, &z, tol)? {
            kept.push(z);
        }
    }
    SampleSet::from_points(space, kept)
}

/// Parameters of the shadow semicontinuity spot check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowCheck {
    pub rho: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub resolution: usize,
    /// Minimum number of perturbed shadow points to examine.
    pub min_points: usize,
}

impl Default for ShadowCheck {
    fn default() -> Self {
        ShadowCheck { rho: 1.0, epsilon: 0.1, delta: 0.01, resolution: 3600, min_points: 100 }
    }
}

/// For points `x1` of `S(y, |y x0|)` within `delta` of `x0`, every sampled
/// point of `Shadow_y(x1, rho)` lies within `epsilon` of `Shadow_y(x0, rho)`.
pub fn check_shadow_semicontinuity(space: &SpaceModel, y: &Point, x0: &Point, cfg: &ShadowCheck) -> Result<VerificationReport> {
    let src = ShadowSource::Point(y.clone());
    let base = spherical_shadow_sample(space, &src, x0, cfg.rho, cfg.resolution)?;
    let mut rep = ReportBuilder::new(format!("shadow_semicontinuity[{}]", space.name()), cfg.epsilon);
    if base.is_empty() {
        rep.fail(Witness::new(vec![space.describe_point(x0)]).with("base_shadow_points", 0.0));
        return Ok(rep.finish());
    }
    let r = space.distance(y, x0)?;
    // Fine enough that the sphere step is far below delta.
    let steps = ((std::f64::consts::TAU * r.sinh().max(r) / cfg.delta) * 20.0).ceil() as usize;
    let mut perturbed = 0usize;
    let mut points = 0usize;
    for x1 in sphere_sample(space, y, r, steps.max(cfg.resolution))? {
        let gap = space.distance(&x1, x0)?;
        if gap > cfg.delta || gap == 0.0 {
            continue;
        }
        perturbed += 1;
        for z in spherical_shadow_sample(space, &src, &x1, cfg.rho, cfg.resolution)?.points {
            points += 1;
            let mut near = f64::INFINITY;
            for w in &base.points {
                near = near.min(space.distance(&z, w)?);
            }
            rep.max_metric("max_distance_to_base_shadow", near);
            rep.record(near <= cfg.epsilon, || {
                Witness::new(vec![space.describe_point(&x1), space.describe_point(&z)]).with("distance", near)
            });
        }
    }
    rep.metric("perturbed_points", perturbed as f64).metric("shadow_points", points as f64);
    rep.record(points >= cfg.min_points, || {
        Witness::new(vec![]).with("shadow_points", points as f64).with("required", cfg.min_points as f64)
    });
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::space::{MetricTree, TreePoint};

    fn e2() -> SpaceModel {
        SpaceModel::euclidean(2)
    }

    fn east_ray(o: Point) -> GeodesicRef {
        e2().ray_from(&o, &IdealPoint::direction(&[1.0, 0.0]).unwrap()).unwrap()
    }

    #[test]
    fn euclidean_busemann_closed_and_truncated() {
        let ray = east_ray(Point::vec2(0.0, 0.0));
        let y = Point::vec2(3.0, 4.0);
        assert_eq!(busemann_value(&e2(), &ray, &y).unwrap().to_f64(), -3.0);
        let t = BusemannEval::default().evaluate(&e2(), &ray, &y).unwrap();
        assert!((t.value + 3.0).abs() < 1e-6, "{t:?}");
        assert!(t.truncation <= MAX_TRUNCATION);
    }

    #[test]
    fn busemann_normalised_at_base() {
        let h = SpaceModel::HyperbolicPlane;
        let o = Point::half(0.4, 2.0);
        for xi in [IdealPoint::Infinity, IdealPoint::Boundary(-1.5)] {
            let ray = h.ray_from(&o, &xi).unwrap();
            assert!(busemann_value(&h, &ray, &o).unwrap().to_f64().abs() < 1e-15);
        }
        assert_eq!(busemann_value(&e2(), &east_ray(Point::vec2(1.0, 1.0)), &Point::vec2(1.0, 1.0)).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn hyperbolic_boundary_busemann_matches_truncation() {
        let h = SpaceModel::HyperbolicPlane;
        let ray = h.ray_from(&Point::half(0.0, 1.0), &IdealPoint::Boundary(2.0)).unwrap();
        for y in [Point::half(1.0, 0.5), Point::half(-3.0, 4.0), Point::half(2.1, 0.05)] {
            let closed = busemann_value(&h, &ray, &y).unwrap().to_f64();
            let trunc = BusemannEval::default().evaluate(&h, &ray, &y).unwrap().value;
            assert!((closed - trunc).abs() < 1e-6, "{closed} vs {trunc}");
        }
    }

    fn comb() -> (MetricTree, SpaceModel) {
        // 0 - 1 - 2 with the end hanging at 2 and a spur 1 - 3.
        let t = MetricTree::from_edges(4, &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2)), (1, 3, rat(3, 2))], 2, &[2]).unwrap();
        (t.clone(), SpaceModel::tree(t))
    }

    #[test]
    fn tree_busemann_is_merge_difference() {
        let (_, s) = comb();
        let x = Point::Tree(TreePoint::Vertex(0));
        let y = Point::Tree(TreePoint::Vertex(3));
        let c = s.ray_from(&x, &IdealPoint::TreeEnd(0)).unwrap();
        // merge point is vertex 1: s0 = 1/2, t0 = 3/2
        assert_eq!(busemann_value(&s, &c, &y).unwrap(), Scalar::Exact(rat(1, 1)));
        let t = BusemannEval::default().evaluate(&s, &c, &y).unwrap();
        assert_eq!(t.value, 1.0);
        let d = s.ray_from(&y, &IdealPoint::TreeEnd(0)).unwrap();
        let pair = RayPair::new(&s, c, d).unwrap();
        assert_eq!(ray_pseudodistance(&s, &pair, 3).unwrap(), Scalar::Exact(rat(0, 1)));
        let rep = check_busemann_sum_bound(&s, &pair).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.metric("sum"), Some(0.0));
    }

    #[test]
    fn horoball_examples() {
        let o = Point::vec2(0.0, 0.0);
        let ray = east_ray(o.clone());
        assert!(horoball_contains(&e2(), &ray, &o, &o).unwrap());
        assert!(horoball_contains(&e2(), &ray, &o, &Point::vec2(5.0, 0.0)).unwrap());
        let h = SpaceModel::HyperbolicPlane;
        let x0 = Point::half(0.0, 1.0);
        let up = h.ray_from(&x0, &IdealPoint::Infinity).unwrap();
        assert!(!horoball_contains(&h, &up, &x0, &Point::half(7.0, 0.5)).unwrap());
    }

    #[test]
    fn pseudodistance_examples() {
        let pair = RayPair::new(&e2(), east_ray(Point::vec2(0.0, 0.0)), east_ray(Point::vec2(0.0, 1.0))).unwrap();
        assert!((ray_pseudodistance(&e2(), &pair, 4).unwrap().to_f64() - 1.0).abs() < 1e-12);

        let h = SpaceModel::HyperbolicPlane;
        let c = h.ray_from(&Point::half(0.0, 1.0), &IdealPoint::Infinity).unwrap();
        let d = h.ray_from(&Point::half(3.0, 1.0), &IdealPoint::Infinity).unwrap();
        let pair = RayPair::new(&h, c, d).unwrap();
        assert!(ray_pseudodistance(&h, &pair, 20).unwrap().to_f64() <= 1e-3);
        let rep = check_busemann_sum_bound(&h, &pair).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn diverging_rays_are_rejected() {
        let c = east_ray(Point::vec2(0.0, 0.0));
        let d = e2().ray_from(&Point::vec2(0.0, 1.0), &IdealPoint::direction(&[1.0, 1.0]).unwrap()).unwrap();
        assert!(RayPair::new(&e2(), c, d).is_err());
    }

    #[test]
    fn tits_examples() {
        let o = Point::vec2(0.0, 0.0);
        let dir = |th: f64| IdealPoint::direction(&[th.cos(), th.sin()]).unwrap();
        for th in [0.01, std::f64::consts::FRAC_PI_2, std::f64::consts::PI] {
            let d = tits_delta(&e2(), &o, &dir(0.0), &dir(th), 1.0).unwrap();
            assert!((d - (th / 2.0).sin()).abs() <= 1e-4, "{th}: {d}");
        }
        assert!(tits_delta(&e2(), &o, &dir(0.0), &dir(0.0), 1.0).is_err());

        let tree = MetricTree::from_edges(3, &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2))], 2, &[0, 2]).unwrap();
        let s = SpaceModel::tree(tree);
        let d = tits_delta(&s, &Point::Tree(TreePoint::Vertex(1)), &IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), 1.0).unwrap();
        assert_eq!(d, 1.0);
        assert!(!tits_below_threshold(d));
    }

    #[test]
    fn shadow_examples() {
        let y = ShadowSource::Point(Point::vec2(-1.0, 0.0));
        let x0 = Point::vec2(0.0, 0.0);
        assert!(shadow_contains(&e2(), &y, &x0, &Point::vec2(2.0, 0.0), 1e-9).unwrap());
        assert!(!shadow_contains(&e2(), &y, &x0, &Point::vec2(0.0, 2.0), 1e-9).unwrap());
        assert!(shadow_contains(&e2(), &ShadowSource::Point(x0.clone()), &x0, &x0, 1e-9).is_err());

        let tree = MetricTree::star(3, rat(1, 2), 2).unwrap();
        let s = SpaceModel::tree(tree.clone());
        let yt = ShadowSource::Point(Point::Tree(tree.edge_point(0, rat(1, 2).into()).unwrap()));
        let z = Point::Tree(tree.edge_point(1, rat(1, 4).into()).unwrap());
        assert!(shadow_contains(&s, &yt, &Point::Tree(TreePoint::Vertex(0)), &z, 0.0).unwrap());

        let west = ShadowSource::Ideal(IdealPoint::direction(&[-1.0, 0.0]).unwrap());
        assert!(shadow_contains(&e2(), &west, &x0, &Point::vec2(3.0, 0.0), 1e-9).unwrap());
        assert!(!shadow_contains(&e2(), &west, &x0, &Point::vec2(3.0, 1.0), 1e-9).unwrap());
    }

    #[test]
    fn spherical_shadow_is_near_the_extension() {
        let y = ShadowSource::Point(Point::vec2(-1.0, 0.0));
        let sh = spherical_shadow_sample(&e2(), &y, &Point::vec2(0.0, 0.0), 1.0, 720).unwrap();
        assert!(!sh.is_empty());
        for p in &sh.points {
            assert!(e2().distance(p, &Point::vec2(1.0, 0.0)).unwrap() < 0.05);
        }
    }
}
