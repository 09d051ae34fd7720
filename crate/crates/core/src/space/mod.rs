//! Catalog of closed-form model metric spaces: points, distances,
//! geodesics, rays, lines and ideal points.

mod geodesic;
pub mod hyperbolic;
pub mod normed;
pub mod tree;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, LabError, Result};
use crate::scalar::{Rational, Scalar};

pub use geodesic::{Curve, Domain, GeodesicRef};
use hyperbolic::Support;
pub use normed::Norm;
use normed::{axpy, dot, scale, sub};
pub use tree::{Carrier, MetricTree, TreeDesc, TreeLeg, TreePath, TreePoint, VertexId};

const SPHERE_NORM_TOL: f64 = 1e-12;

/// One closed-form metric space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceModel {
    Euclidean { dim: usize },
    /// The plane with the `l^p` norm, `1 < p < inf`.
    MinkowskiLp { p: f64 },
    /// The sup-norm plane. Not strictly convex; only used to produce
    /// convexity violations.
    MinkowskiLinf,
    HyperbolicPlane,
    MetricTree { tree: Arc<MetricTree> },
    /// Sphere of `radius` in `R^dim` with its intrinsic (great-circle) metric.
    SphereIntrinsic { radius: f64, dim: usize },
    RealLine,
    MaxProduct { left: Box<SpaceModel>, right: Box<SpaceModel> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    /// Euclidean, Minkowski, real line (length 1) and sphere directions.
    Vector(Vec<f64>),
    /// Upper half-plane point `x + iy`, `y > 0`.
    Half { x: f64, y: f64 },
    Tree(TreePoint),
    Pair(Box<Point>, Box<Point>),
}

/// A point of the geodesic ideal boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealPoint {
    /// Direction in a normed space, stored with unit Euclidean length.
    Direction(Vec<f64>),
    /// Point of the real axis bounding the upper half-plane.
    Boundary(f64),
    /// The point `i inf` of the upper half-plane.
    Infinity,
    TreeEnd(usize),
}

/// Chooses among non-unique midpoints (sup-norm plane only).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MidpointSelector {
    #[default]
    Affine,
    UpperExtreme,
    LowerExtreme,
}

impl Point {
    pub fn vec2(x: f64, y: f64) -> Point {
        Point::Vector(vec![x, y])
    }

    pub fn real(x: f64) -> Point {
        Point::Vector(vec![x])
    }

    pub fn half(x: f64, y: f64) -> Point {
        Point::Half { x, y }
    }

    pub fn pair(left: Point, right: Point) -> Point {
        Point::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_vector(&self) -> Option<&[f64]> {
        match self {
            Point::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Point::Vector(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn as_tree(&self) -> Option<&TreePoint> {
        match self {
            Point::Tree(p) => Some(p),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Point::Vector(v) => format!(
                "({})",
                v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(", ")
            ),
            Point::Half { x, y } => format!("({x:.6} + {y:.6}i)"),
            Point::Tree(p) => format!("{p:?}"),
            Point::Pair(a, b) => format!("<{}, {}>", a.describe(), b.describe()),
        }
    }
}

impl IdealPoint {
    /// Direction ideal point, normalised to unit Euclidean length.
    pub fn direction(v: &[f64]) -> Result<IdealPoint> {
        let n = Norm::L2.eval(v);
        if n == 0.0 || !n.is_finite() {
            return domain("zero direction");
        }
        Ok(IdealPoint::Direction(scale(v, 1.0 / n)))
    }

    pub fn same_as(&self, other: &IdealPoint, tol: f64) -> bool {
        match (self, other) {
            (IdealPoint::Direction(a), IdealPoint::Direction(b)) => {
                a.len() == b.len() && Norm::L2.dist(a, b) <= tol
            }
            (IdealPoint::Boundary(a), IdealPoint::Boundary(b)) => (a - b).abs() <= tol,
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::TreeEnd(a), IdealPoint::TreeEnd(b)) => a == b,
            _ => false,
        }
    }
}

impl SpaceModel {
    pub fn euclidean(dim: usize) -> SpaceModel {
        SpaceModel::Euclidean { dim }
    }

    pub fn minkowski(p: f64) -> Result<SpaceModel> {
        let s = SpaceModel::MinkowskiLp { p };
        s.validate().map(|_| s)
    }

    pub fn tree(tree: MetricTree) -> SpaceModel {
        SpaceModel::MetricTree { tree: Arc::new(tree) }
    }

    pub fn sphere(radius: f64, dim: usize) -> Result<SpaceModel> {
        let s = SpaceModel::SphereIntrinsic { radius, dim };
        s.validate().map(|_| s)
    }

    pub fn max_product(left: SpaceModel, right: SpaceModel) -> Result<SpaceModel> {
        let s = SpaceModel::MaxProduct { left: Box::new(left), right: Box::new(right) };
        s.validate().map(|_| s)
    }

    fn product_depth(&self) -> usize {
        match self {
            SpaceModel::MaxProduct { left, right } => {
                1 + left.product_depth().max(right.product_depth())
            }
            _ => 0,
        }
    }

    /// Checks the construction invariants (useful after deserialising).
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceModel::Euclidean { dim } if *dim == 0 => domain("dimension must be positive"),
            SpaceModel::MinkowskiLp { p } if !(*p > 1.0 && p.is_finite()) => {
                domain(format!("l^p plane needs 1 < p < inf, got {p}"))
            }
            SpaceModel::SphereIntrinsic { radius, dim } if !(*radius > 0.0) || *dim < 2 => {
                domain("sphere needs positive radius and ambient dimension >= 2")
            }
            SpaceModel::MaxProduct { left, right } => {
                if self.product_depth() > 2 {
                    return domain("maximum products nest at most twice");
                }
                left.validate()?;
                right.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SpaceModel::Euclidean { dim } => format!("euclidean({dim})"),
            SpaceModel::MinkowskiLp { p } => format!("minkowski_lp({p})"),
            SpaceModel::MinkowskiLinf => "minkowski_linf".into(),
            SpaceModel::HyperbolicPlane => "hyperbolic_plane".into(),
            SpaceModel::MetricTree { tree } => {
                format!("metric_tree({}v,{}e)", tree.vertex_count(), tree.end_count())
            }
            SpaceModel::SphereIntrinsic { radius, dim } => format!("sphere({radius},{dim})"),
            SpaceModel::RealLine => "real_line".into(),
            SpaceModel::MaxProduct { left, right } => {
                format!("max_product({}, {})", left.name(), right.name())
            }
        }
    }

    /// Human-readable point label; tree points use vertex names.
    pub fn describe_point(&self, p: &Point) -> String {
        match (self, p) {
            (SpaceModel::MetricTree { tree }, Point::Tree(tp)) => tree.describe(tp),
            (SpaceModel::MaxProduct { left, right }, Point::Pair(a, b)) => {
                format!("<{}, {}>", left.describe_point(a), right.describe_point(b))
            }
            _ => p.describe(),
        }
    }

    /// Models in the catalog that satisfy Busemann convexity.
    pub fn is_busemann(&self) -> bool {
        matches!(
            self,
            SpaceModel::Euclidean { .. }
                | SpaceModel::MinkowskiLp { .. }
                | SpaceModel::HyperbolicPlane
                | SpaceModel::MetricTree { .. }
                | SpaceModel::RealLine
        )
    }

    pub fn norm(&self) -> Option<Norm> {
        match self {
            SpaceModel::Euclidean { .. } | SpaceModel::RealLine => Some(Norm::L2),
            SpaceModel::MinkowskiLp { p } => Some(Norm::Lp(*p)),
            SpaceModel::MinkowskiLinf => Some(Norm::Linf),
            _ => None,
        }
    }

    /// Coordinate dimension of vector-valued models.
    pub fn vector_dim(&self) -> Option<usize> {
        match self {
            SpaceModel::Euclidean { dim } => Some(*dim),
            SpaceModel::MinkowskiLp { .. } | SpaceModel::MinkowskiLinf => Some(2),
            SpaceModel::RealLine => Some(1),
            SpaceModel::SphereIntrinsic { dim, .. } => Some(*dim),
            _ => None,
        }
    }

    pub fn as_tree(&self) -> Option<&Arc<MetricTree>> {
        match self {
            SpaceModel::MetricTree { tree } => Some(tree),
            _ => None,
        }
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (SpaceModel::HyperbolicPlane, Point::Half { x, y }) => {
                if *y > 0.0 && x.is_finite() && y.is_finite() {
                    Ok(())
                } else {
                    domain(format!("({x}, {y}) is not in the upper half-plane"))
                }
            }
            (SpaceModel::MetricTree { tree }, Point::Tree(tp)) => tree.check_point(tp),
            (SpaceModel::SphereIntrinsic { dim, .. }, Point::Vector(v)) => {
                if v.len() != *dim {
                    return domain("sphere direction has wrong dimension");
                }
                if (Norm::L2.eval(v) - 1.0).abs() > SPHERE_NORM_TOL {
                    return domain("sphere direction is not a unit vector");
                }
                Ok(())
            }
            (SpaceModel::MaxProduct { left, right }, Point::Pair(a, b)) => {
                left.check(a)?;
                right.check(b)
            }
            (s, Point::Vector(v)) if s.norm().is_some() => {
                if Some(v.len()) != s.vector_dim() {
                    return domain(format!("point of dimension {} in {}", v.len(), s.name()));
                }
                if v.iter().all(|x| x.is_finite()) {
                    Ok(())
                } else {
                    domain("non-finite coordinate")
                }
            }
            (s, p) => domain(format!("{} is not a point of {}", p.describe(), s.name())),
        }
    }

    /// Distance, exact for tree points with rational offsets.
    pub fn distance_scalar(&self, x: &Point, y: &Point) -> Result<Scalar> {
        self.check(x)?;
        self.check(y)?;
        self.distance_unchecked(x, y)
    }

    fn distance_unchecked(&self, x: &Point, y: &Point) -> Result<Scalar> {
        Ok(match (self, x, y) {
            (SpaceModel::HyperbolicPlane, Point::Half { x: x1, y: y1 }, Point::Half { x: x2, y: y2 }) => {
                Scalar::Float(hyperbolic::distance(*x1, *y1, *x2, *y2))
            }
            (SpaceModel::MetricTree { tree }, Point::Tree(p), Point::Tree(q)) => tree.distance(p, q),
            (SpaceModel::SphereIntrinsic { radius, .. }, Point::Vector(u), Point::Vector(v)) => {
                Scalar::Float(radius * sphere_angle(u, v))
            }
            (SpaceModel::MaxProduct { left, right }, Point::Pair(a1, b1), Point::Pair(a2, b2)) => {
                let dl = left.distance_unchecked(a1, a2)?;
                let dr = right.distance_unchecked(b1, b2)?;
                dl.max(dr)
            }
            (s, Point::Vector(u), Point::Vector(v)) => {
                let norm = s.norm().expect("checked");
                Scalar::Float(norm.dist(u, v))
            }
            _ => return domain("point/space mismatch"),
        })
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.distance_scalar(x, y).map(Scalar::to_f64)
    }

    pub fn exact_distance(&self, x: &Point, y: &Point) -> Result<Option<Rational>> {
        self.distance_scalar(x, y).map(Scalar::exact)
    }

    pub fn geodesic_between(&self, x: &Point, y: &Point) -> Result<GeodesicRef> {
        self.geodesic_between_with(x, y, MidpointSelector::Affine)
    }

    /// Unit-speed minimiser from `x` to `y`. The selector only matters in
    /// the sup-norm plane, where it routes the segment through the chosen
    /// extreme midpoint.
    pub fn geodesic_between_with(
        &self,
        x: &Point,
        y: &Point,
        selector: MidpointSelector,
    ) -> Result<GeodesicRef> {
        let d = self.distance_scalar(x, y)?;
        if d.is_zero() || d.to_f64() == 0.0 {
            return Err(LabError::Degenerate("geodesic between identical points".into()));
        }
        let length = d.to_f64();
        let segment = |curve| GeodesicRef {
            curve,
            domain: Domain::Segment { length },
            start_ideal: None,
            end_ideal: None,
        };
        match (self, x, y) {
            (SpaceModel::MinkowskiLinf, Point::Vector(a), Point::Vector(b))
                if selector != MidpointSelector::Affine =>
            {
                let m = linf_midpoint(a, b, selector);
                Ok(segment(Curve::Polyline {
                    corners: vec![a.clone(), m, b.clone()],
                    knots: vec![0.0, 0.5 * length, length],
                }))
            }
            (SpaceModel::MaxProduct { .. }, _, _) => {
                unsupported("geodesics in maximum products are not provided")
            }
            (SpaceModel::HyperbolicPlane, Point::Half { x: x1, y: y1 }, Point::Half { x: x2, y: y2 }) => {
                Ok(segment(match hyperbolic::support_through(*x1, *y1, *x2, *y2) {
                    Support::Vertical { x } => Curve::Vertical {
                        x,
                        y0: *y1,
                        sign: if y2 > y1 { 1.0 } else { -1.0 },
                    },
                    Support::Circle { center, radius } => {
                        let sigma = if x2 > x1 { 1.0 } else { -1.0 };
                        let s0 = hyperbolic::arc_parameter(center, sigma, *x1, *y1);
                        Curve::Arc { center, radius, sigma, s0 }
                    }
                }))
            }
            (SpaceModel::MetricTree { tree }, Point::Tree(p), Point::Tree(q)) => {
                let path = tree.segment(p, q);
                Ok(segment(Curve::Tree { tree: tree.clone(), path }))
            }
            (SpaceModel::SphereIntrinsic { radius, .. }, Point::Vector(u), Point::Vector(v)) => {
                let angle = length / radius;
                if angle >= std::f64::consts::PI - 1e-12 {
                    return Err(LabError::Ambiguous("antipodal points on the sphere".into()));
                }
                let w = axpy(v, -dot(u, v), u);
                let w = scale(&w, 1.0 / Norm::L2.eval(&w));
                Ok(segment(Curve::GreatCircle { u: u.clone(), v: w, radius: *radius }))
            }
            (s, Point::Vector(a), Point::Vector(b)) => {
                let _ = s.norm().expect("checked");
                Ok(segment(Curve::Affine {
                    origin: a.clone(),
                    velocity: scale(&sub(b, a), 1.0 / length),
                }))
            }
            _ => domain("point/space mismatch"),
        }
    }

    pub fn midpoint(&self, x: &Point, y: &Point) -> Result<Point> {
        self.midpoint_with(x, y, MidpointSelector::Affine)
    }

    pub fn midpoint_with(&self, x: &Point, y: &Point, selector: MidpointSelector) -> Result<Point> {
        let g = self.geodesic_between_with(x, y, selector)?;
        let len = g.length_scalar().expect("segment");
        g.point_at_scalar(len.half())
    }

    pub fn ray_from(&self, base: &Point, xi: &IdealPoint) -> Result<GeodesicRef> {
        self.check(base)?;
        let ray = |curve| GeodesicRef {
            curve,
            domain: Domain::Ray,
            start_ideal: None,
            end_ideal: Some(xi.clone()),
        };
        match (self, base, xi) {
            (s, Point::Vector(o), IdealPoint::Direction(u)) if s.norm().is_some() => {
                if u.len() != o.len() {
                    return domain("direction has wrong dimension");
                }
                let n = s.norm().expect("normed").eval(u);
                Ok(ray(Curve::Affine { origin: o.clone(), velocity: scale(u, 1.0 / n) }))
            }
            (SpaceModel::HyperbolicPlane, Point::Half { x, y }, IdealPoint::Infinity) => {
                Ok(ray(Curve::Vertical { x: *x, y0: *y, sign: 1.0 }))
            }
            (SpaceModel::HyperbolicPlane, Point::Half { x, y }, IdealPoint::Boundary(xi_x)) => {
                if (x - xi_x).abs() <= 1e-15 * (1.0 + xi_x.abs()) {
                    return Ok(ray(Curve::Vertical { x: *x, y0: *y, sign: -1.0 }));
                }
                let center = (x * x + y * y - xi_x * xi_x) / (2.0 * (x - xi_x));
                let radius = (xi_x - center).abs();
                let sigma = if *xi_x > center { 1.0 } else { -1.0 };
                let s0 = hyperbolic::arc_parameter(center, sigma, *x, *y);
                Ok(ray(Curve::Arc { center, radius, sigma, s0 }))
            }
            (SpaceModel::MetricTree { tree }, Point::Tree(p), IdealPoint::TreeEnd(k)) => {
                if *k >= tree.end_count() {
                    return domain(format!("tree has no end {k}"));
                }
                Ok(ray(Curve::Tree { tree: tree.clone(), path: tree.ray(p, *k) }))
            }
            _ => unsupported(format!("ray to {xi:?} in {}", self.name())),
        }
    }

    /// Line from `eta` (at `-inf`) to `xi` (at `+inf`). Normed models have
    /// a parallel family of such lines; `anchor` picks the one with
    /// `c(0) = anchor`. Other models ignore it.
    pub fn line_through(
        &self,
        eta: &IdealPoint,
        xi: &IdealPoint,
        anchor: Option<&Point>,
    ) -> Result<GeodesicRef> {
        if eta.same_as(xi, 1e-12) {
            return Err(LabError::Degenerate("line between equal ideal points".into()));
        }
        let line = |curve| GeodesicRef {
            curve,
            domain: Domain::Line,
            start_ideal: Some(eta.clone()),
            end_ideal: Some(xi.clone()),
        };
        match (self, eta, xi) {
            (s, IdealPoint::Direction(u), IdealPoint::Direction(v)) if s.norm().is_some() => {
                let opposite: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
                if Norm::L2.eval(&opposite) > 1e-9 {
                    return domain("directions are not opposite; no line joins them");
                }
                let Some(anchor) = anchor else {
                    return Err(LabError::Ambiguous("normed lines need an anchor point".into()));
                };
                self.check(anchor)?;
                let o = anchor.as_vector().expect("checked").to_vec();
                let n = s.norm().expect("normed").eval(v);
                Ok(line(Curve::Affine { origin: o, velocity: scale(v, 1.0 / n) }))
            }
            (SpaceModel::HyperbolicPlane, IdealPoint::Boundary(a), IdealPoint::Boundary(b)) => {
                Ok(line(Curve::Arc {
                    center: 0.5 * (a + b),
                    radius: 0.5 * (b - a).abs(),
                    sigma: if b > a { 1.0 } else { -1.0 },
                    s0: 0.0,
                }))
            }
            (SpaceModel::HyperbolicPlane, IdealPoint::Infinity, IdealPoint::Boundary(b)) => {
                Ok(line(Curve::Vertical { x: *b, y0: 1.0, sign: -1.0 }))
            }
            (SpaceModel::HyperbolicPlane, IdealPoint::Boundary(a), IdealPoint::Infinity) => {
                Ok(line(Curve::Vertical { x: *a, y0: 1.0, sign: 1.0 }))
            }
            (SpaceModel::MetricTree { tree }, IdealPoint::TreeEnd(i), IdealPoint::TreeEnd(j)) => {
                if *i >= tree.end_count() || *j >= tree.end_count() {
                    return domain("unknown tree end");
                }
                Ok(line(Curve::Tree { tree: tree.clone(), path: tree.line(*i, *j) }))
            }
            _ => unsupported(format!("line from {eta:?} to {xi:?} in {}", self.name())),
        }
    }

    /// Distance from `p` to the point of `g` at the parameter `p` maps to
    /// under the closed-form inverse; zero iff `p` lies on `g`.
    pub fn incidence(&self, g: &GeodesicRef, p: &Point) -> Result<(Scalar, Scalar)> {
        let t = g
            .param_of(p)
            .ok_or_else(|| LabError::Domain("point does not lie on the geodesic's carrier".into()))?;
        let q = g.point_at_scalar(t)?;
        Ok((t, self.distance_scalar(p, &q)?))
    }
}

fn sphere_angle(u: &[f64], v: &[f64]) -> f64 {
    let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let sum: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
    2.0 * Norm::L2.eval(&diff).atan2(Norm::L2.eval(&sum))
}

/// Extreme midpoints of `a`, `b` in the sup-norm plane. The free
/// coordinate ranges over `[max - D/2, min + D/2]`.
fn linf_midpoint(a: &[f64], b: &[f64], selector: MidpointSelector) -> Vec<f64> {
    let d = Norm::Linf.dist(a, b);
    let mut m: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
    let free = if (a[0] - b[0]).abs() >= (a[1] - b[1]).abs() { 1 } else { 0 };
    let (lo, hi) = (a[free].max(b[free]) - 0.5 * d, a[free].min(b[free]) + 0.5 * d);
    m[free] = match selector {
        MidpointSelector::UpperExtreme => hi,
        MidpointSelector::LowerExtreme => lo,
        MidpointSelector::Affine => m[free],
    };
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn euclidean_pythagoras() {
        let s = SpaceModel::euclidean(2);
        assert_eq!(s.distance(&Point::vec2(0.0, 0.0), &Point::vec2(3.0, 4.0)).unwrap(), 5.0);
    }

    #[test]
    fn hyperbolic_unit_distance_on_imaginary_axis() {
        let s = SpaceModel::HyperbolicPlane;
        let d = s
            .distance(&Point::half(0.0, 1.0), &Point::half(0.0, std::f64::consts::E))
            .unwrap();
        assert!(close(d, 1.0, 1e-15));
    }

    #[test]
    fn mismatched_points_are_rejected() {
        let s = SpaceModel::HyperbolicPlane;
        assert!(matches!(
            s.distance(&Point::vec2(0.0, 1.0), &Point::half(0.0, 1.0)),
            Err(LabError::Domain(_))
        ));
        assert!(s.check(&Point::half(0.0, -1.0)).is_err());
        assert!(SpaceModel::euclidean(3).check(&Point::vec2(0.0, 0.0)).is_err());
        let sphere = SpaceModel::sphere(1.0, 3).unwrap();
        assert!(sphere.check(&Point::Vector(vec![1.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn constructor_invariants() {
        assert!(SpaceModel::minkowski(1.0).is_err());
        assert!(SpaceModel::minkowski(f64::INFINITY).is_err());
        assert!(SpaceModel::minkowski(3.0).is_ok());
        let p1 = SpaceModel::max_product(SpaceModel::RealLine, SpaceModel::RealLine).unwrap();
        let p2 = SpaceModel::max_product(p1.clone(), SpaceModel::RealLine).unwrap();
        assert!(SpaceModel::max_product(p2, SpaceModel::RealLine).is_err());
    }

    #[test]
    fn euclidean_segment_is_straight() {
        let s = SpaceModel::euclidean(2);
        let g = s.geodesic_between(&Point::vec2(0.0, 0.0), &Point::vec2(2.0, 0.0)).unwrap();
        for &t in &[0.0, 0.5, 1.7, 2.0] {
            assert_eq!(g.point_at(t).unwrap(), Point::vec2(t, 0.0));
        }
        assert!(g.point_at(2.5).is_err());
    }

    #[test]
    fn tree_midpoint_of_leaves_is_centre() {
        let s = SpaceModel::tree(MetricTree::star(3, rat(1, 2), 2).unwrap());
        let m = s
            .midpoint(&Point::Tree(TreePoint::Vertex(1)), &Point::Tree(TreePoint::Vertex(2)))
            .unwrap();
        assert_eq!(m, Point::Tree(TreePoint::Vertex(0)));
    }

    #[test]
    fn tree_midpoint_on_two_edges_is_exact() {
        let tree = MetricTree::star(3, rat(1, 2), 2).unwrap();
        let s = SpaceModel::tree(tree.clone());
        let p = Point::Tree(tree.edge_point(0, rat(1, 10).into()).unwrap());
        let q = Point::Tree(tree.edge_point(1, rat(2, 5).into()).unwrap());
        let m = s.midpoint(&p, &q).unwrap();
        // path-length bisection: |pq| = 1/10 + 2/5 = 1/2, so m is 1/4 from p,
        // i.e. 3/20 past the centre on edge 1.
        assert_eq!(s.exact_distance(&p, &m).unwrap(), Some(rat(1, 4)));
        assert_eq!(s.exact_distance(&m, &q).unwrap(), Some(rat(1, 4)));
        assert_eq!(m, Point::Tree(tree.edge_point(1, rat(3, 20).into()).unwrap()));
    }

    #[test]
    fn hyperbolic_segment_passes_through_apex() {
        let s = SpaceModel::HyperbolicPlane;
        let (a, b) = (Point::half(-1.0, 0.1), Point::half(1.0, 0.1));
        let g = s.geodesic_between(&a, &b).unwrap();
        let len = g.length().unwrap();
        let apex = g.point_at(0.5 * len).unwrap();
        let r = (1.0f64 + 0.01).sqrt();
        match apex {
            Point::Half { x, y } => {
                assert!(close(x, 0.0, 1e-12));
                assert!(close(y, r, 1e-12));
            }
            _ => unreachable!(),
        }
        let end = g.point_at(len).unwrap();
        assert!(s.distance(&end, &b).unwrap() < 1e-9);
    }

    #[test]
    fn hyperbolic_standard_line() {
        let s = SpaceModel::HyperbolicPlane;
        let g = s
            .line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(1.0), None)
            .unwrap();
        assert_eq!(g.point_at(0.0).unwrap(), Point::half(0.0, 1.0));
        for &t in &[-3.0, -0.5, 1.0, 2.5] {
            match g.point_at(t).unwrap() {
                Point::Half { x, y } => assert!(close(x.hypot(y), 1.0, 1e-12)),
                _ => unreachable!(),
            }
        }
        assert!(s.line_through(&IdealPoint::Boundary(1.0), &IdealPoint::Boundary(1.0), None).is_err());
    }

    #[test]
    fn euclidean_ray() {
        let s = SpaceModel::euclidean(2);
        let xi = IdealPoint::direction(&[0.0, 1.0]).unwrap();
        let g = s.ray_from(&Point::vec2(1.0, 1.0), &xi).unwrap();
        assert_eq!(g.point_at(2.0).unwrap(), Point::vec2(1.0, 3.0));
        assert!(g.point_at(-1.0).is_err());
    }

    #[test]
    fn normed_lines_need_opposite_directions_and_anchor() {
        let s = SpaceModel::euclidean(2);
        let e = IdealPoint::direction(&[1.0, 0.0]).unwrap();
        let w = IdealPoint::direction(&[-1.0, 0.0]).unwrap();
        let n = IdealPoint::direction(&[0.0, 1.0]).unwrap();
        assert!(matches!(s.line_through(&w, &e, None), Err(LabError::Ambiguous(_))));
        assert!(s.line_through(&n, &e, Some(&Point::vec2(0.0, 0.0))).is_err());
        let l = s.line_through(&w, &e, Some(&Point::vec2(0.0, 1.0))).unwrap();
        assert_eq!(l.point_at(-2.0).unwrap(), Point::vec2(-2.0, 1.0));
    }

    #[test]
    fn tree_line_joins_ends_through_junction() {
        let tree = MetricTree::from_edges(
            4,
            &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2)), (1, 3, rat(1, 2))],
            2,
            &[0, 2, 3],
        )
        .unwrap();
        let s = SpaceModel::tree(tree);
        let l = s.line_through(&IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), None).unwrap();
        assert_eq!(l.point_at_scalar(rat(1, 2).into()).unwrap(), Point::Tree(TreePoint::Vertex(1)));
        let far_left = l.point_at_scalar(rat(-3, 1).into()).unwrap();
        let far_right = l.point_at_scalar(rat(4, 1).into()).unwrap();
        assert_eq!(s.exact_distance(&far_left, &far_right).unwrap(), Some(rat(7, 1)));
        assert!(s.line_through(&IdealPoint::TreeEnd(1), &IdealPoint::TreeEnd(1), None).is_err());
    }

    #[test]
    fn sphere_antipodes_are_ambiguous() {
        let s = SpaceModel::sphere(1.0 / std::f64::consts::PI, 3).unwrap();
        let n = Point::Vector(vec![0.0, 0.0, 1.0]);
        let south = Point::Vector(vec![0.0, 0.0, -1.0]);
        assert!(close(s.distance(&n, &south).unwrap(), 1.0, 1e-15));
        assert!(matches!(s.geodesic_between(&n, &south), Err(LabError::Ambiguous(_))));
    }

    #[test]
    fn identical_points_are_degenerate() {
        let s = SpaceModel::euclidean(2);
        let p = Point::vec2(1.0, 1.0);
        assert!(matches!(s.geodesic_between(&p, &p), Err(LabError::Degenerate(_))));
    }

    #[test]
    fn linf_midpoint_selectors() {
        let s = SpaceModel::MinkowskiLinf;
        let (a, b) = (Point::vec2(0.0, 0.0), Point::vec2(2.0, 0.0));
        assert_eq!(s.midpoint_with(&a, &b, MidpointSelector::UpperExtreme).unwrap(), Point::vec2(1.0, 1.0));
        assert_eq!(s.midpoint_with(&a, &b, MidpointSelector::LowerExtreme).unwrap(), Point::vec2(1.0, -1.0));
        assert_eq!(s.midpoint(&a, &b).unwrap(), Point::vec2(1.0, 0.0));
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let m = Point::vec2(1.0, t);
            assert_eq!(s.distance(&a, &m).unwrap(), 1.0);
            assert_eq!(s.distance(&m, &b).unwrap(), 1.0);
        }
    }

    #[test]
    fn max_product_distance_is_componentwise_max() {
        let s = SpaceModel::max_product(SpaceModel::euclidean(1), SpaceModel::RealLine).unwrap();
        let p = Point::pair(Point::real(0.0), Point::real(0.0));
        let q = Point::pair(Point::real(0.3), Point::real(-0.7));
        assert_eq!(s.distance(&p, &q).unwrap(), 0.7);
        assert!(matches!(s.geodesic_between(&p, &q), Err(LabError::Unsupported(_))));
    }

    #[test]
    fn space_model_json_round_trip() {
        let s = SpaceModel::tree(MetricTree::star(3, rat(1, 2), 2).unwrap());
        let text = serde_json::to_string(&s).unwrap();
        let back: SpaceModel = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
    }
}
