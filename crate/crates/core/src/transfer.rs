//! Horospherical transfers between asymptotic lines, the double transfer,
//! scissors and the shift of their translation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, LabError, Result};
use crate::horo::busemann_value;
use crate::numeric::bracket_and_bisect;
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::scalar::Scalar;
use crate::space::{Curve, GeodesicRef, IdealPoint, Point, SpaceModel};

/// Residual bound for transfers and incidences.
pub const TRANSFER_TOL: f64 = 1e-8;
/// Incidence residual below which a point counts as lying on a line.
pub const INCIDENCE_TOL: f64 = 1e-9;
const WINDOW_DOUBLINGS: usize = 20;

/// A point moved onto a target line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transfer {
    pub point: Point,
    pub param: Scalar,
    /// `|beta(point) - beta(m)|`.
    pub residual: f64,
}

/// Outcome of a double horospherical transfer `x = a(t) -> a(t')`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferResult {
    pub image: Point,
    /// `t' - t` measured on the line.
    pub shift: Scalar,
    /// `beta_a(b(0)) + beta_b(a(0))` (plus any synthetic level offset).
    pub predicted_shift: Scalar,
    pub residuals: Vec<f64>,
}

/// Ray of `line` towards its ideal end `xi`, with orientation `+1` if
/// `xi = line(+inf)` and `-1` if `xi = line(-inf)`.
fn ray_towards(line: &GeodesicRef, xi: &IdealPoint) -> Result<(GeodesicRef, f64)> {
    if line.end_ideal.as_ref().is_some_and(|e| e.same_as(xi, 1e-9)) {
        Ok((line.forward_ray()?, 1.0))
    } else if line.start_ideal.as_ref().is_some_and(|e| e.same_as(xi, 1e-9)) {
        Ok((line.backward_ray()?, -1.0))
    } else {
        domain(format!("line does not end at {xi:?}"))
    }
}

/// Parameter of `p` on `line` and the incidence residual `|p line(t)|`.
pub fn locate_on(space: &SpaceModel, line: &GeodesicRef, p: &Point) -> Result<(Scalar, Scalar)> {
    space.incidence(line, p)
}

fn lies_on(space: &SpaceModel, line: &GeodesicRef, p: &Point) -> bool {
    match locate_on(space, line, p) {
        Ok((_, r)) => r.is_zero() || (!r.is_exact() && r.to_f64() <= INCIDENCE_TOL),
        Err(_) => false,
    }
}

/// Moves `m` on `from` to the point `m'` of `to` on the same horosphere
/// of `xi`: `beta(m') = beta(m)` with `beta` the Busemann function of the
/// ray of `from` towards `xi`.
pub fn horospherical_transfer(
    space: &SpaceModel,
    from: &GeodesicRef,
    to: &GeodesicRef,
    xi: &IdealPoint,
    m: &Point,
) -> Result<Transfer> {
    let (ray, _) = ray_towards(from, xi)?;
    transfer_with(space, &ray, to, xi, m, Scalar::ZERO)
}

/// Solves `beta(to(s)) = beta(m) - offset` along `to`.
fn transfer_with(
    space: &SpaceModel,
    ray: &GeodesicRef,
    to: &GeodesicRef,
    xi: &IdealPoint,
    m: &Point,
    offset: Scalar,
) -> Result<Transfer> {
    let (_, sigma) = ray_towards(to, xi)?;
    let target = busemann_value(space, ray, m)? - offset;
    let to0 = to.point_at_scalar(Scalar::ZERO)?;
    let b0 = busemann_value(space, ray, &to0)?;
    let param = if to.is_tree() {
        // beta decreases at unit rate along a tree line towards xi.
        let s = if sigma > 0.0 { b0 - target } else { target - b0 };
        let p = to.point_at_scalar(s)?;
        let got = busemann_value(space, ray, &p)?;
        if !(got - target).is_zero() && (got - target).to_f64().abs() > TRANSFER_TOL {
            return Err(LabError::Search("tree transfer missed the horosphere".into()));
        }
        s
    } else {
        let guess = sigma * (b0 - target).to_f64();
        let half = 4.0 * (1.0 + space.distance(m, &to0)?);
        let f = |s: f64| match to.point_at(s).and_then(|p| busemann_value(space, ray, &p)) {
            Ok(b) => b.to_f64() - target.to_f64(),
            Err(_) => f64::NAN,
        };
        Scalar::Float(bracket_and_bisect(f, guess, half, WINDOW_DOUBLINGS, 1e-13)?)
    };
    let point = to.point_at_scalar(param)?;
    let residual = (busemann_value(space, ray, &point)? - target).abs().to_f64();
    if residual > TRANSFER_TOL {
        return Err(LabError::Search(format!("transfer residual {residual:e} exceeds {TRANSFER_TOL:e}")));
    }
    Ok(Transfer { point, param, residual })
}

/// Double transfer `T_{a<->b}` of `x` on `a`, for lines with a common end
/// `a(+inf) = b(+inf)`.
pub fn double_transfer(space: &SpaceModel, a: &GeodesicRef, b: &GeodesicRef, x: &Point) -> Result<TransferResult> {
    double_transfer_shifted(space, a, b, x, Scalar::ZERO)
}

/// Double transfer whose second leg lands on the horosphere of `b` moved
/// `level_offset` closer to the common end. When the plain transfer is the
/// identity, `n` applications with offset `1/n` take `a(t)` to `a(t + 1)`.
pub fn double_transfer_shifted(
    space: &SpaceModel,
    a: &GeodesicRef,
    b: &GeodesicRef,
    x: &Point,
    level_offset: Scalar,
) -> Result<TransferResult> {
    let xi = a
        .end_ideal
        .clone()
        .ok_or_else(|| LabError::Domain("double transfer needs a line".into()))?;
    if !b.end_ideal.as_ref().is_some_and(|e| e.same_as(&xi, 1e-9)) {
        return domain("lines are not asymptotic at a(+inf)");
    }
    let (t, res) = locate_on(space, a, x)?;
    if !res.is_zero() && res.to_f64() > INCIDENCE_TOL {
        return domain(format!("point is not on the line (residual {res})"));
    }
    let ray_a = a.forward_ray()?;
    let ray_b = b.forward_ray()?;
    let y = transfer_with(space, &ray_a, b, &xi, x, Scalar::ZERO)?;
    let back = transfer_with(space, &ray_b, a, &xi, &y.point, level_offset)?;
    let a0 = a.point_at_scalar(Scalar::ZERO)?;
    let b0 = b.point_at_scalar(Scalar::ZERO)?;
    let predicted = busemann_value(space, &ray_a, &b0)? + busemann_value(space, &ray_b, &a0)? + level_offset;
    Ok(TransferResult {
        image: back.point,
        shift: back.param - t,
        predicted_shift: predicted,
        residuals: vec![res.to_f64(), y.residual, back.residual],
    })
}

/// Four lines and a centre: `a(-inf) = b(-inf)`, `a(+inf) = c(+inf)`,
/// `c(-inf) = d(-inf)`, `b(+inf) = d(+inf)`, `x` on `b` and `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScissorsConfig {
    pub a: GeodesicRef,
    pub b: GeodesicRef,
    pub c: GeodesicRef,
    pub d: GeodesicRef,
    pub x: Point,
}

/// Scissors described by the ideal endpoints of the base `a` and the
/// opposite line `d`; `b` and `c` are forced by the incidence pattern.
/// Normed models need anchors `a(0), b(0), c(0), d(0)`; the centre may be
/// omitted in the hyperbolic plane and in trees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScissorsSpec {
    pub a_minus: IdealPoint,
    pub a_plus: IdealPoint,
    pub d_minus: IdealPoint,
    pub d_plus: IdealPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<[Point; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Point>,
}

impl ScissorsSpec {
    pub fn build(&self, space: &SpaceModel) -> Result<ScissorsConfig> {
        let anchor = |i: usize| self.anchors.as_ref().map(|a| &a[i]);
        let a = space.line_through(&self.a_minus, &self.a_plus, anchor(0))?;
        let b = space.line_through(&self.a_minus, &self.d_plus, anchor(1))?;
        let c = space.line_through(&self.d_minus, &self.a_plus, anchor(2))?;
        let d = space.line_through(&self.d_minus, &self.d_plus, anchor(3))?;
        let x = match &self.center {
            Some(x) => x.clone(),
            None => line_intersection(space, &b, &c)?,
        };
        Ok(ScissorsConfig { a, b, c, d, x })
    }
}

impl ScissorsConfig {
    /// Hyperbolic scissors from the four boundary points of `a` and `d`.
    pub fn hyperbolic(a_minus: f64, a_plus: f64, d_minus: f64, d_plus: f64) -> Result<Self> {
        ScissorsSpec {
            a_minus: IdealPoint::Boundary(a_minus),
            a_plus: IdealPoint::Boundary(a_plus),
            d_minus: IdealPoint::Boundary(d_minus),
            d_plus: IdealPoint::Boundary(d_plus),
            anchors: None,
            center: None,
        }
        .build(&SpaceModel::HyperbolicPlane)
    }
}

/// A common point of two lines: closed form for hyperbolic geodesics,
/// a shared vertex for tree lines.
pub fn line_intersection(space: &SpaceModel, b: &GeodesicRef, c: &GeodesicRef) -> Result<Point> {
    match (space, &b.curve, &c.curve) {
        (
            SpaceModel::HyperbolicPlane,
            Curve::Arc { center: c1, radius: r1, .. },
            Curve::Arc { center: c2, radius: r2, .. },
        ) => {
            if (c1 - c2).abs() < 1e-15 {
                return domain("concentric geodesics do not meet");
            }
            let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
            let h2 = r1 * r1 - (x - c1).powi(2);
            if h2 <= 0.0 {
                return domain("geodesics do not meet");
            }
            Ok(Point::half(x, h2.sqrt()))
        }
        (SpaceModel::HyperbolicPlane, Curve::Arc { center, radius, .. }, Curve::Vertical { x, .. })
        | (SpaceModel::HyperbolicPlane, Curve::Vertical { x, .. }, Curve::Arc { center, radius, .. }) => {
            let h2 = radius * radius - (x - center).powi(2);
            if h2 <= 0.0 {
                return domain("geodesics do not meet");
            }
            Ok(Point::half(*x, h2.sqrt()))
        }
        (SpaceModel::MetricTree { tree }, Curve::Tree { .. }, Curve::Tree { .. }) => (0..tree.vertex_count())
            .map(|v| Point::Tree(crate::space::TreePoint::Vertex(v)))
            .find(|p| lies_on(space, b, p) && lies_on(space, c, p))
            .ok_or_else(|| LabError::Domain("tree lines share no vertex".into())),
        _ => domain(format!("no closed-form intersection in {}", space.name())),
    }
}

/// The five incidence conditions and the degeneracy flag (`x` on `a` and
/// on `d`), reported as metric `degenerate` (1 or 0).
pub fn validate_scissors(space: &SpaceModel, cfg: &ScissorsConfig) -> VerificationReport {
    let mut rep = ReportBuilder::new(format!("scissors[{}]", space.name()), INCIDENCE_TOL);
    let same = |p: &Option<IdealPoint>, q: &Option<IdealPoint>| match (p, q) {
        (Some(p), Some(q)) => p.same_as(q, 1e-9),
        _ => false,
    };
    let ends = [
        ("a(-inf)=b(-inf)", &cfg.a.start_ideal, &cfg.b.start_ideal),
        ("a(+inf)=c(+inf)", &cfg.a.end_ideal, &cfg.c.end_ideal),
        ("c(-inf)=d(-inf)", &cfg.c.start_ideal, &cfg.d.start_ideal),
        ("b(+inf)=d(+inf)", &cfg.b.end_ideal, &cfg.d.end_ideal),
    ];
    for (name, p, q) in ends {
        rep.record(same(p, q), || Witness::new(vec![name.to_string(), format!("{p:?}"), format!("{q:?}")]));
    }
    let residual = |line: &GeodesicRef| match locate_on(space, line, &cfg.x) {
        Ok((_, r)) => r,
        Err(_) => Scalar::Float(f64::INFINITY),
    };
    let on = |r: Scalar| r.is_zero() || (!r.is_exact() && r.to_f64() <= INCIDENCE_TOL);
    for (name, line) in [("x on b", &cfg.b), ("x on c", &cfg.c)] {
        let r = residual(line);
        rep.max_metric("max_center_residual", r.to_f64());
        rep.record(on(r), || Witness::new(vec![name.to_string(), space.describe_point(&cfg.x)]).with("residual", r.to_f64()));
    }
    let degenerate = on(residual(&cfg.a)) && on(residual(&cfg.d));
    rep.metric("degenerate", if degenerate { 1.0 } else { 0.0 });
    rep.finish()
}

/// `delta T` computed by composing the four transfers and by the
/// four-term Busemann formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScissorsShift {
    pub by_composition: Scalar,
    pub by_formula: Scalar,
}

/// `T = R_ba . R_db . R_cd . R_ac` applied to the probe `a(probe)`;
/// returns `beta_{a-}(T m) - beta_{a-}(m)`.
pub fn scissors_shift_by_composition(space: &SpaceModel, cfg: &ScissorsConfig, probe: Scalar) -> Result<Scalar> {
    let ends = |l: &GeodesicRef, plus: bool| {
        if plus { l.end_ideal.clone() } else { l.start_ideal.clone() }
            .ok_or_else(|| LabError::Domain("scissors lines must be lines".into()))
    };
    let m = cfg.a.point_at_scalar(probe)?;
    let m1 = horospherical_transfer(space, &cfg.a, &cfg.c, &ends(&cfg.a, true)?, &m)?;
    let m2 = horospherical_transfer(space, &cfg.c, &cfg.d, &ends(&cfg.d, false)?, &m1.point)?;
    let m3 = horospherical_transfer(space, &cfg.d, &cfg.b, &ends(&cfg.d, true)?, &m2.point)?;
    let m4 = horospherical_transfer(space, &cfg.b, &cfg.a, &ends(&cfg.a, false)?, &m3.point)?;
    let beta_a_minus = cfg.a.backward_ray()?;
    Ok(busemann_value(space, &beta_a_minus, &m4.point)? - busemann_value(space, &beta_a_minus, &m)?)
}

/// `beta_{a-}(x) + beta_{a+}(x) + beta_{d-}(x) + beta_{d+}(x)` with the
/// `a`-functions vanishing at `a(p)` and the `d`-functions at `d(q)`.
pub fn scissors_shift_by_formula(space: &SpaceModel, cfg: &ScissorsConfig, p: Scalar, q: Scalar) -> Result<Scalar> {
    let a = cfg.a.shifted(p)?;
    let d = cfg.d.shifted(q)?;
    let mut total = Scalar::ZERO;
    for ray in [a.backward_ray()?, a.forward_ray()?, d.backward_ray()?, d.forward_ray()?] {
        total = total + busemann_value(space, &ray, &cfg.x)?;
    }
    Ok(total)
}

/// Both values of `delta T`, with probe `a(0)` and normalisation points
/// `a(0)`, `d(0)`.
pub fn scissors_shift(space: &SpaceModel, cfg: &ScissorsConfig) -> Result<ScissorsShift> {
    Ok(ScissorsShift {
        by_composition: scissors_shift_by_composition(space, cfg, Scalar::ZERO)?,
        by_formula: scissors_shift_by_formula(space, cfg, Scalar::ZERO, Scalar::ZERO)?,
    })
}
