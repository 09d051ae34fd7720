use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{bisect, golden_min};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::space::{Domain, GeodesicRef, Point, SpaceModel};

const STRIP_TOL: f64 = 1e-6;
const PROBES: [f64; 6] = [-20.0, -10.0, -5.0, 5.0, 10.0, 20.0];

/// One entry of the fitted norm table: `N(alpha, beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub alpha: f64,
    pub beta: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripResult {
    pub is_strip: bool,
    pub report: VerificationReport,
    /// Norm on unit Euclidean directions in strip coordinates.
    pub table: Vec<NormSample>,
}

struct Strip<'a> {
    space: &'a SpaceModel,
    a: &'a GeodesicRef,
    b: &'a GeodesicRef,
    shift: f64,
    orient: f64,
}

impl Strip<'_> {
    fn b_at(&self, s: f64) -> Result<Point> {
        self.b.point_at(self.shift + self.orient * s)
    }

    /// Point at fraction `beta` of the segment from `a(alpha)` to the
    /// matching point of `b`.
    fn at(&self, alpha: f64, beta: f64) -> Result<Point> {
        let p = self.a.point_at(alpha)?;
        if beta == 0.0 {
            return Ok(p);
        }
        let q = self.b_at(alpha)?;
        let g = self.space.geodesic_between(&p, &q)?;
        let len = g.length().expect("segment");
        g.point_at(beta * len)
    }

    fn dist(&self, p: (f64, f64), q: (f64, f64)) -> Result<f64> {
        self.space.distance(&self.at(p.0, p.1)?, &self.at(q.0, q.1)?)
    }

    /// `(1/lambda) * |P(0, 1/2) P(lambda alpha, 1/2 + lambda beta)|`.
    fn norm_with(&self, alpha: f64, beta: f64, lambda: f64) -> Result<f64> {
        Ok(self.dist((0.0, 0.5), (lambda * alpha, 0.5 + lambda * beta))? / lambda)
    }

    fn lambda_for(beta: f64) -> f64 {
        if beta == 0.0 {
            1.0
        } else {
            (0.5 / beta.abs()).min(1.0)
        }
    }

    fn norm(&self, alpha: f64, beta: f64) -> Result<f64> {
        self.norm_with(alpha, beta, Self::lambda_for(beta))
    }
}

/// Distance from `p` to the line `b`, searched near parameter `center`.
fn distance_to_line(space: &SpaceModel, p: &Point, b: &GeodesicRef, center: f64) -> Result<(f64, f64)> {
    let w = 4.0 * (1.0 + space.distance(p, &b.point_at(center)?)?);
    let mut err = None;
    let (s, d) = golden_min(
        |s| match b.point_at(s).and_then(|q| space.distance(p, &q)) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::INFINITY
            }
        },
        center - w,
        center + w,
        1e-10,
    );
    match err {
        Some(e) if !d.is_finite() => Err(e),
        _ => Ok((s, d)),
    }
}

/// Centre of the sublevel set `{s : |p b(s)| <= width + 1}`. Near the
/// foot the distance is flat (cubic for `l^3`), so the centre of a
/// level set pins the alignment far more precisely than the minimiser.
fn aligned_shift(space: &SpaceModel, p: &Point, b: &GeodesicRef, foot: f64, width: f64) -> Result<f64> {
    let level = width + 1.0;
    let f = |s: f64| b.point_at(s).and_then(|q| space.distance(p, &q)).map(|d| d - level).unwrap_or(f64::NAN);
    let mut roots = [0.0; 2];
    for (k, dir) in [-1.0, 1.0].into_iter().enumerate() {
        let mut w = 2.0;
        while f(foot + dir * w) <= 0.0 && w < 1e6 {
            w *= 2.0;
        }
        let (lo, hi) = if dir < 0.0 { (foot - w, foot) } else { (foot, foot + w) };
        roots[k] = bisect(f, lo, hi, 1e-15, 0.0)?;
    }
    Ok(0.5 * (roots[0] + roots[1]))
}

/// Tests whether lines `a` and `b` bound a normed strip and fits the
/// norm `N(alpha, beta)` in strip coordinates.
///
/// Strip coordinates: `P(alpha, beta)` is the point at fraction `beta` of
/// the segment from `a(alpha)` to the point of `b` aligned with it. Lines
/// whose distance profile is not constant are reported as not a strip.
pub fn detect_normed_strip(
    space: &SpaceModel,
    a: &GeodesicRef,
    b: &GeodesicRef,
    grid: usize,
) -> Result<StripResult> {
    if a.domain != Domain::Line || b.domain != Domain::Line {
        return domain("normed strips are bounded by lines");
    }
    if grid < 2 {
        return domain("grid must be at least 2");
    }
    let mut rep = ReportBuilder::new(format!("normed_strip[{}]", space.name()), STRIP_TOL);
    let a0 = a.point_at(0.0)?;
    let (foot, width) = distance_to_line(space, &a0, b, 0.0)?;
    let shift = aligned_shift(space, &a0, b, foot, width)?;
    rep.metric("width", width);
    let forward = space.distance(&a.point_at(10.0)?, &b.point_at(shift + 10.0)?)?;
    let backward = space.distance(&a.point_at(10.0)?, &b.point_at(shift - 10.0)?)?;
    let orient = if forward <= backward { 1.0 } else { -1.0 };

    let mut parallel = width > STRIP_TOL;
    for &t in &PROBES {
        let (_, h) = distance_to_line(space, &a.point_at(t)?, b, shift + orient * t)?;
        rep.max_metric("max_width_drift", (h - width).abs());
        let ok = rep.record((h - width).abs() <= STRIP_TOL, || {
            Witness::new(vec![format!("a({t})")]).with("width_at_t", h).with("width_at_0", width)
        });
        parallel &= ok;
    }
    if !parallel {
        rep.note("not a strip: the distance to the other line is not constant");
        return Ok(StripResult { is_strip: false, report: rep.finish(), table: Vec::new() });
    }

    let strip = Strip { space, a, b, shift, orient };
    let dirs = 4 * grid;
    let mut table = Vec::with_capacity(dirs);
    for k in 0..dirs {
        let th = std::f64::consts::TAU * k as f64 / dirs as f64;
        let (alpha, beta) = (th.cos(), th.sin());
        let lambda = Strip::lambda_for(beta);
        let n = strip.norm_with(alpha, beta, lambda)?;
        let n_half = strip.norm_with(alpha, beta, 0.5 * lambda)?;
        let n_neg = strip.norm(-alpha, -beta)?;
        rep.max_metric("max_homogeneity_error", (n - n_half).abs());
        rep.record((n - n_half).abs() <= STRIP_TOL, || {
            Witness::new(vec![format!("({alpha:.6}, {beta:.6})")])
                .with("lambda_norm", n)
                .with("half_lambda_norm", n_half)
        });
        rep.record((n - n_neg).abs() <= STRIP_TOL, || {
            Witness::new(vec![format!("({alpha:.6}, {beta:.6})")]).with("norm", n).with("norm_of_negative", n_neg)
        });
        table.push(NormSample { alpha, beta, norm: n });
    }
    for u in &table {
        for v in &table {
            let sum = strip.norm(u.alpha + v.alpha, u.beta + v.beta)?;
            rep.record(sum <= u.norm + v.norm + STRIP_TOL, || {
                Witness::new(vec![
                    format!("({:.6}, {:.6})", u.alpha, u.beta),
                    format!("({:.6}, {:.6})", v.alpha, v.beta),
                ])
                .with("norm_of_sum", sum)
                .with("sum_of_norms", u.norm + v.norm)
            });
        }
    }
    let coords: Vec<(f64, f64)> = (0..grid)
        .flat_map(|i| {
            (0..grid).map(move |j| {
                let alpha = -2.0 + 4.0 * i as f64 / (grid - 1) as f64;
                let beta = j as f64 / (grid - 1) as f64;
                (alpha, beta)
            })
        })
        .collect();
    for (i, &p) in coords.iter().enumerate() {
        for &q in &coords[i + 1..] {
            let cross = strip.dist(p, q)?;
            let fitted = strip.norm(q.0 - p.0, q.1 - p.1)?;
            rep.max_metric("max_cross_distance_error", (cross - fitted).abs());
            rep.record((cross - fitted).abs() <= STRIP_TOL, || {
                Witness::new(vec![format!("P{p:?}"), format!("P{q:?}")])
                    .with("distance", cross)
                    .with("fitted_norm", fitted)
            });
        }
    }
    let report = rep.finish();
    Ok(StripResult { is_strip: report.passed(), report, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{IdealPoint, Norm};

    fn horizontal(space: &SpaceModel, y: f64) -> GeodesicRef {
        let w = IdealPoint::direction(&[-1.0, 0.0]).unwrap();
        let e = IdealPoint::direction(&[1.0, 0.0]).unwrap();
        space.line_through(&w, &e, Some(&Point::vec2(0.3, y))).unwrap()
    }

    #[test]
    fn euclidean_strip_fits_euclidean_norm() {
        let s = SpaceModel::euclidean(2);
        let r = detect_normed_strip(&s, &horizontal(&s, 0.0), &horizontal(&s, 1.0), 4).unwrap();
        assert!(r.is_strip, "{:?}", r.report.witnesses);
        for e in &r.table {
            assert!((e.norm - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn lp_strip_fits_lp_norm() {
        let s = SpaceModel::minkowski(3.0).unwrap();
        let r = detect_normed_strip(&s, &horizontal(&s, 0.0), &horizontal(&s, 1.0), 4).unwrap();
        assert!(r.is_strip, "{:?}", r.report.witnesses);
        for e in &r.table {
            assert!((e.norm - Norm::Lp(3.0).eval(&[e.alpha, e.beta])).abs() < 1e-6, "{e:?} {}", Norm::Lp(3.0).eval(&[e.alpha, e.beta]));
        }
    }

    #[test]
    fn hyperbolic_lines_are_not_a_strip() {
        let s = SpaceModel::HyperbolicPlane;
        let a = s.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(1.0), None).unwrap();
        let b = s.line_through(&IdealPoint::Boundary(-2.0), &IdealPoint::Boundary(2.0), None).unwrap();
        let r = detect_normed_strip(&s, &a, &b, 4).unwrap();
        assert!(!r.is_strip);
        assert!(!r.report.passed());
        let c = s.line_through(&IdealPoint::Boundary(2.0), &IdealPoint::Infinity, None).unwrap();
        let d = s.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Infinity, None).unwrap();
        assert!(!detect_normed_strip(&s, &c, &d, 4).unwrap().is_strip);
    }
}
