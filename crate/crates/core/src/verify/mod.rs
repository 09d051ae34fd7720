//! Predicates over samples: metric axioms, Busemann convexity, Hausdorff
//! distance, normed strips, isometries and unit-distance preservation.

mod bijection;
mod sample;
mod strip;

use serde::{Deserialize, Serialize};

pub use bijection::{BijectionSpec, PointMap};
pub use sample::{random_point, tree_lattice, SampleSet, SampleSpec};
pub use strip::{detect_normed_strip, NormSample, StripResult};

use crate::error::{domain, Result};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::scalar::{Rational, Scalar};
use crate::space::{GeodesicRef, MidpointSelector, Point, SpaceModel};

/// Tolerance for the triangle inequality and other float comparisons.
pub const METRIC_TOL: f64 = 1e-9;
/// `|d - 1| <= UNIT_TOL` counts as unit distance on continuous models.
pub const UNIT_TOL: f64 = 1e-9;

/// `a <= b`, exactly when both sides are exact.
pub fn scalar_le(a: Scalar, b: Scalar, tol: f64) -> bool {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x <= y,
        _ => a.to_f64() <= b.to_f64() + tol,
    }
}

pub fn scalar_eq(a: Scalar, b: Scalar, tol: f64) -> bool {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
        _ => (a.to_f64() - b.to_f64()).abs() <= tol,
    }
}

/// Which unit-distance relation a map should preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitMode {
    /// `d = 1`
    Eq,
    /// `d <= 1`
    Le,
    /// `d < 1`
    Lt,
}

/// Classifies a distance against 1, snapping `|d - 1| <= tol` to 1 on
/// floats and comparing exactly on rationals.
pub fn unit_relation(d: Scalar, mode: UnitMode, tol: f64) -> bool {
    let one = Rational::from_integer(1);
    match d {
        Scalar::Exact(q) => match mode {
            UnitMode::Eq => q == one,
            UnitMode::Le => q <= one,
            UnitMode::Lt => q < one,
        },
        Scalar::Float(x) => {
            let snapped = (x - 1.0).abs() <= tol;
            match mode {
                UnitMode::Eq => snapped,
                UnitMode::Le => snapped || x < 1.0,
                UnitMode::Lt => !snapped && x < 1.0,
            }
        }
    }
}

fn label(space: &SpaceModel, pts: &[&Point]) -> Vec<String> {
    pts.iter().map(|p| space.describe_point(p)).collect()
}

/// Symmetry, identity of indiscernibles and the triangle inequality on
/// consecutive triples of the sample.
pub fn check_metric_axioms(space: &SpaceModel, sample: &SampleSet) -> VerificationReport {
    let mut rep = ReportBuilder::new(format!("metric_axioms[{}]", space.name()), METRIC_TOL);
    for tri in sample.points.chunks_exact(3) {
        let (x, y, z) = (&tri[0], &tri[1], &tri[2]);
        let d = |a: &Point, b: &Point| space.distance_scalar(a, b);
        let (Ok(xy), Ok(yx), Ok(yz), Ok(xz), Ok(xx)) = (d(x, y), d(y, x), d(y, z), d(x, z), d(x, x))
        else {
            rep.fail(Witness::new(label(space, &[x, y, z])).with("evaluation_error", 1.0));
            continue;
        };
        rep.record(scalar_eq(xy, yx, 0.0), || {
            Witness::new(label(space, &[x, y]))
                .with("d_xy", xy.to_f64())
                .with("d_yx", yx.to_f64())
        });
        rep.record(xx.is_zero() || xx.to_f64() == 0.0, || {
            Witness::new(label(space, &[x])).with("d_xx", xx.to_f64())
        });
        rep.record(x == y || xy.to_f64() > 0.0, || {
            Witness::new(label(space, &[x, y])).with("d_xy", xy.to_f64())
        });
        rep.record(scalar_le(xz, xy + yz, METRIC_TOL), || {
            Witness::new(label(space, &[x, y, z]))
                .with("d_xz", xz.to_f64())
                .with("d_xy+d_yz", (xy + yz).to_f64())
        });
        rep.max_metric("max_triangle_excess", xz.to_f64() - (xy + yz).to_f64());
    }
    rep.finish()
}

/// Busemann's midpoint inequality `|mn| <= |yz| / 2` for `m` the midpoint
/// of `x, y` and `n` the midpoint of `x, z`.
pub fn check_busemann_midpoints(
    space: &SpaceModel,
    x: &Point,
    y: &Point,
    z: &Point,
    selectors: (MidpointSelector, MidpointSelector),
) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new(format!("busemann_midpoints[{}]", space.name()), METRIC_TOL);
    busemann_triple(space, x, y, z, selectors, &mut rep)?;
    Ok(rep.finish())
}

fn busemann_triple(
    space: &SpaceModel,
    x: &Point,
    y: &Point,
    z: &Point,
    (sm, sn): (MidpointSelector, MidpointSelector),
    rep: &mut ReportBuilder,
) -> Result<()> {
    let m = space.midpoint_with(x, y, sm)?;
    let n = space.midpoint_with(x, z, sn)?;
    let mn = space.distance_scalar(&m, &n)?;
    let half_yz = space.distance_scalar(y, z)?.half();
    rep.max_metric("max_excess", mn.to_f64() - half_yz.to_f64());
    rep.record(scalar_le(mn, half_yz, METRIC_TOL), || {
        Witness::new(label(space, &[x, y, z, &m, &n]))
            .with("mn", mn.to_f64())
            .with("half_yz", half_yz.to_f64())
    });
    Ok(())
}

/// Midpoint inequality on consecutive triples of a sample, skipping
/// triples with repeated points.
pub fn check_busemann_on_sample(space: &SpaceModel, sample: &SampleSet) -> VerificationReport {
    let mut rep = ReportBuilder::new(format!("busemann_midpoints[{}]", space.name()), METRIC_TOL);
    let sel = (MidpointSelector::Affine, MidpointSelector::Affine);
    let mut skipped = 0usize;
    for tri in sample.points.chunks_exact(3) {
        let (x, y, z) = (&tri[0], &tri[1], &tri[2]);
        if x == y || x == z || y == z {
            skipped += 1;
            continue;
        }
        if let Err(e) = busemann_triple(space, x, y, z, sel, &mut rep) {
            rep.fail(Witness::new(label(space, &[x, y, z])).with("evaluation_error", 1.0));
            rep.note(e.to_string());
        }
    }
    rep.metric("skipped_triples", skipped as f64);
    rep.finish()
}

/// Midpoint convexity of `D(t, s) = |g1(t) g2(s)|` over all pairs of
/// points of a `(grid+1) x (grid+1)` parameter lattice.
pub fn check_distance_convexity(
    space: &SpaceModel,
    g1: &GeodesicRef,
    g2: &GeodesicRef,
    grid: usize,
) -> Result<VerificationReport> {
    let (Some(l1), Some(l2)) = (g1.length_scalar(), g2.length_scalar()) else {
        return domain("distance convexity needs two segments");
    };
    if grid == 0 {
        return domain("grid must be positive");
    }
    let param = |len: Scalar, i: usize| {
        let f = Scalar::Exact(Rational::new(i as i64, 2 * grid as i64));
        f * len
    };
    // Lattice in half-steps so that midpoints of lattice pairs stay on it.
    let n = 2 * grid + 1;
    let mut d = vec![vec![Scalar::ZERO; n]; n];
    let p1: Vec<Point> = (0..n).map(|i| g1.point_at_scalar(param(l1, i))).collect::<Result<_>>()?;
    let p2: Vec<Point> = (0..n).map(|j| g2.point_at_scalar(param(l2, j))).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            d[i][j] = space.distance_scalar(&p1[i], &p2[j])?;
        }
    }
    let mut rep = ReportBuilder::new(format!("distance_convexity[{}]", space.name()), METRIC_TOL);
    let even: Vec<usize> = (0..n).step_by(2).collect();
    for &i1 in &even {
        for &j1 in &even {
            for &i2 in &even {
                for &j2 in &even {
                    if (i1, j1) >= (i2, j2) {
                        continue;
                    }
                    let (im, jm) = ((i1 + i2) / 2, (j1 + j2) / 2);
                    let avg = (d[i1][j1] + d[i2][j2]).half();
                    let mid = d[im][jm];
                    rep.max_metric("max_excess", mid.to_f64() - avg.to_f64());
                    rep.record(scalar_le(mid, avg, METRIC_TOL), || {
                        Witness::new(label(space, &[&p1[i1], &p2[j1], &p1[i2], &p2[j2], &p1[im], &p2[jm]]))
                            .with("d_mid", mid.to_f64())
                            .with("average", avg.to_f64())
                    });
                }
            }
        }
    }
    Ok(rep.finish())
}

/// Hausdorff distance between two finite samples.
pub fn hausdorff_distance(space: &SpaceModel, a: &SampleSet, b: &SampleSet) -> Result<f64> {
    hausdorff_points(space, &a.points, &b.points)
}

pub fn hausdorff_points(space: &SpaceModel, a: &[Point], b: &[Point]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return domain("Hausdorff distance of an empty set");
    }
    let directed = |from: &[Point], to: &[Point]| -> Result<f64> {
        let mut sup = 0.0f64;
        for p in from {
            let mut inf = f64::INFINITY;
            for q in to {
                inf = inf.min(space.distance(p, q)?);
            }
            sup = sup.max(inf);
        }
        Ok(sup)
    };
    Ok(directed(a, b)?.max(directed(b, a)?))
}

fn images(
    f: &BijectionSpec,
    sample: &SampleSet,
    rep: &mut ReportBuilder,
    x_space: &SpaceModel,
) -> Vec<Option<Point>> {
    sample
        .points
        .iter()
        .map(|p| match f.apply(p) {
            Ok(q) => Some(q),
            Err(e) => {
                rep.fail(Witness::new(label(x_space, &[p])).with("map_error", 1.0));
                rep.note(e.to_string());
                None
            }
        })
        .collect()
}

/// `d_Y(f x, f y) = d_X(x, y)` on all sample pairs; exact on trees.
pub fn is_isometry(
    x_space: &SpaceModel,
    y_space: &SpaceModel,
    f: &BijectionSpec,
    sample: &SampleSet,
    tol: f64,
) -> VerificationReport {
    let mut rep = ReportBuilder::new(format!("is_isometry[{}]", f.name), tol);
    let img = images(f, sample, &mut rep, x_space);
    let pts = &sample.points;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (Some(fi), Some(fj)) = (&img[i], &img[j]) else { continue };
            let (dx, dy) = match (x_space.distance_scalar(&pts[i], &pts[j]), y_space.distance_scalar(fi, fj)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    rep.fail(Witness::new(label(x_space, &[&pts[i], &pts[j]])).with("distance_error", 1.0));
                    continue;
                }
            };
            rep.max_metric("max_deviation", (dx.to_f64() - dy.to_f64()).abs());
            rep.record(scalar_eq(dx, dy, tol), || {
                let mut pts_lbl = label(x_space, &[&pts[i], &pts[j]]);
                pts_lbl.extend(label(y_space, &[fi, fj]));
                Witness::new(pts_lbl).with("d_x", dx.to_f64()).with("d_y", dy.to_f64())
            });
        }
    }
    rep.finish()
}

/// Checks that `f` preserves the relation `d = 1` (or `<= 1`, `< 1`) in
/// both directions on all sample pairs, that the declared inverse undoes
/// `f`, and that the inverse preserves the relation on the image pairs.
pub fn preserves_unit_distance(
    x_space: &SpaceModel,
    y_space: &SpaceModel,
    f: &BijectionSpec,
    sample: &SampleSet,
    mode: UnitMode,
    tol: f64,
) -> VerificationReport {
    let mut rep = ReportBuilder::new(format!("preserves_unit_distance[{}, {:?}]", f.name, mode), tol);
    let img = images(f, sample, &mut rep, x_space);
    let pts = &sample.points;
    let mut back = Vec::with_capacity(pts.len());
    for (p, q) in pts.iter().zip(&img) {
        let Some(q) = q else {
            back.push(None);
            continue;
        };
        match f.invert(q) {
            Ok(r) => {
                let err = x_space.distance_scalar(p, &r).map(|d| d.to_f64()).unwrap_or(f64::INFINITY);
                rep.max_metric("max_inverse_error", err);
                rep.record(err <= 1e-12, || {
                    Witness::new(label(x_space, &[p, &r])).with("inverse_error", err)
                });
                back.push(Some(r));
            }
            Err(e) => {
                rep.fail(Witness::new(label(y_space, &[q])).with("inverse_error", f64::INFINITY));
                rep.note(e.to_string());
                back.push(None);
            }
        }
    }
    let mut unit_pairs = 0usize;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (Some(fi), Some(fj)) = (&img[i], &img[j]) else { continue };
            let (Ok(dx), Ok(dy)) = (x_space.distance_scalar(&pts[i], &pts[j]), y_space.distance_scalar(fi, fj))
            else {
                rep.fail(Witness::new(label(x_space, &[&pts[i], &pts[j]])).with("distance_error", 1.0));
                continue;
            };
            let (rx, ry) = (unit_relation(dx, mode, tol), unit_relation(dy, mode, tol));
            unit_pairs += rx as usize;
            rep.record(rx == ry, || {
                let mut l = label(x_space, &[&pts[i], &pts[j]]);
                l.extend(label(y_space, &[fi, fj]));
                Witness::new(l).with("d_x", dx.to_f64()).with("d_y", dy.to_f64())
            });
            if let (Some(bi), Some(bj)) = (&back[i], &back[j]) {
                if let Ok(db) = x_space.distance_scalar(bi, bj) {
                    let rb = unit_relation(db, mode, tol);
                    rep.record(rb == ry, || {
                        let mut l = label(y_space, &[fi, fj]);
                        l.extend(label(x_space, &[bi, bj]));
                        Witness::new(l).with("d_y", dy.to_f64()).with("d_inverse", db.to_f64())
                    });
                }
            }
        }
    }
    rep.metric("related_pairs", unit_pairs as f64);
    rep.finish()
}
