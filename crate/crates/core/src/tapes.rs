//! r-sequences, p-tapes in normed strips and the third-division lemma.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, LabError, Result};
use crate::numeric::{bisect, golden_min};
use crate::report::{ReportBuilder, VerificationReport, Witness};
use crate::scalar::{rat, Rational, Scalar};
use crate::space::{Curve, GeodesicRef, Norm, Point, SpaceModel};
use crate::verify::METRIC_TOL;

/// Isometric image of an integer window `z_min..z_min + len`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RSequence {
    pub space: SpaceModel,
    pub z_min: i64,
    pub points: Vec<Point>,
}

impl RSequence {
    pub fn new(space: SpaceModel, z_min: i64, points: Vec<Point>) -> Self {
        RSequence { space, z_min, points }
    }

    pub fn z_max(&self) -> i64 {
        self.z_min + self.points.len() as i64 - 1
    }

    pub fn get(&self, z: i64) -> Option<&Point> {
        usize::try_from(z - self.z_min).ok().and_then(|k| self.points.get(k))
    }
}

fn close_to(space: &SpaceModel, x: &Point, y: &Point, target: Rational) -> Result<(bool, f64)> {
    let d = space.distance_scalar(x, y)?;
    let err = (d - Scalar::Exact(target)).abs();
    let ok = match err {
        Scalar::Exact(e) => e == rat(0, 1),
        Scalar::Float(e) => e <= METRIC_TOL,
    };
    Ok((ok, err.to_f64()))
}

fn check_sequence(rep: &mut ReportBuilder, seq: &RSequence, label: &str) -> Result<()> {
    for (k1, x) in seq.points.iter().enumerate() {
        for (k2, y) in seq.points.iter().enumerate().skip(k1 + 1) {
            let (z1, z2) = (seq.z_min + k1 as i64, seq.z_min + k2 as i64);
            let (ok, err) = close_to(&seq.space, x, y, rat(z2 - z1, 1))?;
            rep.max_metric("max_error", err);
            rep.record(ok, || {
                Witness::new(vec![label.to_string(), z1.to_string(), z2.to_string()]).with("error", err)
            });
        }
    }
    Ok(())
}

/// `d(x_{z1}, x_{z2}) = |z1 - z2|` on every pair of the window.
pub fn validate_r_sequence(seq: &RSequence) -> Result<VerificationReport> {
    if seq.points.len() < 2 {
        return domain("r-sequence window needs at least two points");
    }
    let mut rep = ReportBuilder::new(format!("r_sequence[{}]", seq.space.name()), METRIC_TOL);
    check_sequence(&mut rep, seq, "row")?;
    Ok(rep.finish())
}

/// `(j - 1)(2p - 1)/p + z`, the parameter of `x_{1,j,z}` on the line
/// carrying the first row.
pub fn tape_position(p: usize, j: usize, z: i64) -> Result<Rational> {
    if p == 0 || j == 0 || j > p {
        return domain(format!("row index j = {j} outside 1..={p}"));
    }
    let p = p as i64;
    Ok(rat((j as i64 - 1) * (2 * p - 1), p) + rat(z, 1))
}

type TapeKey = (usize, usize, i64);

mod keyed {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<TapeKey, Point>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let out: BTreeMap<String, &Point> = m.iter().map(|((i, j, z), p)| (format!("{i},{j},{z}"), p)).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<TapeKey, Point>, D::Error> {
        let raw = BTreeMap::<String, Point>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, p)| {
                let parts: Vec<&str> = k.split(',').collect();
                let bad = || D::Error::custom(format!("bad tape key {k:?}"));
                if parts.len() != 3 {
                    return Err(bad());
                }
                let i = parts[0].trim().parse().map_err(|_| bad())?;
                let j = parts[1].trim().parse().map_err(|_| bad())?;
                let z = parts[2].trim().parse().map_err(|_| bad())?;
                Ok(((i, j, z), p))
            })
            .collect()
    }
}

/// The `4p` rows `x_{i,j,z}`, `i in 0..4`, `j in 1..=p`, on a common
/// z-window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PTape {
    pub space: SpaceModel,
    pub p: usize,
    pub z_min: i64,
    pub z_max: i64,
    #[serde(with = "keyed")]
    pub points: BTreeMap<TapeKey, Point>,
}

impl PTape {
    pub fn get(&self, i: usize, j: usize, z: i64) -> Result<&Point> {
        self.points
            .get(&(i, j, z))
            .ok_or_else(|| LabError::Domain(format!("tape point x[{i},{j},{z}] missing")))
    }

    pub fn row(&self, i: usize, j: usize) -> Result<RSequence> {
        let points = (self.z_min..=self.z_max)
            .map(|z| self.get(i, j, z).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(RSequence::new(self.space.clone(), self.z_min, points))
    }

    /// Relabels every row by `z -> z - k`.
    pub fn relabeled(&self, k: i64) -> PTape {
        PTape {
            space: self.space.clone(),
            p: self.p,
            z_min: self.z_min - k,
            z_max: self.z_max - k,
            points: self.points.iter().map(|(&(i, j, z), v)| ((i, j, z - k), v.clone())).collect(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, z: i64, point: Point) {
        self.points.insert((i, j, z), point);
    }
}

/// Row index `j` (possibly outside `1..=p`) folded into range; each turn
/// around the tape moves `2p - 1` along z.
fn fold(p: usize, j: i64, z: i64) -> (usize, i64) {
    let p = p as i64;
    let turns = (j - 1).div_euclid(p);
    ((j - turns * p) as usize, z + turns * (2 * p - 1))
}

/// The `2p` quadruples of the segment system: `p` columns and `p`
/// diagonals `x_{0,k+1}, x_{1,k}, x_{2,k-1}, x_{3,k-2}`.
pub fn tape_quadruples(p: usize) -> Vec<[TapeKey; 4]> {
    let mut out: Vec<[TapeKey; 4]> = (1..=p).map(|j| [0, 1, 2, 3].map(|i| (i, j, 0))).collect();
    for k in 1..=p as i64 {
        out.push([0usize, 1, 2, 3].map(|i| {
            let (j, z) = fold(p, k + 1 - i as i64, 0);
            (i, j, z)
        }));
    }
    out
}

fn key_label((i, j, z): TapeKey) -> String {
    format!("x[{i},{j},{z}]")
}

/// Checks every row as an r-sequence and every quadruple of the segment
/// system: consecutive distances 1 and end-to-end distance 3.
pub fn validate_p_tape(tape: &PTape) -> Result<VerificationReport> {
    if tape.p == 0 {
        return domain("p-tape needs p >= 1");
    }
    let mut rep = ReportBuilder::new(format!("p_tape[p={}, {}]", tape.p, tape.space.name()), METRIC_TOL);
    for i in 0..4 {
        for j in 1..=tape.p {
            check_sequence(&mut rep, &tape.row(i, j)?, &format!("row {i},{j}"))?;
        }
    }
    for quad in tape_quadruples(tape.p) {
        let pts = quad.iter().map(|&(i, j, z)| tape.get(i, j, z)).collect::<Result<Vec<_>>>()?;
        let mut pairs = vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 3)];
        pairs.extend([(0, 2, 2), (1, 3, 2)]);
        for (u, v, target) in pairs {
            let (ok, err) = close_to(&tape.space, pts[u], pts[v], rat(target, 1))?;
            rep.max_metric("max_error", err);
            rep.record(ok, || {
                Witness::new(vec![key_label(quad[u]), key_label(quad[v])])
                    .with("target", target as f64)
                    .with("error", err)
            });
        }
    }
    Ok(rep.finish())
}

/// Outcome of the third-division lemma on a configuration `y[i][j - 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThirdDivision {
    pub report: VerificationReport,
    pub relations_hold: bool,
    /// Largest pairwise distances among `y_{1j}` and among `y_{2j}`.
    pub spread: [f64; 2],
    pub collapsed: bool,
}

fn trisects(space: &SpaceModel, q: [&Point; 4]) -> Result<(bool, f64)> {
    let d = |u: usize, v: usize| space.distance(q[u], q[v]);
    let whole = d(0, 3)?;
    let parts = [d(0, 1)?, d(1, 2)?, d(2, 3)?];
    let err = parts
        .iter()
        .map(|x| (x - whole / 3.0).abs())
        .fold((parts.iter().sum::<f64>() - whole).abs(), f64::max);
    Ok((err <= METRIC_TOL, err))
}

/// Evaluates every relation `y_{0,k+1} - y_{1,k} - y_{2,k-1} - y_{3,k-2}`
/// (indices mod p) and the columns `y_{0j} - y_{1j} - y_{2j} - y_{3j}`;
/// when all hold, the points `y_{1j}` and `y_{2j}` must coincide.
pub fn check_third_division(space: &SpaceModel, y: &[Vec<Point>]) -> Result<ThirdDivision> {
    let p = y.first().map_or(0, Vec::len);
    if y.len() != 4 || p < 2 || y.iter().any(|row| row.len() != p) {
        return domain("third division needs 4 rows of p >= 2 points");
    }
    let mut rep = ReportBuilder::new(format!("third_division[p={p}, {}]", space.name()), METRIC_TOL);
    let mut all = true;
    for quad in tape_quadruples(p) {
        let pts = quad.map(|(i, j, _)| &y[i][j - 1]);
        let (ok, err) = trisects(space, pts)?;
        all &= ok;
        rep.max_metric("max_relation_error", err);
        rep.record(ok, || {
            Witness::new(quad.iter().map(|(i, j, _)| format!("y[{i},{j}]")).collect()).with("error", err)
        });
    }
    let mut spread = [0.0; 2];
    for (slot, row) in spread.iter_mut().zip([&y[1], &y[2]]) {
        for (k, a) in row.iter().enumerate() {
            for b in &row[k + 1..] {
                *slot = f64::max(*slot, space.distance(a, b)?);
            }
        }
    }
    let collapsed = spread[0] <= METRIC_TOL && spread[1] <= METRIC_TOL;
    rep.metric("spread_1", spread[0]);
    rep.metric("spread_2", spread[1]);
    if all {
        rep.record(collapsed, || Witness::new(vec!["collapse".into()]).with("spread_1", spread[0]).with("spread_2", spread[1]));
    }
    Ok(ThirdDivision { report: rep.finish(), relations_hold: all, spread, collapsed })
}

/// Transverse data of a tape in a normed plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TapeGeometry {
    /// `q` with `|a(0) q| = 1` at the requested distance from `a`.
    pub q: Vec<f64>,
    /// The second root of `|a(t) q| = 1`.
    pub t: f64,
    /// Threshold with `2/P = 2 - |t|`; tapes exist for `p > P`.
    pub threshold: f64,
    /// Column step: `|u| = |u - D e| = 1` with `D = (2p - 1)/p`.
    pub step: Vec<f64>,
}

fn unit_at(norm: Norm, theta: f64) -> Vec<f64> {
    let v = [theta.cos(), theta.sin()];
    let n = norm.eval(&v);
    vec![v[0] / n, v[1] / n]
}

fn dist_to_line(norm: Norm, v: &[f64], e: &[f64]) -> f64 {
    let f = |s: f64| norm.eval(&[v[0] - s * e[0], v[1] - s * e[1]]);
    golden_min(f, -4.0, 4.0, 1e-12).1
}

/// Builds `x_{i,j,z} = a((j - 1)D + z) + (i - 1)u` on the z-window
/// `[-2p, 2p]`, after checking `p > P` for the point `q` at distance
/// `height` from `a`. `height` must lie in `(0, min(1, width))`.
pub fn build_p_tape(space: &SpaceModel, a: &GeodesicRef, p: usize, width: f64, height: f64) -> Result<PTape> {
    let norm = match (space.norm(), space.vector_dim()) {
        (Some(n @ (Norm::L2 | Norm::Lp(_))), Some(2)) => n,
        _ => return domain(format!("tapes need a strictly convex normed plane, not {}", space.name())),
    };
    let Curve::Affine { origin, velocity: e } = &a.curve else {
        return domain("tape base must be an affine line");
    };
    let geo = tape_geometry(norm, e, p, width, height)?;
    if (p as f64) <= geo.threshold {
        return Err(LabError::Precondition(format!("p = {p} does not exceed P = {}", geo.threshold)));
    }
    let d = (2 * p - 1) as f64 / p as f64;
    let at = |s: f64, k: f64| Point::Vector(vec![origin[0] + s * e[0] + k * geo.step[0], origin[1] + s * e[1] + k * geo.step[1]]);
    let zw = 2 * p as i64;
    let mut tape = PTape { space: space.clone(), p, z_min: -zw, z_max: zw, points: BTreeMap::new() };
    for i in 0..4 {
        for j in 1..=p {
            for z in -zw..=zw {
                tape.set(i, j, z, at((j - 1) as f64 * d + z as f64, i as f64 - 1.0));
            }
        }
    }
    Ok(tape)
}

/// Solves for `q`, `t`, `P` and the column step `u` (on the side of `q`).
pub fn tape_geometry(norm: Norm, e: &[f64], p: usize, width: f64, height: f64) -> Result<TapeGeometry> {
    if !(height > 0.0 && height < width.min(1.0)) {
        return Err(LabError::Precondition(format!("height {height} outside (0, min(1, {width}))")));
    }
    if p < 2 {
        return Err(LabError::Precondition("p must be at least 2".into()));
    }
    let th_e = e[1].atan2(e[0]);
    let (th_max, _) = golden_min(|th| -dist_to_line(norm, &unit_at(norm, th), e), th_e, th_e + std::f64::consts::PI, 1e-12);
    let th_q = bisect(|th| dist_to_line(norm, &unit_at(norm, th), e) - height, th_e, th_max, 1e-15, 0.0)?;
    let q = unit_at(norm, th_q);
    let gap = |s: f64| norm.eval(&[s * e[0] - q[0], s * e[1] - q[1]]) - 1.0;
    let (s_min, _) = golden_min(gap, -3.0, 3.0, 1e-12);
    let far = s_min + 3.0 * s_min.signum();
    let t = bisect(gap, s_min, far, 1e-15, 0.0)?;
    let d = (2 * p - 1) as f64 / p as f64;
    let col = |th: f64| {
        let u = unit_at(norm, th);
        norm.eval(&[u[0] - d * e[0], u[1] - d * e[1]]) - 1.0
    };
    let th_u = bisect(col, th_e, th_e + std::f64::consts::PI, 1e-15, 0.0)?;
    Ok(TapeGeometry { q, t, threshold: 2.0 / (2.0 - t.abs()), step: unit_at(norm, th_u) })
}
