//! The grasshopper metric `G_d` and the unit-distance counterexamples.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use petgraph::algo::{dijkstra, kosaraju_scc};
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, unsupported, LabError, Result};
use crate::numeric::bisect;
use crate::scalar::{rat, Rational, Scalar};
use crate::space::{MetricTree, Point, SpaceModel, TreePoint};
use crate::verify::{unit_relation, BijectionSpec, UnitMode, UNIT_TOL};

/// Number of unit jumps, or no jump sequence at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hops {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Hops {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hops::Finite(k) => write!(f, "{k}"),
            Hops::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Hops {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Hops::Finite(k) => s.serialize_u64(*k),
            Hops::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Hops {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(k) => Ok(Hops::Finite(k)),
            Raw::S(s) if s == "inf" => Ok(Hops::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad hop count {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrasshopperMode {
    Analytic,
    Graph,
}

/// Points of a space joined when their distance is 1.
#[derive(Clone, Debug)]
pub struct UnitJumpGraph {
    pub space: SpaceModel,
    pub nodes: Vec<Point>,
    graph: UnGraph<usize, ()>,
}

impl UnitJumpGraph {
    pub fn new(space: &SpaceModel, nodes: Vec<Point>) -> Result<Self> {
        let mut graph = UnGraph::with_capacity(nodes.len(), 0);
        let idx: Vec<NodeIndex> = (0..nodes.len()).map(|i| graph.add_node(i)).collect();
        for i in 0..nodes.len() {
            space.check(&nodes[i])?;
            for j in i + 1..nodes.len() {
                if unit_relation(space.distance_scalar(&nodes[i], &nodes[j])?, UnitMode::Eq, UNIT_TOL) {
                    graph.add_edge(idx[i], idx[j], ());
                }
            }
        }
        Ok(UnitJumpGraph { space: space.clone(), nodes, graph })
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Sorted list of unit pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .edge_indices()
            .filter_map(|e| self.graph.edge_endpoints(e))
            .map(|(a, b)| (a.index().min(b.index()), a.index().max(b.index())))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.nodes.iter().position(|q| match self.space.distance_scalar(p, q) {
            Ok(d) => d.is_zero() || (!d.is_exact() && d.to_f64() <= 1e-12),
            Err(_) => false,
        })
    }

    /// Breadth-first hop count between node indices.
    pub fn hops(&self, i: usize, j: usize) -> Hops {
        let dist = dijkstra(&self.graph, NodeIndex::new(i), Some(NodeIndex::new(j)), |_| 1u64);
        dist.get(&NodeIndex::new(j)).map_or(Hops::Infinite, |&k| Hops::Finite(k))
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = kosaraju_scc(&self.graph)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }
}

/// Connected components of the unit-jump graph.
pub fn grasshopper_components(graph: &UnitJumpGraph) -> Vec<Vec<usize>> {
    graph.components()
}

const TREE_BFS_CAP: usize = 100_000;

/// `G_d(x, y)`. Analytic mode has closed forms on the real line and
/// Euclidean spaces and runs an exact search on trees; graph mode
/// searches `graph`, which must contain both points.
pub fn grasshopper_distance(
    space: &SpaceModel,
    x: &Point,
    y: &Point,
    mode: GrasshopperMode,
    graph: Option<&UnitJumpGraph>,
) -> Result<Hops> {
    space.check(x)?;
    space.check(y)?;
    if mode == GrasshopperMode::Graph {
        let g = graph.ok_or_else(|| LabError::Precondition("graph mode needs a unit-jump graph".into()))?;
        let (Some(i), Some(j)) = (g.index_of(x), g.index_of(y)) else {
            return domain("points are not nodes of the graph");
        };
        return Ok(g.hops(i, j));
    }
    let snap = |d: f64| {
        let r = d.round();
        ((d - r).abs() <= UNIT_TOL).then_some(r as u64)
    };
    match space {
        SpaceModel::RealLine | SpaceModel::Euclidean { dim: 1 } => {
            Ok(snap(space.distance(x, y)?).map_or(Hops::Infinite, Hops::Finite))
        }
        SpaceModel::Euclidean { .. } => {
            let d = space.distance(x, y)?;
            Ok(Hops::Finite(match snap(d) {
                Some(k) => k,
                None if d < 1.0 => 2,
                None => d.ceil() as u64,
            }))
        }
        SpaceModel::MetricTree { tree } => tree_hops(tree, x, y),
        _ => unsupported(format!("no analytic grasshopper distance in {}", space.name())),
    }
}

fn tree_hops(tree: &MetricTree, x: &Point, y: &Point) -> Result<Hops> {
    let (Some(x), Some(y)) = (x.as_tree(), y.as_tree()) else {
        return domain("tree points expected");
    };
    let (x, y) = (tree.canonical(*x)?, tree.canonical(*y)?);
    let target = tree.describe(&y);
    let mut seen: HashMap<String, u64> = HashMap::from([(tree.describe(&x), 0)]);
    let mut queue = VecDeque::from([(x, 0u64)]);
    while let Some((p, k)) = queue.pop_front() {
        if tree.describe(&p) == target {
            return Ok(Hops::Finite(k));
        }
        for q in tree.unit_sphere(&p) {
            let key = tree.describe(&q);
            if !seen.contains_key(&key) {
                if seen.len() >= TREE_BFS_CAP {
                    return Err(LabError::Search("tree jump closure exceeds the node cap".into()));
                }
                seen.insert(key, k + 1);
                queue.push_back((q, k + 1));
            }
        }
    }
    Ok(Hops::Infinite)
}

/// A shortest jump sequence from `x` to `y` in a Euclidean space of
/// dimension at least 2 (unit steps along the segment, then one apex).
pub fn euclidean_jump_path(x: &[f64], y: &[f64]) -> Result<Vec<Vec<f64>>> {
    if x.len() < 2 || x.len() != y.len() {
        return domain("jump paths need matching vectors of dimension >= 2");
    }
    let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let d = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut path = vec![x.to_vec()];
    if d <= UNIT_TOL {
        return Ok(path);
    }
    let u: Vec<f64> = diff.iter().map(|v| v / d).collect();
    let along = |s: f64| x.iter().zip(&u).map(|(a, b)| a + s * b).collect::<Vec<f64>>();
    let whole = d.round();
    let steps = if (d - whole).abs() <= UNIT_TOL { whole as usize } else if d < 1.0 { 2 } else { d.ceil() as usize };
    let straight = if (d - whole).abs() <= UNIT_TOL { steps } else { steps - 2 };
    for k in 1..=straight {
        path.push(along(k as f64));
    }
    if straight < steps {
        // apex over the remaining gap r < 2
        let r = d - straight as f64;
        let h = (1.0 - 0.25 * r * r).sqrt();
        let mut normal = vec![0.0; x.len()];
        let (i, j) = if u[0].abs() < 0.9 { (0, 1) } else { (1, 0) };
        normal[i] = 1.0;
        let dot: f64 = normal.iter().zip(&u).map(|(a, b)| a * b).sum();
        let mut n: Vec<f64> = normal.iter().zip(&u).map(|(a, b)| a - dot * b).collect();
        if n.iter().all(|v| v.abs() < 1e-12) {
            n[j] = 1.0;
        }
        let nn = n.iter().map(|v| v * v).sum::<f64>().sqrt();
        let base = along(straight as f64 + 0.5 * r);
        path.push(base.iter().zip(&n).map(|(b, v)| b + h * v / nn).collect());
        path.push(y.to_vec());
    } else if let Some(last) = path.last_mut() {
        *last = y.to_vec();
    }
    Ok(path)
}

/// `A_alpha` and `A_beta` in a finite tree whose edge lengths are
/// multiples of `1/n`: points at distance `alpha` (resp. `beta`) from the
/// points of the `1/n` lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct TreePointSet {
    pub tree: Arc<MetricTree>,
    pub n: i64,
    pub alpha: Rational,
    pub beta: Rational,
    pub a_alpha: Vec<TreePoint>,
    pub a_beta: Vec<TreePoint>,
}

fn class_points(tree: &MetricTree, n: i64, a: Rational) -> Vec<TreePoint> {
    let step = rat(1, n);
    let mut out = Vec::new();
    for (i, e) in tree.edges().iter().enumerate() {
        let ticks = (e.len * n).to_integer();
        for m in 0..ticks {
            let lo = step * m;
            for off in [lo + a, lo + step - a] {
                let p = TreePoint::Edge { edge: i, offset: Scalar::Exact(off) };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

impl TreePointSet {
    pub fn new(tree: Arc<MetricTree>, alpha: Rational, beta: Rational) -> Result<Self> {
        if tree.has_ends() {
            return domain("grasshopper point sets need a finite tree");
        }
        if !tree.lengths_respect_bound() {
            return domain("edge lengths are not multiples of 1/n");
        }
        let n = tree.denominator_bound();
        let zero = rat(0, 1);
        if !(zero < alpha && alpha < beta && beta < rat(1, 2 * n)) {
            return domain(format!("need 0 < alpha < beta < 1/{}", 2 * n));
        }
        let a_alpha = class_points(&tree, n, alpha);
        let a_beta = class_points(&tree, n, beta);
        Ok(TreePointSet { tree, n, alpha, beta, a_alpha, a_beta })
    }

    /// `A = A_alpha u A_beta`.
    pub fn domain_points(&self) -> Vec<Point> {
        self.a_alpha.iter().chain(&self.a_beta).map(|p| Point::Tree(*p)).collect()
    }

    /// `A` together with every lattice point of the tree.
    pub fn node_set(&self) -> Vec<Point> {
        let mut out: Vec<Point> = crate::verify::tree_lattice(&self.tree).into_iter().map(Point::Tree).collect();
        out.extend(self.domain_points());
        out
    }

    /// Exchanges the `alpha` and `beta` points measured from the same
    /// lattice point; everything else is fixed.
    pub fn swap(&self, p: &TreePoint) -> TreePoint {
        let TreePoint::Edge { edge, offset: Scalar::Exact(o) } = *p else {
            return *p;
        };
        let step = rat(1, self.n);
        let lo = (o * self.n).floor() * step;
        let r = o - lo;
        let (a, b) = (self.alpha, self.beta);
        let moved = if r == a {
            lo + b
        } else if r == b {
            lo + a
        } else if r == step - a {
            lo + step - b
        } else if r == step - b {
            lo + step - a
        } else {
            return *p;
        };
        TreePoint::Edge { edge, offset: Scalar::Exact(moved) }
    }
}

/// The swap of `A_alpha` and `A_beta`, extended by the identity off `A`.
pub fn tree_swap_bijection(tps: &TreePointSet) -> BijectionSpec {
    let t = tps.clone();
    BijectionSpec::involution("tree-swap", move |p| match p {
        Point::Tree(q) => Ok(Point::Tree(t.swap(q))),
        _ => domain("tree point expected"),
    })
    .with_param("n", tps.n as f64)
    .with_param("alpha", *tps.alpha.numer() as f64 / *tps.alpha.denom() as f64)
    .with_param("beta", *tps.beta.numer() as f64 / *tps.beta.denom() as f64)
}

fn wiggle(t: f64, n: f64) -> f64 {
    t + (2.0 * PI * n * t).sin() / (2.0 * PI * n)
}

/// Inverse of `t -> t + sin(2 pi n t)/(2 pi n)`, solved around the
/// nearest zero of the sine term so flat points invert exactly.
fn unwiggle(s: f64, n: f64) -> Result<f64> {
    let half = 0.5 / n;
    let k = (s / half).round();
    let c = k * half;
    if s == c {
        return Ok(c);
    }
    let w = s - c;
    // t = c + u; odd k puts c at a flat point where the sign flips.
    let sign = if (k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let g = |u: f64| u + sign * (2.0 * PI * n * u).sin() / (2.0 * PI * n) - w;
    let u = bisect(g, -half, half, 0.0, 0.0)?;
    Ok(c + u)
}

/// `f(x) = x + sin(2 pi x)/(2 pi)` on the real line.
pub fn line_counterexample() -> BijectionSpec {
    let on_line = |p: &Point, f: &dyn Fn(f64) -> Result<f64>| match p.as_real() {
        Some(x) => Ok(Point::real(f(x)?)),
        None => domain("real point expected"),
    };
    BijectionSpec::new(
        "line-sine",
        move |p| on_line(p, &|x| Ok(wiggle(x, 1.0))),
        move |p| on_line(p, &|y| unwiggle(y, 1.0)),
    )
}

fn edge_wiggle(tree: &MetricTree, p: &TreePoint, n: f64, inverse: bool) -> Result<TreePoint> {
    let f = |t: f64| if inverse { unwiggle(t, n) } else { Ok(wiggle(t, n)) };
    match *p {
        TreePoint::Vertex(_) => Ok(*p),
        TreePoint::Edge { edge, offset } => {
            let len = tree.edges()[edge].len;
            let len = *len.numer() as f64 / *len.denom() as f64;
            let t = f(offset.to_f64())?.clamp(0.0, len);
            Ok(TreePoint::Edge { edge, offset: Scalar::Float(t) })
        }
        TreePoint::End { end, offset } => Ok(TreePoint::End { end, offset: Scalar::Float(f(offset.to_f64())?.max(0.0)) }),
    }
}

/// Edgewise `t -> t + sin(2 pi n t)/(2 pi n)` on a tree with all edges of
/// length `1/n`.
pub fn smooth_tree_bijection(tree: Arc<MetricTree>, n: i64) -> Result<BijectionSpec> {
    if n <= 0 || tree.edges().iter().any(|e| e.len != rat(1, n)) {
        return domain(format!("every edge must have length 1/{n}"));
    }
    let (tf, ti) = (tree.clone(), tree);
    let nf = n as f64;
    Ok(BijectionSpec::new(
        "tree-smooth",
        move |p| match p {
            Point::Tree(q) => Ok(Point::Tree(edge_wiggle(&tf, q, nf, false)?)),
            _ => domain("tree point expected"),
        },
        move |p| match p {
            Point::Tree(q) => Ok(Point::Tree(edge_wiggle(&ti, q, nf, true)?)),
            _ => domain("tree point expected"),
        },
    )
    .with_param("n", nf))
}

/// `x -> -x` on the centrally symmetric set `flip`, identity elsewhere.
pub fn sphere_flip_bijection(radius: f64, dim: usize, flip: &[Point]) -> Result<BijectionSpec> {
    let space = SpaceModel::sphere(radius, dim)?;
    let mut dirs = Vec::with_capacity(flip.len());
    for p in flip {
        space.check(p)?;
        dirs.push(p.as_vector().expect("checked").to_vec());
    }
    let near = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12);
    let neg = |a: &[f64]| a.iter().map(|x| -x).collect::<Vec<f64>>();
    if dirs.iter().any(|d| !dirs.iter().any(|e| near(e, &neg(d)))) {
        return domain("flip set is not centrally symmetric");
    }
    if dirs.is_empty() {
        return domain("flip set is empty");
    }
    Ok(BijectionSpec::involution("sphere-flip", move |p| {
        let v = p.as_vector().ok_or_else(|| LabError::Domain("sphere point expected".into()))?;
        Ok(if dirs.iter().any(|d| near(d, v)) { Point::Vector(neg(v)) } else { p.clone() })
    })
    .with_param("radius", radius))
}

/// `(x, y) -> (x, phi(y))` on the maximum product `X x Y`.
pub fn max_product_lift(phi: &BijectionSpec, x_space: &SpaceModel) -> BijectionSpec {
    let (f, g) = (phi.forward_map(), phi.inverse_map());
    let lift = |m: crate::verify::PointMap| {
        move |p: &Point| match p {
            Point::Pair(a, b) => Ok(Point::pair((**a).clone(), m(b)?)),
            _ => domain("pair point expected"),
        }
    };
    let mut out = BijectionSpec::new(format!("max-lift[{}]({})", x_space.name(), phi.name), lift(f), lift(g));
    out.params = phi.params.clone();
    out
}

/// Permutation of a finite point list, identity elsewhere.
pub fn permutation_bijection(space: &SpaceModel, points: Vec<Point>, perm: Vec<usize>) -> Result<BijectionSpec> {
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    if sorted != (0..points.len()).collect::<Vec<_>>() {
        return domain("not a permutation of the point list");
    }
    let mut inv = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let table = |map: Vec<usize>| {
        let pts = points.clone();
        let s = space.clone();
        move |p: &Point| {
            Ok(match pts.iter().position(|q| s.distance(p, q).is_ok_and(|d| d <= 1e-12)) {
                Some(i) => pts[map[i]].clone(),
                None => p.clone(),
            })
        }
    };
    Ok(BijectionSpec::new("permutation", table(perm), table(inv)))
}
