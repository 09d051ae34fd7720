//! Finite metric trees with rational edge lengths, optionally carrying
//! infinite rays ("ends") glued to vertices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

/// On-disk tree description.
///
/// ```json
/// {"vertices":[0,1,2], "edges":[[0,1,"1/2"],[1,2,"1/2"]], "denominator_bound":2}
/// ```
///
/// `ends` optionally lists vertices that carry an infinite ray; each entry
/// is one ideal point of the tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeDesc {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId, String)>,
    pub denominator_bound: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ends: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub len: Rational,
}

/// A validated metric tree. Vertex-to-vertex distances are precomputed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TreeDesc", into = "TreeDesc")]
pub struct MetricTree {
    names: Vec<VertexId>,
    edges: Vec<TreeEdge>,
    ends: Vec<usize>,
    bound: i64,
    adjacency: Vec<Vec<(usize, usize)>>,
    dist: Vec<Vec<Rational>>,
}

/// A point of a metric tree. Edge offsets are measured from the edge's
/// first vertex, end offsets from the vertex the ray is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreePoint {
    Vertex(usize),
    Edge { edge: usize, offset: Scalar },
    End { end: usize, offset: Scalar },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Edge(usize),
    End(usize),
}

/// One affine piece of a tree geodesic: on `carrier` the offset is
/// `anchor_offset + dir * (t - anchor_t)` for `t` in `[t_lo, t_hi]`
/// (`None` meaning unbounded).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeLeg {
    pub carrier: Carrier,
    pub anchor_t: Scalar,
    pub anchor_offset: Scalar,
    pub dir: i8,
    pub t_lo: Option<Scalar>,
    pub t_hi: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreePath {
    pub legs: Vec<TreeLeg>,
}

impl TryFrom<TreeDesc> for MetricTree {
    type Error = LabError;

    fn try_from(desc: TreeDesc) -> Result<Self> {
        let bad = |m: String| Err(LabError::InvalidTree(m));
        if desc.vertices.is_empty() {
            return bad("no vertices".into());
        }
        if desc.denominator_bound <= 0 {
            return bad("denominator bound must be positive".into());
        }
        let mut index = HashMap::new();
        for (i, v) in desc.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return bad(format!("duplicate vertex {v}"));
            }
        }
        let lookup = |v: &VertexId| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| LabError::InvalidTree(format!("unknown vertex {v}")))
        };
        let n = desc.vertices.len();
        let mut edges = Vec::with_capacity(desc.edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for (a, b, len) in &desc.edges {
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return bad(format!("self-loop at {a}"));
            }
            let len = parse_rational(len).map_err(|e| LabError::InvalidTree(e.to_string()))?;
            if len <= Rational::zero() {
                return bad(format!("edge {a}-{b} has non-positive length"));
            }
            if (len * desc.denominator_bound).denom() != &1 {
                return bad(format!(
                    "edge {a}-{b} length {} has denominator not dividing {}",
                    format_rational(&len),
                    desc.denominator_bound
                ));
            }
            adjacency[u].push((v, edges.len()));
            adjacency[v].push((u, edges.len()));
            edges.push(TreeEdge { u, v, len });
        }
        if edges.len() + 1 != n {
            return bad(format!("{} edges for {} vertices is not a tree", edges.len(), n));
        }
        let mut dist = Vec::with_capacity(n);
        for s in 0..n {
            let mut row: Vec<Option<Rational>> = vec![None; n];
            row[s] = Some(Rational::zero());
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let dx = row[x].expect("visited");
                for &(y, e) in &adjacency[x] {
                    if row[y].is_none() {
                        row[y] = Some(dx + edges[e].len);
                        queue.push_back(y);
                    }
                }
            }
            if row.iter().any(Option::is_none) {
                return bad("tree is not connected".into());
            }
            dist.push(row.into_iter().map(|d| d.expect("connected")).collect());
        }
        let ends = desc.ends.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        Ok(MetricTree {
            names: desc.vertices,
            edges,
            ends,
            bound: desc.denominator_bound,
            adjacency,
            dist,
        })
    }
}

impl From<MetricTree> for TreeDesc {
    fn from(t: MetricTree) -> Self {
        TreeDesc {
            edges: t
                .edges
                .iter()
                .map(|e| (t.names[e.u].clone(), t.names[e.v].clone(), format_rational(&e.len)))
                .collect(),
            ends: t.ends.iter().map(|&v| t.names[v].clone()).collect(),
            vertices: t.names,
            denominator_bound: t.bound,
        }
    }
}

impl MetricTree {
    /// Builds a tree on integer-named vertices `0..n_vertices`.
    pub fn from_edges(
        n_vertices: usize,
        edges: &[(usize, usize, Rational)],
        denominator_bound: i64,
        ends: &[usize],
    ) -> Result<Self> {
        let id = |v: usize| VertexId::Int(v as i64);
        MetricTree::try_from(TreeDesc {
            vertices: (0..n_vertices).map(id).collect(),
            edges: edges
                .iter()
                .map(|&(u, v, len)| (id(u), id(v), format_rational(&len)))
                .collect(),
            denominator_bound,
            ends: ends.iter().map(|&v| id(v)).collect(),
        })
    }

    /// Star with centre `0` and leaves `1..=leaves`, all edges of length `len`.
    pub fn star(leaves: usize, len: Rational, denominator_bound: i64) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i, len)).collect();
        Self::from_edges(leaves + 1, &edges, denominator_bound, &[])
    }

    /// Path `0 - 1 - ... - edges`, all edges of length `len`.
    pub fn path(edges: usize, len: Rational, denominator_bound: i64) -> Result<Self> {
        let list: Vec<_> = (0..edges).map(|i| (i, i + 1, len)).collect();
        Self::from_edges(edges + 1, &list, denominator_bound, &[])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: TreeDesc =
            serde_json::from_str(text).map_err(|e| LabError::InvalidTree(e.to_string()))?;
        MetricTree::try_from(desc)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn end_count(&self) -> usize {
        self.ends.len()
    }

    pub fn end_vertex(&self, end: usize) -> usize {
        self.ends[end]
    }

    pub fn denominator_bound(&self) -> i64 {
        self.bound
    }

    pub fn vertex_name(&self, v: usize) -> &VertexId {
        &self.names[v]
    }

    pub fn vertex_distance(&self, a: usize, b: usize) -> Rational {
        self.dist[a][b]
    }

    pub fn has_ends(&self) -> bool {
        !self.ends.is_empty()
    }

    /// Canonical point at `offset` along `edge` (measured from its first vertex).
    pub fn edge_point(&self, edge: usize, offset: Scalar) -> Result<TreePoint> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| LabError::Domain(format!("no edge {edge}")))?;
        let len = Scalar::Exact(e.len);
        if offset.compare(Scalar::ZERO).is_lt() || offset.compare(len).is_gt() {
            return Err(LabError::Domain(format!("offset {offset} outside edge {edge}")));
        }
        Ok(if offset.compare(Scalar::ZERO).is_eq() && offset.is_exact() {
            TreePoint::Vertex(e.u)
        } else if offset.compare(len).is_eq() && offset.is_exact() {
            TreePoint::Vertex(e.v)
        } else {
            TreePoint::Edge { edge, offset }
        })
    }

    /// Point at `offset` from `from` along the edge joining `from` to its
    /// neighbour `to`.
    pub fn point_towards(&self, from: usize, to: usize, offset: Scalar) -> Result<TreePoint> {
        let edge = self.edge_between(from, to)?;
        let e = &self.edges[edge];
        if e.u == from {
            self.edge_point(edge, offset)
        } else {
            self.edge_point(edge, Scalar::Exact(e.len) - offset)
        }
    }

    pub fn end_point(&self, end: usize, offset: Scalar) -> Result<TreePoint> {
        if end >= self.ends.len() {
            return Err(LabError::Domain(format!("no end {end}")));
        }
        if offset.compare(Scalar::ZERO).is_lt() {
            return Err(LabError::Domain("negative end offset".into()));
        }
        Ok(if offset.is_zero() && offset.is_exact() {
            TreePoint::Vertex(self.ends[end])
        } else {
            TreePoint::End { end, offset }
        })
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Result<usize> {
        self.adjacency
            .get(a)
            .and_then(|nbrs| nbrs.iter().find(|(y, _)| *y == b).map(|(_, e)| *e))
            .ok_or_else(|| LabError::Domain(format!("vertices {a} and {b} are not adjacent")))
    }

    pub fn check_point(&self, p: &TreePoint) -> Result<()> {
        match *p {
            TreePoint::Vertex(v) if v < self.names.len() => Ok(()),
            TreePoint::Vertex(v) => Err(LabError::Domain(format!("no vertex {v}"))),
            TreePoint::Edge { edge, offset } => self.edge_point(edge, offset).map(|_| ()),
            TreePoint::End { end, offset } => self.end_point(end, offset).map(|_| ()),
        }
    }

    /// Rewrites `p` in canonical form (endpoint offsets become vertices).
    pub fn canonical(&self, p: TreePoint) -> Result<TreePoint> {
        match p {
            TreePoint::Vertex(_) => self.check_point(&p).map(|_| p),
            TreePoint::Edge { edge, offset } => self.edge_point(edge, offset),
            TreePoint::End { end, offset } => self.end_point(end, offset),
        }
    }

    fn carrier_of(p: &TreePoint) -> Option<(Carrier, Scalar)> {
        match *p {
            TreePoint::Vertex(_) => None,
            TreePoint::Edge { edge, offset } => Some((Carrier::Edge(edge), offset)),
            TreePoint::End { end, offset } => Some((Carrier::End(end), offset)),
        }
    }

    /// Vertices through which a path can leave `p`, with the cost of
    /// reaching each.
    fn exits(&self, p: &TreePoint) -> Vec<(usize, Scalar)> {
        match *p {
            TreePoint::Vertex(v) => vec![(v, Scalar::ZERO)],
            TreePoint::Edge { edge, offset } => {
                let e = &self.edges[edge];
                vec![(e.u, offset), (e.v, Scalar::Exact(e.len) - offset)]
            }
            TreePoint::End { end, offset } => vec![(self.ends[end], offset)],
        }
    }

    pub fn distance(&self, p: &TreePoint, q: &TreePoint) -> Scalar {
        if let (Some((cp, sp)), Some((cq, sq))) = (Self::carrier_of(p), Self::carrier_of(q)) {
            if cp == cq {
                return (sp - sq).abs();
            }
        }
        let mut best: Option<Scalar> = None;
        for (a, ca) in self.exits(p) {
            for (b, cb) in self.exits(q) {
                let d = ca + Scalar::Exact(self.dist[a][b]) + cb;
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best.expect("every point has an exit")
    }

    /// Offset of `p` measured along `carrier`, if `p` lies on it.
    fn offset_on(&self, carrier: Carrier, p: &TreePoint) -> Option<Scalar> {
        match (carrier, *p) {
            (Carrier::Edge(e), TreePoint::Edge { edge, offset }) if e == edge => Some(offset),
            (Carrier::End(k), TreePoint::End { end, offset }) if k == end => Some(offset),
            (Carrier::Edge(e), TreePoint::Vertex(v)) => {
                let edge = &self.edges[e];
                if edge.u == v {
                    Some(Scalar::ZERO)
                } else if edge.v == v {
                    Some(Scalar::Exact(edge.len))
                } else {
                    None
                }
            }
            (Carrier::End(k), TreePoint::Vertex(v)) if self.ends[k] == v => Some(Scalar::ZERO),
            _ => None,
        }
    }

    fn vertex_path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.names.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(y, _) in &self.adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Appends the legs walking vertex path `verts` starting at parameter `t`.
    fn push_vertex_legs(&self, verts: &[usize], mut t: Scalar, legs: &mut Vec<TreeLeg>) -> Scalar {
        for w in verts.windows(2) {
            let edge = self.edge_between(w[0], w[1]).expect("consecutive path vertices");
            let e = &self.edges[edge];
            let len = Scalar::Exact(e.len);
            let (anchor_offset, dir) = if e.u == w[0] { (Scalar::ZERO, 1) } else { (len, -1) };
            legs.push(TreeLeg {
                carrier: Carrier::Edge(edge),
                anchor_t: t,
                anchor_offset,
                dir,
                t_lo: Some(t),
                t_hi: Some(t + len),
            });
            t = t + len;
        }
        t
    }

    /// Leg leaving `p` along its carrier towards the exit vertex `v`.
    fn leg_to_vertex(&self, p: &TreePoint, v: usize, cost: Scalar) -> Option<TreeLeg> {
        let (carrier, offset) = Self::carrier_of(p)?;
        let target = self.offset_on(carrier, &TreePoint::Vertex(v))?;
        let dir = if target.compare(offset).is_lt() { -1 } else { 1 };
        Some(TreeLeg {
            carrier,
            anchor_t: Scalar::ZERO,
            anchor_offset: offset,
            dir,
            t_lo: Some(Scalar::ZERO),
            t_hi: Some(cost),
        })
    }

    fn leg_from_vertex(&self, v: usize, q: &TreePoint, t: Scalar) -> Option<TreeLeg> {
        let (carrier, offset) = Self::carrier_of(q)?;
        let start = self.offset_on(carrier, &TreePoint::Vertex(v))?;
        let dir = if offset.compare(start).is_lt() { -1 } else { 1 };
        Some(TreeLeg {
            carrier,
            anchor_t: t,
            anchor_offset: start,
            dir,
            t_lo: Some(t),
            t_hi: Some(t + (offset - start).abs()),
        })
    }

    fn best_exit_pair(&self, p: &TreePoint, q: &TreePoint) -> (usize, Scalar, usize, Scalar) {
        let mut best: Option<(Scalar, usize, Scalar, usize, Scalar)> = None;
        for (a, ca) in self.exits(p) {
            for (b, cb) in self.exits(q) {
                let d = ca + Scalar::Exact(self.dist[a][b]) + cb;
                if best.as_ref().is_none_or(|m| d.compare(m.0).is_lt()) {
                    best = Some((d, a, ca, b, cb));
                }
            }
        }
        let (_, a, ca, b, cb) = best.expect("exits exist");
        (a, ca, b, cb)
    }

    /// Unit-speed path from `p` to `q` (`p != q`), parameterised on `[0, d]`.
    pub fn segment(&self, p: &TreePoint, q: &TreePoint) -> TreePath {
        if let (Some((cp, sp)), Some((cq, sq))) = (Self::carrier_of(p), Self::carrier_of(q)) {
            if cp == cq {
                let dir = if sq.compare(sp).is_lt() { -1 } else { 1 };
                return TreePath {
                    legs: vec![TreeLeg {
                        carrier: cp,
                        anchor_t: Scalar::ZERO,
                        anchor_offset: sp,
                        dir,
                        t_lo: Some(Scalar::ZERO),
                        t_hi: Some((sq - sp).abs()),
                    }],
                };
            }
        }
        let (a, ca, b, _) = self.best_exit_pair(p, q);
        let mut legs = Vec::new();
        legs.extend(self.leg_to_vertex(p, a, ca));
        let t = self.push_vertex_legs(&self.vertex_path(a, b), ca, &mut legs);
        legs.extend(self.leg_from_vertex(b, q, t));
        TreePath { legs }
    }

    /// Ray from `p` to end `end`, with `ray(0) = p`.
    pub fn ray(&self, p: &TreePoint, end: usize) -> TreePath {
        if let TreePoint::End { end: k, offset } = *p {
            if k == end {
                return TreePath {
                    legs: vec![outward_leg(end, Scalar::ZERO, offset)],
                };
            }
        }
        let leaf = self.ends[end];
        let mut legs = Vec::new();
        let t = if *p == TreePoint::Vertex(leaf) {
            Scalar::ZERO
        } else {
            let (a, ca, b, _) = self.best_exit_pair(p, &TreePoint::Vertex(leaf));
            legs.extend(self.leg_to_vertex(p, a, ca));
            self.push_vertex_legs(&self.vertex_path(a, b), ca, &mut legs)
        };
        legs.push(outward_leg(end, t, Scalar::ZERO));
        TreePath { legs }
    }

    /// Line from end `from` (at `-inf`) to end `to` (at `+inf`); parameter
    /// `0` sits at the vertex carrying `from`.
    pub fn line(&self, from: usize, to: usize) -> TreePath {
        let mut legs = vec![TreeLeg {
            carrier: Carrier::End(from),
            anchor_t: Scalar::ZERO,
            anchor_offset: Scalar::ZERO,
            dir: -1,
            t_lo: None,
            t_hi: Some(Scalar::ZERO),
        }];
        let path = self.vertex_path(self.ends[from], self.ends[to]);
        let t = self.push_vertex_legs(&path, Scalar::ZERO, &mut legs);
        legs.push(outward_leg(to, t, Scalar::ZERO));
        TreePath { legs }
    }

    pub fn eval(&self, path: &TreePath, t: Scalar) -> Result<TreePoint> {
        for leg in &path.legs {
            let above = leg.t_lo.is_none_or(|lo| t.compare(lo).is_ge());
            let below = leg.t_hi.is_none_or(|hi| t.compare(hi).is_le());
            if above && below {
                let delta = t - leg.anchor_t;
                let offset = if leg.dir > 0 {
                    leg.anchor_offset + delta
                } else {
                    leg.anchor_offset - delta
                };
                return match leg.carrier {
                    Carrier::Edge(e) => self.edge_point(e, clamp_edge(offset, self.edges[e].len)),
                    Carrier::End(k) => self.end_point(k, offset.max(Scalar::ZERO)),
                };
            }
        }
        Err(LabError::Domain(format!("parameter {t} outside the path")))
    }

    /// Parameter at which `path` passes through `p`, if it does.
    pub fn locate(&self, path: &TreePath, p: &TreePoint) -> Option<Scalar> {
        path.legs.iter().find_map(|leg| {
            let offset = self.offset_on(leg.carrier, p)?;
            let delta = offset - leg.anchor_offset;
            let t = if leg.dir > 0 { leg.anchor_t + delta } else { leg.anchor_t - delta };
            let above = leg.t_lo.is_none_or(|lo| t.compare(lo).is_ge());
            let below = leg.t_hi.is_none_or(|hi| t.compare(hi).is_le());
            (above && below).then_some(t)
        })
    }

    /// Points at exact distance 1 from `p` (finite trees only; on ends the
    /// sphere is still finite and included).
    pub fn unit_sphere(&self, p: &TreePoint) -> Vec<TreePoint> {
        let one = Scalar::Exact(Rational::from_integer(1));
        let mut out: Vec<TreePoint> = Vec::new();
        let push = |q: TreePoint, out: &mut Vec<TreePoint>| {
            if self.distance(p, &q).compare(one).is_eq() && !out.contains(&q) {
                out.push(q);
            }
        };
        for (i, e) in self.edges.iter().enumerate() {
            let len = Scalar::Exact(e.len);
            let mut cands = Vec::new();
            if let Some(off) = self.offset_on(Carrier::Edge(i), p) {
                cands.push(off + one);
                cands.push(off - one);
            }
            cands.push(one - self.distance(p, &TreePoint::Vertex(e.u)));
            cands.push(len - (one - self.distance(p, &TreePoint::Vertex(e.v))));
            for s in cands {
                if s.compare(Scalar::ZERO).is_ge() && s.compare(len).is_le() {
                    if let Ok(q) = self.edge_point(i, s) {
                        push(q, &mut out);
                    }
                }
            }
        }
        for k in 0..self.ends.len() {
            let mut cands = Vec::new();
            if let Some(off) = self.offset_on(Carrier::End(k), p) {
                cands.push(off + one);
                cands.push(off - one);
            }
            cands.push(one - self.distance(p, &TreePoint::Vertex(self.ends[k])));
            for s in cands {
                if s.compare(Scalar::ZERO).is_ge() {
                    if let Ok(q) = self.end_point(k, s) {
                        push(q, &mut out);
                    }
                }
            }
        }
        out
    }

    /// Sort key giving a canonical order on tree points.
    pub fn point_key(&self, p: &TreePoint) -> (u8, usize, f64) {
        match *p {
            TreePoint::Vertex(v) => (0, v, 0.0),
            TreePoint::Edge { edge, offset } => (1, edge, offset.to_f64()),
            TreePoint::End { end, offset } => (2, end, offset.to_f64()),
        }
    }

    pub fn describe(&self, p: &TreePoint) -> String {
        match *p {
            TreePoint::Vertex(v) => format!("v{}", self.names[v]),
            TreePoint::Edge { edge, offset } => {
                let e = &self.edges[edge];
                format!("[{}-{}]@{}", self.names[e.u], self.names[e.v], offset)
            }
            TreePoint::End { end, offset } => format!("end{end}@{offset}"),
        }
    }

    /// `true` iff every edge length times the bound is an integer.
    pub fn lengths_respect_bound(&self) -> bool {
        self.edges
            .iter()
            .all(|e| (e.len * self.bound).denom() == &1 && e.len.to_f64().is_some())
    }
}

fn outward_leg(end: usize, t: Scalar, offset: Scalar) -> TreeLeg {
    TreeLeg {
        carrier: Carrier::End(end),
        anchor_t: t,
        anchor_offset: offset,
        dir: 1,
        t_lo: Some(t),
        t_hi: None,
    }
}

fn clamp_edge(offset: Scalar, len: Rational) -> Scalar {
    offset.max(Scalar::ZERO).min(Scalar::Exact(len))
}

impl TreePath {
    /// Total length for bounded paths.
    pub fn length(&self) -> Option<Scalar> {
        let first = self.legs.first()?.t_lo?;
        let last = self.legs.last()?.t_hi?;
        Some(last - first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn half_star() -> MetricTree {
        MetricTree::star(3, rat(1, 2), 2).unwrap()
    }

    #[test]
    fn leaves_of_half_star_are_one_apart() {
        let t = half_star();
        let d = t.distance(&TreePoint::Vertex(1), &TreePoint::Vertex(2));
        assert_eq!(d, Scalar::Exact(rat(1, 1)));
    }

    #[test]
    fn rejects_cycles_and_bad_denominators() {
        let cyc = MetricTree::from_edges(
            3,
            &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2)), (2, 0, rat(1, 2))],
            2,
            &[],
        );
        assert!(matches!(cyc, Err(LabError::InvalidTree(_))));
        let den = MetricTree::from_edges(2, &[(0, 1, rat(1, 3))], 2, &[]);
        assert!(matches!(den, Err(LabError::InvalidTree(_))));
        let disconnected = MetricTree::from_edges(4, &[(0, 1, rat(1, 2)), (0, 1, rat(1, 2)), (2, 3, rat(1, 2))], 2, &[]);
        assert!(disconnected.is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":[0,1,2,"x"],"edges":[[0,1,"1/2"],[1,2,"1/2"],[1,"x","1"]],"denominator_bound":2}"#;
        let t = MetricTree::from_json(text).unwrap();
        assert_eq!(t.vertex_count(), 4);
        let back = serde_json::to_string(&t).unwrap();
        let again: MetricTree = serde_json::from_str(&back).unwrap();
        assert_eq!(t, again);
        assert_eq!(
            t.distance(&TreePoint::Vertex(0), &TreePoint::Vertex(3)),
            Scalar::Exact(rat(3, 2))
        );
    }

    #[test]
    fn edge_points_canonicalise_to_vertices() {
        let t = half_star();
        assert_eq!(t.edge_point(0, Scalar::ZERO).unwrap(), TreePoint::Vertex(0));
        assert_eq!(t.edge_point(0, rat(1, 2).into()).unwrap(), TreePoint::Vertex(1));
        assert!(t.edge_point(0, rat(3, 4).into()).is_err());
    }

    #[test]
    fn distances_across_edges_are_exact() {
        let t = half_star();
        let p = t.edge_point(0, rat(1, 10).into()).unwrap();
        let q = t.edge_point(1, rat(2, 5).into()).unwrap();
        assert_eq!(t.distance(&p, &q), Scalar::Exact(rat(1, 2)));
        let r = t.edge_point(0, rat(2, 5).into()).unwrap();
        assert_eq!(t.distance(&p, &r), Scalar::Exact(rat(3, 10)));
    }

    #[test]
    fn segment_midpoint_is_centre() {
        let t = half_star();
        let path = t.segment(&TreePoint::Vertex(1), &TreePoint::Vertex(2));
        assert_eq!(path.length(), Some(Scalar::Exact(rat(1, 1))));
        assert_eq!(t.eval(&path, rat(1, 2).into()).unwrap(), TreePoint::Vertex(0));
        let q = t.eval(&path, rat(3, 4).into()).unwrap();
        assert_eq!(t.distance(&q, &TreePoint::Vertex(2)), Scalar::Exact(rat(1, 4)));
    }

    #[test]
    fn locate_inverts_eval() {
        let t = MetricTree::from_edges(3, &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2))], 2, &[0, 2]).unwrap();
        let line = t.line(0, 1);
        for k in -6..=6 {
            let s = Scalar::Exact(rat(k, 4));
            let p = t.eval(&line, s).unwrap();
            assert_eq!(t.locate(&line, &p), Some(s));
        }
    }

    #[test]
    fn unit_sphere_on_path() {
        let t = MetricTree::path(3, rat(1, 2), 2).unwrap();
        let p = t.edge_point(0, rat(1, 10).into()).unwrap();
        let sphere = t.unit_sphere(&p);
        assert_eq!(sphere.len(), 1);
        assert_eq!(t.distance(&p, &sphere[0]), Scalar::Exact(rat(1, 1)));
    }
}
