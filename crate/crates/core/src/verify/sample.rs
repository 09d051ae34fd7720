use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::{Rational, Scalar};
use crate::space::{MetricTree, Point, SpaceModel, TreePoint};

/// How a sample was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleSpec {
    Random { count: usize },
    /// Regular grid on `[lo, hi]` in every coordinate (vector models).
    Grid { lo: f64, hi: f64, steps: usize },
    List,
}

/// A finite, reproducible set of points of one space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub space: SpaceModel,
    pub points: Vec<Point>,
    pub seed: u64,
    pub spec: SampleSpec,
}

impl SampleSet {
    pub fn from_points(space: &SpaceModel, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            space.check(p)?;
        }
        Ok(SampleSet { space: space.clone(), points, seed: 0, spec: SampleSpec::List })
    }

    pub fn random(space: &SpaceModel, count: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| random_point(space, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleSet {
            space: space.clone(),
            points,
            seed,
            spec: SampleSpec::Random { count },
        })
    }

    pub fn grid(space: &SpaceModel, lo: f64, hi: f64, steps: usize) -> Result<Self> {
        let dim = match space {
            SpaceModel::SphereIntrinsic { .. } => None,
            s => s.vector_dim(),
        };
        let Some(dim) = dim.filter(|&d| d <= 3) else {
            return domain(format!("grid samples need a vector model of dimension <= 3, got {}", space.name()));
        };
        if steps < 2 {
            return domain("grid needs at least two steps");
        }
        let axis: Vec<f64> = (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect();
        let mut points = vec![Vec::new()];
        for _ in 0..dim {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Ok(SampleSet {
            space: space.clone(),
            points: points.into_iter().map(Point::Vector).collect(),
            seed: 0,
            spec: SampleSpec::Grid { lo, hi, steps },
        })
    }

    pub fn from_spec(space: &SpaceModel, spec: &SampleSpec, seed: u64) -> Result<Self> {
        match *spec {
            SampleSpec::Random { count } => Self::random(space, count, seed),
            SampleSpec::Grid { lo, hi, steps } => Self::grid(space, lo, hi, steps),
            SampleSpec::List => domain("list samples carry their own points"),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One random point. Vector models draw from `[-5, 5]^d`, the half-plane
/// from `x in [-3, 3]`, `log y in [-2, 2]`; tree points sit on the
/// `1/n` lattice so distances stay within the declared denominator bound.
pub fn random_point(space: &SpaceModel, rng: &mut impl Rng) -> Result<Point> {
    Ok(match space {
        SpaceModel::HyperbolicPlane => {
            Point::half(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0f64..2.0).exp())
        }
        SpaceModel::MetricTree { tree } => Point::Tree(random_tree_point(tree, rng)?),
        SpaceModel::SphereIntrinsic { dim, .. } => loop {
            let v: Vec<f64> = (0..*dim).map(|_| rng.sample(StandardNormal)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                break Point::Vector(v.iter().map(|x| x / n).collect());
            }
        },
        SpaceModel::MaxProduct { left, right } => {
            Point::pair(random_point(left, rng)?, random_point(right, rng)?)
        }
        s => {
            let dim = s.vector_dim().expect("vector model");
            Point::Vector((0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect())
        }
    })
}

fn random_tree_point(tree: &MetricTree, rng: &mut impl Rng) -> Result<TreePoint> {
    let n = tree.denominator_bound();
    let edges = tree.edges().len();
    let slots = edges + tree.end_count();
    if slots == 0 {
        return Ok(TreePoint::Vertex(0));
    }
    let k = rng.gen_range(0..slots);
    if k < edges {
        let ticks = (tree.edges()[k].len * n).to_integer();
        let j = rng.gen_range(0..=ticks);
        tree.edge_point(k, Scalar::Exact(Rational::new(j, n)))
    } else {
        let j = rng.gen_range(0..=3 * n);
        tree.end_point(k - edges, Scalar::Exact(Rational::new(j, n)))
    }
}

/// Every point of `tree` on the `1/n` lattice of each edge.
pub fn tree_lattice(tree: &MetricTree) -> Vec<TreePoint> {
    let n = tree.denominator_bound();
    let mut out: Vec<TreePoint> = (0..tree.vertex_count()).map(TreePoint::Vertex).collect();
    for (i, e) in tree.edges().iter().enumerate() {
        let ticks = (e.len * n).to_integer();
        for j in 1..ticks {
            out.push(TreePoint::Edge { edge: i, offset: Scalar::Exact(Rational::new(j, n)) });
        }
    }
    debug_assert!(out.iter().all(|p| tree.check_point(p).is_ok()));
    out
}
