//! Ready-made bijections that preserve the unit distance without being
//! isometries, each with a sample on which to check both claims.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::grasshopper::{
    line_counterexample, max_product_lift, permutation_bijection, smooth_tree_bijection, sphere_flip_bijection,
    tree_swap_bijection, TreePointSet,
};
use crate::report::VerificationReport;
use crate::scalar::{rat, Scalar};
use crate::space::{MetricTree, Point, SpaceModel, TreePoint};
use crate::verify::{is_isometry, preserves_unit_distance, BijectionSpec, SampleSet, UnitMode, METRIC_TOL, UNIT_TOL};

/// Names accepted by [`counterexample`].
pub const COUNTEREXAMPLES: [&str; 5] = ["line-sine", "sphere-flip", "tree-swap", "tree-smooth", "max-lift"];

pub struct Counterexample {
    pub name: String,
    pub space: SpaceModel,
    pub map: BijectionSpec,
    pub sample: SampleSet,
}

/// Both checks on the packaged sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleOutcome {
    pub name: String,
    pub preserves_unit: VerificationReport,
    pub isometry: VerificationReport,
}

impl CounterexampleOutcome {
    /// Unit distance preserved and at least one isometry violation found.
    pub fn confirmed(&self) -> bool {
        self.preserves_unit.passed() && !self.isometry.passed() && !self.isometry.witnesses.is_empty()
    }
}

impl Counterexample {
    pub fn run(&self) -> CounterexampleOutcome {
        CounterexampleOutcome {
            name: self.name.clone(),
            preserves_unit: preserves_unit_distance(&self.space, &self.space, &self.map, &self.sample, UnitMode::Eq, UNIT_TOL),
            isometry: is_isometry(&self.space, &self.space, &self.map, &self.sample, METRIC_TOL),
        }
    }
}

/// Builds a named counterexample; `seed` drives any random sampling.
pub fn counterexample(name: &str, seed: u64) -> Result<Counterexample> {
    match name {
        "line-sine" => line_case(),
        "sphere-flip" => sphere_flip_case(1.0 / PI, 24, seed),
        "tree-swap" => tree_swap_case(),
        "tree-smooth" => tree_smooth_case(),
        "max-lift" => max_lift_case(),
        _ => Err(LabError::Config(format!(
            "unknown counterexample {name:?}; expected one of {}",
            COUNTEREXAMPLES.join(", ")
        ))),
    }
}

fn line_case() -> Result<Counterexample> {
    let space = SpaceModel::RealLine;
    let sample = SampleSet::from_points(&space, (-16..=16).map(|k| Point::real(k as f64 / 8.0)).collect())?;
    Ok(Counterexample { name: "line-sine".into(), space, map: line_counterexample(), sample })
}

/// Random directions with their antipodes; the first third of the pairs
/// is flipped.
pub fn sphere_flip_case(radius: f64, pairs: usize, seed: u64) -> Result<Counterexample> {
    let space = SpaceModel::sphere(radius, 3)?;
    let base = SampleSet::random(&space, pairs, seed)?;
    let mut points = Vec::with_capacity(2 * pairs);
    for p in &base.points {
        let v = p.as_vector().expect("sphere sample");
        points.push(p.clone());
        points.push(Point::Vector(v.iter().map(|x| -x).collect()));
    }
    let flip = &points[..2 * pairs.div_ceil(3)];
    let map = sphere_flip_bijection(radius, 3, flip)?;
    let sample = SampleSet::from_points(&space, points.clone())?;
    Ok(Counterexample { name: "sphere-flip".into(), space, map, sample })
}

/// The three-edge path with edges `1/2`, `alpha = 1/10`, `beta = 1/5`.
pub fn three_edge_point_set() -> Result<TreePointSet> {
    TreePointSet::new(Arc::new(MetricTree::path(3, rat(1, 2), 2)?), rat(1, 10), rat(1, 5))
}

fn tree_swap_case() -> Result<Counterexample> {
    let tps = three_edge_point_set()?;
    let space = SpaceModel::tree((*tps.tree).clone());
    let sample = SampleSet::from_points(&space, tps.node_set())?;
    Ok(Counterexample { name: "tree-swap".into(), space, map: tree_swap_bijection(&tps), sample })
}

fn tree_smooth_case() -> Result<Counterexample> {
    let tree = MetricTree::star(3, rat(1, 2), 2)?;
    let space = SpaceModel::tree(tree.clone());
    let mut points: Vec<Point> = (0..tree.vertex_count()).map(|v| Point::Tree(TreePoint::Vertex(v))).collect();
    for edge in 0..tree.edges().len() {
        for k in 1..8 {
            points.push(Point::Tree(TreePoint::Edge { edge, offset: Scalar::Exact(rat(k, 16)) }));
        }
    }
    let sample = SampleSet::from_points(&space, points)?;
    Ok(Counterexample { name: "tree-smooth".into(), space, map: smooth_tree_bijection(Arc::new(tree), 2)?, sample })
}

fn max_lift_case() -> Result<Counterexample> {
    let x = SpaceModel::euclidean(1);
    let space = SpaceModel::max_product(x.clone(), SpaceModel::RealLine)?;
    let mut points = Vec::with_capacity(400);
    for i in 0..20 {
        for j in 0..20 {
            points.push(Point::pair(Point::real(i as f64 * 0.25), Point::real(j as f64 * 0.25)));
        }
    }
    let sample = SampleSet::from_points(&space, points)?;
    Ok(Counterexample { name: "max-lift".into(), space, map: max_product_lift(&line_counterexample(), &x), sample })
}

/// A random permutation of a sample of a space whose diameter is below 1;
/// unit-distance preservation holds vacuously.
pub fn small_diameter_case(space: &SpaceModel, count: usize, seed: u64) -> Result<Counterexample> {
    let sample = SampleSet::random(space, count, seed)?;
    let mut perm: Vec<usize> = (0..count).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    let map = permutation_bijection(space, sample.points.clone(), perm)?;
    Ok(Counterexample { name: "small-diameter".into(), space: space.clone(), map, sample })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_confirmed() {
        for name in COUNTEREXAMPLES {
            let out = counterexample(name, 7).unwrap().run();
            assert!(out.preserves_unit.passed(), "{name}: {:?}", out.preserves_unit.witnesses);
            assert!(out.confirmed(), "{name}");
            assert!(out.preserves_unit.metric("related_pairs").unwrap() > 0.0, "{name} is vacuous");
        }
        assert!(counterexample("nope", 0).is_err());
    }

    #[test]
    fn small_sphere_flip_is_vacuous() {
        let out = sphere_flip_case(0.5 / PI, 24, 3).unwrap().run();
        assert!(out.confirmed());
        assert_eq!(out.preserves_unit.metric("related_pairs"), Some(0.0));
    }

    #[test]
    fn small_diameter_permutations() {
        let s = SpaceModel::sphere(0.5 / PI, 3).unwrap();
        let out = small_diameter_case(&s, 16, 1).unwrap().run();
        assert!(out.preserves_unit.passed());
        assert!(!out.isometry.passed());
    }
}
