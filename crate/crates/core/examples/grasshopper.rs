//! Grasshopper distances: number of unit jumps between two points.

use busemann_lab::counterexamples::three_edge_point_set;
use busemann_lab::grasshopper::{euclidean_jump_path, grasshopper_distance, GrasshopperMode, UnitJumpGraph};
use busemann_lab::{Point, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    let r = SpaceModel::RealLine;
    for (x, y) in [(0.0, 3.0), (0.0, 2.5), (-1.5, 4.5)] {
        let g = grasshopper_distance(&r, &Point::real(x), &Point::real(y), GrasshopperMode::Analytic, None)?;
        println!("line G({x}, {y}) = {g}");
    }

    let e2 = SpaceModel::euclidean(2);
    let (x, y) = ([0.0, 0.0], [0.3, 0.4]);
    let path = euclidean_jump_path(&x, &y)?;
    println!("plane jump path {path:?}");
    let graph = UnitJumpGraph::new(&e2, path.into_iter().map(Point::Vector).collect())?;
    let g = grasshopper_distance(&e2, &Point::Vector(x.to_vec()), &Point::Vector(y.to_vec()), GrasshopperMode::Graph, Some(&graph))?;
    println!("plane G = {g}");

    let tps = three_edge_point_set()?;
    let t = SpaceModel::tree((*tps.tree).clone());
    let graph = UnitJumpGraph::new(&t, tps.domain_points())?;
    for c in graph.components() {
        let names: Vec<String> = c.iter().map(|&i| t.describe_point(&graph.nodes[i])).collect();
        println!("tree component {names:?}");
    }
    Ok(())
}
