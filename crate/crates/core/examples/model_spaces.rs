//! Distances, geodesics and midpoints in each closed-form model.

use busemann_lab::{rat, IdealPoint, MetricTree, Point, SpaceModel, TreePoint};

fn main() -> busemann_lab::Result<()> {
    let e2 = SpaceModel::euclidean(2);
    println!("euclidean |(0,0)(3,4)| = {}", e2.distance(&Point::vec2(0.0, 0.0), &Point::vec2(3.0, 4.0))?);

    let l3 = SpaceModel::minkowski(3.0)?;
    let (x, y) = (Point::vec2(0.0, 0.0), Point::vec2(2.0, 1.0));
    println!("l3 |xy| = {:.6}, midpoint {:?}", l3.distance(&x, &y)?, l3.midpoint(&x, &y)?);

    let h = SpaceModel::HyperbolicPlane;
    let d = h.distance(&Point::half(0.0, 1.0), &Point::half(0.0, std::f64::consts::E))?;
    println!("hyperbolic |i, ei| = {d}");
    let g = h.geodesic_between(&Point::half(-1.0, 0.1), &Point::half(1.0, 0.1))?;
    let len = g.length().unwrap();
    println!("apex of the arc through -1+0.1i and 1+0.1i: {:?}", g.point_at(len / 2.0)?);

    let star = MetricTree::star(3, rat(1, 2), 2)?;
    let t = SpaceModel::tree(star);
    let (a, b) = (Point::Tree(TreePoint::Vertex(1)), Point::Tree(TreePoint::Vertex(2)));
    println!("star leaves: distance {:?}, midpoint {:?}", t.exact_distance(&a, &b)?, t.midpoint(&a, &b)?);

    let s = SpaceModel::sphere(1.0, 3)?;
    let q = s.distance(&Point::Vector(vec![1.0, 0.0, 0.0]), &Point::Vector(vec![0.0, 1.0, 0.0]))?;
    println!("quarter great circle = {q:.6}");

    let prod = SpaceModel::max_product(SpaceModel::euclidean(1), SpaceModel::RealLine)?;
    let p = Point::pair(Point::Vector(vec![0.0]), Point::real(0.0));
    let r = Point::pair(Point::Vector(vec![0.3]), Point::real(2.0));
    println!("max product distance = {}", prod.distance(&p, &r)?);

    let line = h.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(1.0), None)?;
    println!("line -1 -> 1 passes through {:?} at time 0", line.point_at(0.0)?);
    Ok(())
}
