//! Detects the flat strip between parallel lines and fits its norm.

use busemann_lab::verify::detect_normed_strip;
use busemann_lab::{IdealPoint, Point, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    let l3 = SpaceModel::minkowski(3.0)?;
    let (w, e) = (IdealPoint::direction(&[-1.0, 0.0])?, IdealPoint::direction(&[1.0, 0.0])?);
    let a = l3.line_through(&w, &e, Some(&Point::vec2(0.0, 0.0)))?;
    let b = l3.line_through(&w, &e, Some(&Point::vec2(0.0, 1.0)))?;
    let strip = detect_normed_strip(&l3, &a, &b, 8)?;
    println!("l3 parallel lines: strip = {}", strip.is_strip);
    for s in strip.table.iter().take(6) {
        println!("  N({:+.3}, {:+.3}) = {:.6}", s.alpha, s.beta, s.norm);
    }

    let h = SpaceModel::HyperbolicPlane;
    let a = h.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(1.0), None)?;
    let b = h.line_through(&IdealPoint::Boundary(-3.0), &IdealPoint::Boundary(3.0), None)?;
    println!("hyperbolic disjoint lines: strip = {}", detect_normed_strip(&h, &a, &b, 8)?.is_strip);
    Ok(())
}
