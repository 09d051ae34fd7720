//! Builds p-tapes in strictly convex planes and validates their unit
//! quadruples.

use busemann_lab::tapes::{build_p_tape, tape_geometry, tape_position, validate_p_tape};
use busemann_lab::{IdealPoint, LabError, Point, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    for (space, h) in [(SpaceModel::euclidean(2), 0.6), (SpaceModel::minkowski(3.0)?, 0.8)] {
        let geo = tape_geometry(space.norm().unwrap(), &[1.0, 0.0], 6, 1.0, h)?;
        println!("{}: h = {h}, t = {:.4}, needs p > {:.4}", space.name(), geo.t, geo.threshold);
        let a = space.line_through(
            &IdealPoint::direction(&[-1.0, 0.0])?,
            &IdealPoint::direction(&[1.0, 0.0])?,
            Some(&Point::vec2(0.0, 0.0)),
        )?;
        let tape = build_p_tape(&space, &a, 6, 1.0, h)?;
        println!("  {} points, {}", tape.points.len(), validate_p_tape(&tape)?.summary());
        for j in 1..=3 {
            println!("  x[1,{j},0] = {:?} (expected {})", tape.get(1, j, 0)?, tape_position(6, j, 0)?);
        }
        match build_p_tape(&space, &a, 3, 1.0, h) {
            Err(LabError::Precondition(why)) => println!("  p = 3 rejected: {why}"),
            other => println!("  p = 3: {:?}", other.map(|t| t.points.len())),
        }
    }
    Ok(())
}
