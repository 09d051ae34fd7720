//! Bijections that preserve unit distance without being isometries.

use std::f64::consts::PI;

use busemann_lab::counterexamples::{counterexample, small_diameter_case, sphere_flip_case, COUNTEREXAMPLES};
use busemann_lab::SpaceModel;

fn main() -> busemann_lab::Result<()> {
    for name in COUNTEREXAMPLES {
        let c = counterexample(name, 7)?;
        let o = c.run();
        println!(
            "{name:<12} unit pairs {:>5}  preserved {}  isometry violations {}",
            o.preserves_unit.metric("related_pairs").unwrap_or(0.0),
            o.preserves_unit.passed(),
            o.isometry.failures
        );
        if let Some(w) = o.isometry.witnesses.first() {
            println!("             e.g. {:?} {:?}", w.points, w.values);
        }
    }
    let small = sphere_flip_case(1.0 / (2.0 * PI), 20, 1)?.run();
    println!("sphere of radius 1/(2 pi): {} unit pairs", small.preserves_unit.metric("related_pairs").unwrap_or(0.0));
    let tiny = small_diameter_case(&SpaceModel::sphere(0.1, 3)?, 12, 3)?.run();
    println!("diameter < 1, any permutation: confirmed {}", tiny.confirmed());
    Ok(())
}
