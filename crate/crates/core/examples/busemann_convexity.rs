//! Metric axioms and the midpoint inequality `|mn| <= |yz|/2` on random
//! samples, and the sup-norm plane failing it.

use busemann_lab::suite::catalog;
use busemann_lab::verify::{check_busemann_midpoints, check_busemann_on_sample, check_metric_axioms, SampleSet};
use busemann_lab::{MidpointSelector, Point, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    for (i, space) in catalog().iter().enumerate() {
        let sample = SampleSet::random(space, 300, i as u64)?;
        let axioms = check_metric_axioms(space, &sample);
        let line = if space.is_busemann() {
            check_busemann_on_sample(space, &sample).summary()
        } else {
            "not a Busemann space".to_string()
        };
        println!("{:<28} {} | {}", space.name(), axioms.summary(), line);
    }

    let linf = SpaceModel::MinkowskiLinf;
    let rep = check_busemann_midpoints(
        &linf,
        &Point::vec2(0.0, 0.0),
        &Point::vec2(2.0, 0.0),
        &Point::vec2(2.0, 2.0),
        (MidpointSelector::LowerExtreme, MidpointSelector::UpperExtreme),
    )?;
    println!("\n{}", rep.summary());
    for w in &rep.witnesses {
        println!("  {:?} {:?}", w.points, w.values);
    }
    Ok(())
}
