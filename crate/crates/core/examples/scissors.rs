//! Scissors translations: the shift by composing four transfers and by
//! the four-term Busemann formula.

use busemann_lab::suite::{euclidean_scissors, tree_scissors};
use busemann_lab::transfer::{scissors_shift, scissors_shift_by_composition, validate_scissors, ScissorsConfig};
use busemann_lab::{Scalar, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    let h = SpaceModel::HyperbolicPlane;
    let (e, ec) = euclidean_scissors()?;
    let (t, tc) = tree_scissors()?;
    let cases = [
        (e, ec),
        (t, tc),
        (h.clone(), ScissorsConfig::hyperbolic(-1.0, 1.0, -2.0, 2.0)?),
        (h.clone(), ScissorsConfig::hyperbolic(-1.0, 1.0, -2.0, 4.0)?),
    ];
    for (space, cfg) in &cases {
        let valid = validate_scissors(space, cfg);
        let sh = scissors_shift(space, cfg)?;
        println!(
            "{:<14} degenerate={} composition={:?} formula={:?}",
            space.name(),
            valid.metric("degenerate") == Some(1.0),
            sh.by_composition,
            sh.by_formula
        );
    }
    let cfg = &cases[2].1;
    for probe in [-1.0, 0.0, 2.0] {
        let v = scissors_shift_by_composition(&h, cfg, Scalar::Float(probe))?;
        println!("probe a({probe}): {:.9}", v.to_f64());
    }
    Ok(())
}
