//! Horospherical transfers between asymptotic lines and the translation
//! they induce.

use busemann_lab::transfer::{double_transfer, double_transfer_shifted, horospherical_transfer};
use busemann_lab::{IdealPoint, Scalar, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    let h = SpaceModel::HyperbolicPlane;
    let a = h.line_through(&IdealPoint::Boundary(0.0), &IdealPoint::Infinity, None)?;
    let b = h.line_through(&IdealPoint::Boundary(3.0), &IdealPoint::Infinity, None)?;

    let x = a.point_at(0.25)?;
    let m = horospherical_transfer(&h, &a, &b, &IdealPoint::Infinity, &x)?;
    println!("a(0.25) = {x:?} transfers to b({:.6}) = {:?}", m.param.to_f64(), m.point);

    let r = double_transfer(&h, &a, &b, &x)?;
    println!("round trip: shift {:.3e}, predicted {:.3e}", r.shift.to_f64(), r.predicted_shift.to_f64());

    // n legs, each moving the horosphere 1/n towards the common end
    let n = 10;
    let mut y = a.point_at(0.0)?;
    for _ in 0..n {
        y = double_transfer_shifted(&h, &a, &b, &y, Scalar::Float(1.0 / n as f64))?.image;
    }
    println!("after {n} shifted round trips: {y:?}; a(1) = {:?}", a.point_at(1.0)?);
    Ok(())
}
