//! Busemann functions: closed forms against truncated limits, the
//! two-ray sum bound, Tits angles and shadows.

use std::f64::consts::PI;

use busemann_lab::horo::{
    busemann_value, check_busemann_sum_bound, check_shadow_semicontinuity, ray_pseudodistance, tits_delta,
    BusemannEval, RayPair, ShadowCheck,
};
use busemann_lab::{IdealPoint, Point, SpaceModel};

fn main() -> busemann_lab::Result<()> {
    let h = SpaceModel::HyperbolicPlane;
    let ray = h.ray_from(&Point::half(0.0, 1.0), &IdealPoint::Boundary(2.0))?;
    for y in [Point::half(1.0, 0.5), Point::half(-3.0, 2.0)] {
        let closed = busemann_value(&h, &ray, &y)?.to_f64();
        let t = BusemannEval::default().evaluate(&h, &ray, &y)?;
        println!("beta({y:?}) closed {closed:.9} truncated {:.9} at T = {}", t.value, t.truncation);
    }

    let c = h.ray_from(&Point::half(0.0, 1.0), &IdealPoint::Infinity)?;
    let d = h.ray_from(&Point::half(3.0, 0.5), &IdealPoint::Infinity)?;
    let pair = RayPair::new(&h, c, d)?;
    println!("rho = {:.6}", ray_pseudodistance(&h, &pair, 20)?.to_f64());
    println!("{}", check_busemann_sum_bound(&h, &pair)?.summary());

    let e2 = SpaceModel::euclidean(2);
    let east = IdealPoint::direction(&[1.0, 0.0])?;
    for th in [0.01, PI / 3.0, PI / 2.0, PI] {
        let eta = IdealPoint::direction(&[th.cos(), th.sin()])?;
        let delta = tits_delta(&e2, &Point::vec2(0.0, 0.0), &east, &eta, 1.0)?;
        println!("angle {th:.4}: delta {delta:.6}, sin(angle/2) {:.6}", (th / 2.0).sin());
    }

    let shadow = check_shadow_semicontinuity(&e2, &Point::vec2(0.0, 0.0), &Point::vec2(2.0, 0.0), &ShadowCheck::default())?;
    println!("{} ({} shadow points)", shadow.summary(), shadow.metric("shadow_points").unwrap_or(0.0));
    Ok(())
}
