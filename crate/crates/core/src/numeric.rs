//! Bracketing root search and unimodal minimisation used by the transfer
//! and strip machinery.

use crate::error::{LabError, Result};

/// Bisection on a continuous function with a sign change on `[lo, hi]`.
/// Stops when the bracket is narrower than `x_tol` or the residual is
/// below `f_tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, x_tol: f64, f_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(LabError::Search(format!(
            "no sign change on [{lo}, {hi}] ({f_lo}, {f_hi})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid.abs() <= f_tol || (hi - lo) <= x_tol {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of a monotone function, searching a window centred at `center`
/// of half-width `half_width`, doubling up to `max_doublings` times until
/// a sign change is bracketed.
pub fn bracket_and_bisect<F>(
    mut f: F,
    center: f64,
    half_width: f64,
    max_doublings: usize,
    tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut w = half_width;
    for _ in 0..=max_doublings {
        let (lo, hi) = (center - w, center + w);
        let (a, b) = (f(lo), f(hi));
        if a == 0.0 {
            return Ok(lo);
        }
        if b == 0.0 {
            return Ok(hi);
        }
        if a.signum() != b.signum() {
            return bisect(&mut f, lo, hi, tol * 1e-3, tol);
        }
        w *= 2.0;
    }
    Err(LabError::Search(format!(
        "no root within half-width {w} of {center}"
    )))
}

/// Golden-section search for the minimiser of a unimodal function.
pub fn golden_min<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while (hi - lo).abs() > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    (x, fx)
}
