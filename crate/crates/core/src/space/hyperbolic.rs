//! Upper half-plane model of the hyperbolic plane.

/// `d(z, w) = 2 asinh(|z - w| / (2 sqrt(Im z Im w)))`, the stable form of
/// `arccosh(1 + |z - w|^2 / (2 Im z Im w))`.
pub fn distance(x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let chord = (x1 - x2).hypot(y1 - y2);
    2.0 * (chord / (2.0 * (y1 * y2).sqrt())).asinh()
}

/// Geodesic data through two points: either a vertical line or a
/// semicircle centred on the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Support {
    Vertical { x: f64 },
    Circle { center: f64, radius: f64 },
}

pub fn support_through(x1: f64, y1: f64, x2: f64, y2: f64) -> Support {
    let scale = 1.0 + x1.abs().max(x2.abs());
    if (x1 - x2).abs() <= 1e-13 * scale {
        Support::Vertical { x: 0.5 * (x1 + x2) }
    } else {
        let center = (x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1) / (2.0 * (x2 - x1));
        Support::Circle { center, radius: (x1 - center).hypot(y1) }
    }
}

/// Arc parameter `s` of a point on the circle `(center, radius)` when the
/// arc is traversed with orientation `sigma` (`x = c + sigma r tanh s`).
pub fn arc_parameter(center: f64, sigma: f64, x: f64, y: f64) -> f64 {
    // sinh s = tanh s / sech s = sigma (x - c) / y
    (sigma * (x - center) / y).asinh()
}

pub fn arc_point(center: f64, radius: f64, sigma: f64, s: f64) -> (f64, f64) {
    (center + sigma * radius * s.tanh(), radius / s.cosh())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertical_distance_is_log_ratio() {
        let e = std::f64::consts::E;
        assert!((distance(0.0, 1.0, 0.0, e) - 1.0).abs() < 1e-15);
        let naive = (1.0 + (e - 1.0).powi(2) / (2.0 * e)).acosh();
        assert!((naive - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_through_symmetric_points_has_apex() {
        match support_through(-1.0, 0.1, 1.0, 0.1) {
            Support::Circle { center, radius } => {
                assert!(center.abs() < 1e-15);
                assert!((radius - (1.01f64).sqrt()).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arc_parameter_inverts_arc_point() {
        for &s in &[-5.0, -1.0, 0.0, 0.3, 4.0] {
            for &sigma in &[1.0, -1.0] {
                let (x, y) = arc_point(0.5, 1.5, sigma, s);
                assert!((arc_parameter(0.5, sigma, x, y) - s).abs() < 1e-9);
            }
        }
    }
}
