use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::hyperbolic::{arc_parameter, arc_point};
use super::normed::{axpy, dot, sub};
use super::tree::{MetricTree, TreeLeg, TreePath};
use super::{IdealPoint, Point};
use crate::error::{LabError, Result};
use crate::scalar::Scalar;

/// Parameter domain of a geodesic: `[0, length]`, `[0, inf)` or `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Segment { length: f64 },
    Ray,
    Line,
}

/// Closed-form evaluator for a unit-speed geodesic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    /// `origin + t * velocity`, velocity of unit norm.
    Affine { origin: Vec<f64>, velocity: Vec<f64> },
    /// Piecewise affine through `corners`, reaching corner `i` at `knots[i]`.
    Polyline { corners: Vec<Vec<f64>>, knots: Vec<f64> },
    /// `(x, y0 * exp(sign * t))` in the upper half-plane.
    Vertical { x: f64, y0: f64, sign: f64 },
    /// `(center + sigma r tanh(t + s0), r sech(t + s0))`.
    Arc { center: f64, radius: f64, sigma: f64, s0: f64 },
    /// `cos(t / r) u + sin(t / r) v` on the sphere of radius `r`.
    GreatCircle { u: Vec<f64>, v: Vec<f64>, radius: f64 },
    Tree { tree: Arc<MetricTree>, path: TreePath },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicRef {
    pub curve: Curve,
    pub domain: Domain,
    /// Ideal endpoint at `-inf` (lines only).
    pub start_ideal: Option<IdealPoint>,
    /// Ideal endpoint at `+inf` (rays and lines).
    pub end_ideal: Option<IdealPoint>,
}

const DOMAIN_SLACK: f64 = 1e-9;

impl GeodesicRef {
    pub fn length(&self) -> Option<f64> {
        match self.domain {
            Domain::Segment { length } => Some(length),
            _ => None,
        }
    }

    /// Exact length of a bounded tree geodesic, `Float` elsewhere.
    pub fn length_scalar(&self) -> Option<Scalar> {
        match (&self.curve, self.domain) {
            (Curve::Tree { path, .. }, Domain::Segment { .. }) => path.length(),
            (_, Domain::Segment { length }) => Some(Scalar::Float(length)),
            _ => None,
        }
    }

    pub fn contains_param(&self, t: f64) -> bool {
        match self.domain {
            Domain::Segment { length } => t >= -DOMAIN_SLACK && t <= length + DOMAIN_SLACK,
            Domain::Ray => t >= -DOMAIN_SLACK,
            Domain::Line => t.is_finite(),
        }
    }

    pub fn point_at(&self, t: f64) -> Result<Point> {
        if let Curve::Tree { .. } = self.curve {
            return self.point_at_scalar(Scalar::Float(t));
        }
        if !self.contains_param(t) {
            return Err(LabError::Domain(format!("parameter {t} outside geodesic domain")));
        }
        Ok(match &self.curve {
            Curve::Affine { origin, velocity } => Point::Vector(axpy(origin, t, velocity)),
            Curve::Polyline { corners, knots } => {
                let last = knots.len() - 1;
                let i = (0..last).find(|&i| t <= knots[i + 1]).unwrap_or(last - 1);
                let span = knots[i + 1] - knots[i];
                let w = ((t - knots[i]) / span).clamp(0.0, 1.0);
                let dir = sub(&corners[i + 1], &corners[i]);
                Point::Vector(axpy(&corners[i], w, &dir))
            }
            Curve::Vertical { x, y0, sign } => Point::Half { x: *x, y: y0 * (sign * t).exp() },
            Curve::Arc { center, radius, sigma, s0 } => {
                let (x, y) = arc_point(*center, *radius, *sigma, t + s0);
                Point::Half { x, y }
            }
            Curve::GreatCircle { u, v, radius } => {
                let a = t / radius;
                Point::Vector(u.iter().zip(v).map(|(p, q)| a.cos() * p + a.sin() * q).collect())
            }
            Curve::Tree { .. } => unreachable!("handled above"),
        })
    }

    /// Evaluation keeping rational parameters exact on trees.
    pub fn point_at_scalar(&self, t: Scalar) -> Result<Point> {
        match &self.curve {
            Curve::Tree { tree, path } => {
                if !self.contains_param(t.to_f64()) {
                    return Err(LabError::Domain(format!("parameter {t} outside geodesic domain")));
                }
                tree.eval(path, t).map(Point::Tree)
            }
            _ => self.point_at(t.to_f64()),
        }
    }

    /// Parameter of `p` assuming `p` lies on the curve (closed-form
    /// inverse). Feed the result back through `point_at` to measure the
    /// incidence residual.
    pub fn param_of(&self, p: &Point) -> Option<Scalar> {
        match (&self.curve, p) {
            (Curve::Affine { origin, velocity }, Point::Vector(v)) => {
                let d = sub(v, origin);
                Some(Scalar::Float(dot(&d, velocity) / dot(velocity, velocity)))
            }
            (Curve::Polyline { corners, knots }, Point::Vector(v)) => {
                let mut best = (f64::INFINITY, 0.0);
                for i in 0..corners.len() - 1 {
                    let seg = sub(&corners[i + 1], &corners[i]);
                    let w = (dot(&sub(v, &corners[i]), &seg) / dot(&seg, &seg)).clamp(0.0, 1.0);
                    let q = axpy(&corners[i], w, &seg);
                    let r = dot(&sub(v, &q), &sub(v, &q));
                    if r < best.0 {
                        best = (r, knots[i] + w * (knots[i + 1] - knots[i]));
                    }
                }
                Some(Scalar::Float(best.1))
            }
            (Curve::Vertical { y0, sign, .. }, Point::Half { y, .. }) => {
                Some(Scalar::Float((y / y0).ln() * sign))
            }
            (Curve::Arc { center, sigma, s0, .. }, Point::Half { x, y }) => {
                Some(Scalar::Float(arc_parameter(*center, *sigma, *x, *y) - s0))
            }
            (Curve::GreatCircle { u, v, radius }, Point::Vector(w)) => {
                Some(Scalar::Float(radius * dot(w, v).atan2(dot(w, u))))
            }
            (Curve::Tree { tree, path }, Point::Tree(q)) => tree.locate(path, q),
            _ => None,
        }
    }

    /// The same line run backwards, `t -> c(-t)`.
    pub fn reversed(&self) -> Result<GeodesicRef> {
        if self.domain != Domain::Line {
            return Err(LabError::Domain("only lines can be reversed".into()));
        }
        let curve = match &self.curve {
            Curve::Affine { origin, velocity } => Curve::Affine {
                origin: origin.clone(),
                velocity: velocity.iter().map(|v| -v).collect(),
            },
            Curve::Vertical { x, y0, sign } => Curve::Vertical { x: *x, y0: *y0, sign: -sign },
            Curve::Arc { center, radius, sigma, s0 } => Curve::Arc {
                center: *center,
                radius: *radius,
                sigma: -sigma,
                s0: -s0,
            },
            Curve::Tree { tree, path } => Curve::Tree {
                tree: tree.clone(),
                path: TreePath {
                    legs: path
                        .legs
                        .iter()
                        .rev()
                        .map(|leg| TreeLeg {
                            carrier: leg.carrier,
                            anchor_t: -leg.anchor_t,
                            anchor_offset: leg.anchor_offset,
                            dir: -leg.dir,
                            t_lo: leg.t_hi.map(|t| -t),
                            t_hi: leg.t_lo.map(|t| -t),
                        })
                        .collect(),
                },
            },
            Curve::Polyline { .. } | Curve::GreatCircle { .. } => {
                return Err(LabError::Domain("curve is not a line".into()))
            }
        };
        Ok(GeodesicRef {
            curve,
            domain: Domain::Line,
            start_ideal: self.end_ideal.clone(),
            end_ideal: self.start_ideal.clone(),
        })
    }

    /// The same line reparameterised as `t -> c(t + s)`.
    pub fn shifted(&self, s: Scalar) -> Result<GeodesicRef> {
        if self.domain != Domain::Line {
            return Err(LabError::Domain("only lines can be shifted".into()));
        }
        let f = s.to_f64();
        let curve = match &self.curve {
            Curve::Affine { origin, velocity } => Curve::Affine {
                origin: axpy(origin, f, velocity),
                velocity: velocity.clone(),
            },
            Curve::Vertical { x, y0, sign } => Curve::Vertical { x: *x, y0: y0 * (sign * f).exp(), sign: *sign },
            Curve::Arc { center, radius, sigma, s0 } => Curve::Arc {
                center: *center,
                radius: *radius,
                sigma: *sigma,
                s0: s0 + f,
            },
            Curve::Tree { tree, path } => Curve::Tree {
                tree: tree.clone(),
                path: TreePath {
                    legs: path
                        .legs
                        .iter()
                        .map(|leg| TreeLeg {
                            anchor_t: leg.anchor_t - s,
                            t_lo: leg.t_lo.map(|t| t - s),
                            t_hi: leg.t_hi.map(|t| t - s),
                            ..leg.clone()
                        })
                        .collect(),
                },
            },
            Curve::Polyline { .. } | Curve::GreatCircle { .. } => {
                return Err(LabError::Domain("curve is not a line".into()))
            }
        };
        Ok(GeodesicRef { curve, ..self.clone() })
    }

    /// `t -> c(t)` for `t >= 0`, ending at `c(+inf)`.
    pub fn forward_ray(&self) -> Result<GeodesicRef> {
        match self.domain {
            Domain::Ray => Ok(self.clone()),
            Domain::Line => Ok(GeodesicRef {
                curve: self.curve.clone(),
                domain: Domain::Ray,
                start_ideal: None,
                end_ideal: self.end_ideal.clone(),
            }),
            Domain::Segment { .. } => Err(LabError::Domain("segments have no ideal end".into())),
        }
    }

    /// `t -> c(-t)` for `t >= 0`, ending at `c(-inf)`.
    pub fn backward_ray(&self) -> Result<GeodesicRef> {
        self.reversed()?.forward_ray()
    }

    pub fn is_tree(&self) -> bool {
        matches!(self.curve, Curve::Tree { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{IdealPoint, MetricTree, SpaceModel};
    use crate::scalar::{rat, Scalar};

    #[test]
    fn reversal_runs_backwards() {
        let h = SpaceModel::HyperbolicPlane;
        let a = h.line_through(&IdealPoint::Boundary(-1.0), &IdealPoint::Boundary(2.0), None).unwrap();
        let r = a.reversed().unwrap();
        for &t in &[-2.0, 0.0, 0.7, 3.0] {
            let d = h.distance(&a.point_at(t).unwrap(), &r.point_at(-t).unwrap()).unwrap();
            assert!(d < 1e-12);
        }
        assert_eq!(r.end_ideal, Some(IdealPoint::Boundary(-1.0)));

        let tree = MetricTree::from_edges(3, &[(0, 1, rat(1, 2)), (1, 2, rat(1, 2))], 2, &[0, 2]).unwrap();
        let s = SpaceModel::tree(tree);
        let l = s.line_through(&IdealPoint::TreeEnd(0), &IdealPoint::TreeEnd(1), None).unwrap();
        let r = l.reversed().unwrap();
        for k in -6..6 {
            let t = Scalar::Exact(rat(k, 4));
            assert_eq!(l.point_at_scalar(t).unwrap(), r.point_at_scalar(-t).unwrap());
        }
        let sh = l.shifted(Scalar::Exact(rat(3, 4))).unwrap();
        assert_eq!(sh.point_at_scalar(Scalar::ZERO).unwrap(), l.point_at_scalar(Scalar::Exact(rat(3, 4))).unwrap());
        let ha = a.shifted(Scalar::Float(1.5)).unwrap();
        assert!(h.distance(&ha.point_at(0.0).unwrap(), &a.point_at(1.5).unwrap()).unwrap() < 1e-12);
        let back = l.backward_ray().unwrap();
        assert!(back.point_at_scalar(Scalar::Exact(rat(-1, 1))).is_err());
        assert_eq!(back.point_at_scalar(Scalar::Exact(rat(1, 1))).unwrap(), l.point_at_scalar(Scalar::Exact(rat(-1, 1))).unwrap());
    }
}
