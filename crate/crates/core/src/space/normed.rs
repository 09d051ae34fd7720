use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    L2,
    Lp(f64),
    Linf,
}

impl Norm {
    pub fn eval(&self, v: &[f64]) -> f64 {
        match *self {
            Norm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::Linf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Norm::Lp(p) => {
                let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if scale == 0.0 {
                    return 0.0;
                }
                scale * v.iter().map(|x| (x.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }

    pub fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.eval(&diff)
    }

    /// Support functional at a unit vector `u`: the linear form `phi` with
    /// `phi(u) = 1` and `|phi(v)| <= N(v)`. Unique for smooth norms.
    pub fn dual_at(&self, u: &[f64]) -> Option<Vec<f64>> {
        match *self {
            Norm::L2 => Some(u.to_vec()),
            Norm::Lp(p) => Some(u.iter().map(|x| x.signum() * x.abs().powf(p - 1.0)).collect()),
            Norm::Linf => None,
        }
    }

    pub fn strictly_convex(&self) -> bool {
        !matches!(self, Norm::Linf)
    }
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn axpy(origin: &[f64], t: f64, v: &[f64]) -> Vec<f64> {
    origin.iter().zip(v).map(|(o, d)| o + t * d).collect()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn scale(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}
