//! Lengths that stay exact (rational) for as long as every input is exact.
//!
//! Tree points carry rational offsets; once a floating value enters an
//! expression (for example the image of a point under a smooth map) the
//! result degrades to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

pub type Rational = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || LabError::Domain(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => text.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scalar {
    Exact(#[serde(with = "rational_text")] Rational),
    Float(f64),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Exact(Ratio::new_raw(0, 1));

    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => x,
        }
    }

    pub fn exact(self) -> Option<Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn abs(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    /// Exact comparison when both sides are rational, `f64` otherwise.
    pub fn compare(self, other: Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(&b),
            (a, b) => a.to_f64().total_cmp(&b.to_f64()),
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other.compare(self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other.compare(self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(x) => x == 0.0,
        }
    }

    pub fn half(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q / 2),
            Scalar::Float(x) => Scalar::Float(x / 2.0),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => f.write_str(&format_rational(q)),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

pub(crate) mod rational_text {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::from(rat(1, 10));
        let b = Scalar::from(rat(1, 5));
        assert_eq!(a + b, Scalar::Exact(rat(3, 10)));
        assert_eq!((b - a).abs(), Scalar::Exact(rat(1, 10)));
        assert_eq!(a.min(b), a);
    }

    #[test]
    fn mixing_degrades_to_float() {
        let s = Scalar::from(rat(1, 2)) + Scalar::Float(0.25);
        assert_eq!(s, Scalar::Float(0.75));
        assert!(!s.is_exact());
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 2 ").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
