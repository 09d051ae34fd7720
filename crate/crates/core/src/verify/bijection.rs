use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::space::Point;

pub type PointMap = Arc<dyn Fn(&Point) -> Result<Point> + Send + Sync>;

/// A named bijection with its declared inverse.
#[derive(Clone)]
pub struct BijectionSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    forward: PointMap,
    inverse: PointMap,
}

impl BijectionSpec {
    pub fn new<F, G>(name: impl Into<String>, forward: F, inverse: G) -> Self
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
        G: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
    {
        BijectionSpec {
            name: name.into(),
            params: BTreeMap::new(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    pub fn from_maps(name: impl Into<String>, forward: PointMap, inverse: PointMap) -> Self {
        BijectionSpec { name: name.into(), params: BTreeMap::new(), forward, inverse }
    }

    pub fn identity() -> Self {
        Self::new("identity", |p| Ok(p.clone()), |p| Ok(p.clone()))
    }

    /// An involution is its own inverse.
    pub fn involution<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
    {
        let f: PointMap = Arc::new(f);
        Self::from_maps(name, f.clone(), f)
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        (self.forward)(p)
    }

    pub fn invert(&self, p: &Point) -> Result<Point> {
        (self.inverse)(p)
    }

    pub fn forward_map(&self) -> PointMap {
        self.forward.clone()
    }

    pub fn inverse_map(&self) -> PointMap {
        self.inverse.clone()
    }
}

impl fmt::Debug for BijectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BijectionSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}
