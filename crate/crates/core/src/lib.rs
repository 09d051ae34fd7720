//! Closed-form model metric spaces and executable checks for Busemann
//! convexity, Busemann functions, horospherical transfers, scissors,
//! tapes and unit-distance-preserving counterexamples.

pub mod counterexamples;
pub mod error;
pub mod grasshopper;
pub mod horo;
pub mod numeric;
pub mod report;
pub mod scalar;
pub mod space;
pub mod suite;
pub mod tapes;
pub mod transfer;
pub mod verify;

pub use error::{LabError, Result};
pub use report::{Status, VerificationReport, Witness};
pub use scalar::{rat, Rational, Scalar};
pub use space::{GeodesicRef, IdealPoint, MetricTree, MidpointSelector, Point, SpaceModel, TreePoint};
