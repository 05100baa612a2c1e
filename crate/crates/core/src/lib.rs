//! Exact constructions of piecewise-monotone de Bruijn–Erdős curves in
//! `[0,1]^n` and certified bounds on their one-dimensional Hausdorff measure.

pub mod curve;
pub mod error;
pub mod estimate;
pub mod family;
pub mod numeric;
pub mod oracle;
pub mod partition;
pub mod singular;

pub use error::{Error, LipschitzWitness, Result};
