use serde::{Deserialize, Serialize};

use super::polyline::{polyline_length, PolylineLength, PolylineMethod};
use super::upper::upper_bound_h1;
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Decimal digits used when rendering certified lower bounds.
pub const DECIMAL_DIGITS: usize = 24;

/// Paired bounds on the one-dimensional Hausdorff measure of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Certificate {
    /// Exact partition-sum upper bound.
    pub upper: Rational,
    pub lower: PolylineLength,
}

impl H1Certificate {
    pub fn is_valid(&self) -> bool {
        self.lower.lower() <= self.upper
    }

    /// Serializable form with `upper` as `"p/q"` and the lower bound as a
    /// decimal whose printed radius still covers the rounding of the value.
    pub fn view(&self) -> CertificateView {
        let ulp = Rational::new(1, num_bigint::BigInt::from(10u32).pow(DECIMAL_DIGITS as u32));
        CertificateView {
            upper: self.upper.clone(),
            lower: self.lower.value.to_decimal(DECIMAL_DIGITS),
            error_radius: (&self.lower.error_radius + ulp).to_decimal_up(DECIMAL_DIGITS),
            depth: self.lower.depth,
            precision: self.lower.precision,
            method: MethodTags { upper: "partition_sum".into(), lower: self.lower.method },
            valid: self.is_valid(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodTags {
    pub upper: String,
    pub lower: PolylineMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateView {
    pub upper: Rational,
    pub lower: String,
    pub error_radius: String,
    pub depth: u32,
    pub precision: u32,
    pub method: MethodTags,
    pub valid: bool,
}

pub fn certify(curve: &CurveSpec, depth: u32, precision: u32) -> Result<H1Certificate> {
    let upper = upper_bound_h1(curve)?;
    let lower = polyline_length(curve, depth, precision)?;
    Ok(H1Certificate { upper, lower })
}

/// Default flatness threshold `θ = 2^{-8}`.
pub fn default_theta() -> Rational {
    Rational::dyadic_unit(8)
}

/// Flat/steep split of the dyadic cells at depth `d` by the second
/// coordinate: a cell is flat when its rise is at most `θ` times its width.
///
/// Flat cells stand in for the part of the curve where the singular
/// component has zero derivative and project onto the first axis; steep
/// cells project onto the second. This is an illustration only and does not
/// certify anything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSplit {
    pub theta: Rational,
    pub depth: u32,
    pub flat_cells: u64,
    pub steep_cells: u64,
    /// Total width of the flat cells.
    pub flat_projection: Rational,
    /// Total rise of the steep cells.
    pub steep_projection: Rational,
    pub certifying: bool,
}

pub fn theta_split(curve: &CurveSpec, depth: u32, theta: &Rational) -> Result<ThetaSplit> {
    if depth > 24 {
        return Err(Error::InvalidParameter(format!("depth {depth} exceeds 24")));
    }
    let f = curve.coordinate_fn(2)?;
    let width = Rational::dyadic_unit(depth);
    let limit = theta * &width;
    let mut split = ThetaSplit {
        theta: theta.clone(),
        depth,
        flat_cells: 0,
        steep_cells: 0,
        flat_projection: Rational::zero(),
        steep_projection: Rational::zero(),
        certifying: false,
    };
    let mut prev = f.eval(&Rational::zero())?;
    for k in 1..=(1u64 << depth) {
        let next = f.eval(&Rational::dyadic(k, depth))?;
        let rise = (&next - &prev).abs();
        if rise <= limit {
            split.flat_cells += 1;
            split.flat_projection += &width;
        } else {
            split.steep_cells += 1;
            split.steep_projection += rise;
        }
        prev = next;
    }
    Ok(split)
}
