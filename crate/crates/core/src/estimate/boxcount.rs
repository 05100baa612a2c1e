//! Box counts of sampled curves on the dyadic grid of side `2^{-m}`.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::curve::{sample_enclosed, CurveSpec};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Extra sampling depth beyond the box level.
pub const DEFAULT_EXTRA_DEPTH: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxCount {
    pub m: u32,
    /// Box side `2^{-m}`.
    pub delta: Rational,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCountSeries {
    pub counts: Vec<BoxCount>,
    /// Least-squares slope of `log2(count)` against `m`.
    pub slope_estimate: f64,
}

/// Number of boxes of side `2^{-m}` containing at least one of `points`.
/// Coordinates equal to 1 fall in the last box.
pub fn box_count_points(points: &[Vec<Rational>], m: u32) -> u64 {
    let last = (1u64 << m) - 1;
    let cells: HashSet<Vec<u64>> =
        points.iter().map(|p| p.iter().map(|c| c.floor_scaled(m).to_u64().unwrap_or(0).min(last)).collect()).collect();
    cells.len() as u64
}

/// Box count of the curve sampled at depth `m + extra`.
pub fn box_count(curve: &CurveSpec, m: u32, extra: u32) -> Result<BoxCount> {
    if extra < 2 {
        return Err(Error::InvalidParameter("sampling must be at least two levels finer than the boxes".into()));
    }
    let points = sample_enclosed(curve, m + extra)?;
    Ok(BoxCount { m, delta: Rational::dyadic_unit(m), count: box_count_points(&points, m) })
}

pub fn box_count_series(curve: &CurveSpec, range: RangeInclusive<u32>, extra: u32) -> Result<BoxCountSeries> {
    let counts: Vec<BoxCount> = range.map(|m| box_count(curve, m, extra)).collect::<Result<_>>()?;
    let pts: Vec<(f64, f64)> = counts.iter().map(|b| (b.m as f64, (b.count as f64).log2())).collect();
    Ok(BoxCountSeries { slope_estimate: ols_slope(&pts), counts })
}

/// Ordinary least-squares slope; 0 for fewer than two distinct abscissae.
pub fn ols_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
