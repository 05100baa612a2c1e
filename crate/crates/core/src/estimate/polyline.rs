//! Inscribed polylines with certified fixed-point rounding.
//!
//! Every chord length is bracketed by `floor` and `ceil` square roots taken
//! at a working precision of `p + d + 8` fractional bits, summed exactly as
//! integers, and finally rounded outward to `p` bits. The reported interval
//! `[value - error_radius, value + error_radius]` always contains the exact
//! polyline length, so `value - error_radius` is a rigorous lower bound for
//! the one-dimensional Hausdorff measure of a continuous injective curve.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::singular::{eval_cantor, MonotoneFn};

/// Default number of fractional bits in reported lengths.
pub const DEFAULT_PRECISION: u32 = 64;

/// Deepest dyadic grid accepted by the per-cell paths.
pub const MAX_GRID_DEPTH: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolylineMethod {
    /// `Σ_k C(d,k) √(4^{-d} + (a^{d-k}(1-a)^k)²)` for the curve `(x, R_a(x), α)`.
    Collapsed,
    /// Chain through the endpoints of the level-`d` Cantor intervals, for the
    /// graph of the Cantor function.
    CantorCover,
    /// Chords over the dyadic grid `k/2^d`, bracketing each vertex.
    Grid,
}

impl PolylineMethod {
    pub fn name(self) -> &'static str {
        match self {
            PolylineMethod::Collapsed => "collapsed",
            PolylineMethod::CantorCover => "cantor_cover",
            PolylineMethod::Grid => "grid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolylineLength {
    pub value: Rational,
    pub error_radius: Rational,
    pub depth: u32,
    pub precision: u32,
    pub method: PolylineMethod,
}

impl PolylineLength {
    /// Certified lower bound on the polyline length.
    pub fn lower(&self) -> Rational {
        &self.value - &self.error_radius
    }

    /// Certified upper bound on the polyline length.
    pub fn upper(&self) -> Rational {
        &self.value + &self.error_radius
    }
}

/// Integer sums of scaled floor and ceil chord lengths.
#[derive(Default)]
struct FixedSum {
    lo: BigInt,
    hi: BigInt,
}

impl FixedSum {
    fn add(mut self, other: FixedSum) -> FixedSum {
        self.lo += other.lo;
        self.hi += other.hi;
        self
    }

    fn scaled(mut self, k: &BigInt) -> FixedSum {
        self.lo *= k;
        self.hi *= k;
        self
    }

    /// Outward rounding from `bits` to `precision` fractional bits.
    fn finish(self, bits: u32, precision: u32, depth: u32, method: PolylineMethod) -> PolylineLength {
        let shift = (bits - precision) as usize;
        let lo = self.lo >> shift;
        let hi = -((-self.hi) >> shift);
        let value = Rational::dyadic(&lo + &hi, precision + 1);
        let error_radius = Rational::dyadic(hi - lo, precision + 1);
        PolylineLength { value, error_radius, depth, precision, method }
    }
}

/// `(floor(√x · 2^bits), ceil(√x · 2^bits))` for rational `x >= 0`.
fn sqrt_bracket(x: &Rational, bits: u32) -> FixedSum {
    let lo = x.floor_scaled(2 * bits).sqrt();
    let n = x.ceil_scaled(2 * bits);
    let s = n.sqrt();
    let hi = if &s * &s == n { s } else { s + 1 };
    FixedSum { lo, hi }
}

fn working_bits(precision: u32, depth: u32) -> u32 {
    precision + depth + 8
}

fn check_precision(precision: u32) -> Result<()> {
    if precision < 32 {
        return Err(Error::InvalidParameter(format!("precision {precision} is below 32 bits")));
    }
    Ok(())
}

/// Length of the polyline through `(k/2^d, γ(k/2^d))`, picking the cheapest
/// exact path for the curve at hand.
pub fn polyline_length(curve: &CurveSpec, depth: u32, precision: u32) -> Result<PolylineLength> {
    let method = match curve.components.as_slice() {
        [MonotoneFn::RieszNagy { .. }] => PolylineMethod::Collapsed,
        [MonotoneFn::Cantor] => PolylineMethod::CantorCover,
        _ => PolylineMethod::Grid,
    };
    polyline_length_with(curve, depth, precision, method)
}

pub fn polyline_length_with(
    curve: &CurveSpec,
    depth: u32,
    precision: u32,
    method: PolylineMethod,
) -> Result<PolylineLength> {
    check_precision(precision)?;
    match (method, curve.components.as_slice()) {
        (PolylineMethod::Collapsed, [MonotoneFn::RieszNagy { a }]) => collapsed_riesz_nagy_length(a, depth, precision),
        (PolylineMethod::CantorCover, [MonotoneFn::Cantor]) => cantor_graph_length(depth, precision),
        (PolylineMethod::Grid, _) => grid_length(curve, depth, precision),
        (m, _) => Err(Error::InvalidParameter(format!("method {} does not apply to this curve", m.name()))),
    }
}

/// Polyline length of `x ↦ (x, R_a(x))` on the level-`d` dyadic grid in
/// `O(d)` terms: cell increments depend only on how many ones the cell
/// address has.
pub fn collapsed_riesz_nagy_length(a: &Rational, depth: u32, precision: u32) -> Result<PolylineLength> {
    check_precision(precision)?;
    if !a.is_positive() || *a >= 1 {
        return Err(Error::InvalidParameter(format!("weight {a} must lie in (0,1)")));
    }
    let bits = working_bits(precision, depth);
    let b = Rational::one() - a;
    let width_sq = Rational::dyadic_unit(2 * depth);
    let sum = (0..=depth)
        .into_par_iter()
        .map(|k| {
            let rise = a.pow(depth - k) * b.pow(k);
            let chord_sq = &width_sq + &rise * &rise;
            sqrt_bracket(&chord_sq, bits).scaled(&binomial(BigInt::from(depth), BigInt::from(k)))
        })
        .reduce(FixedSum::default, FixedSum::add);
    Ok(sum.finish(bits, precision, depth, PolylineMethod::Collapsed))
}

/// Chain through `0 = l_0 < r_0 < l_1 < … < r_{2^d-1} = 1`, the endpoints of
/// the level-`d` Cantor intervals, on the graph of the Cantor function.
pub fn cantor_graph_length(depth: u32, precision: u32) -> Result<PolylineLength> {
    check_precision(precision)?;
    if depth > MAX_GRID_DEPTH {
        return Err(Error::InvalidParameter(format!("depth {depth} exceeds {MAX_GRID_DEPTH}")));
    }
    let bits = working_bits(precision, depth);
    let pow3 = BigInt::from(3u32).pow(depth);
    let width = Rational::new(1, pow3.clone());
    let mut xs = Vec::with_capacity(2 << depth);
    for i in 0u64..(1u64 << depth) {
        // left endpoint: ternary digits 2·(binary digits of i)
        let mut num = BigInt::zero();
        for j in (0..depth).rev() {
            num = num * 3u32 + if (i >> j) & 1 == 1 { 2u32 } else { 0u32 };
        }
        let l = Rational::new(num, pow3.clone());
        let r = &l + &width;
        xs.push(l);
        xs.push(r);
    }
    let points: Vec<Vec<(Rational, Rational)>> = xs
        .par_iter()
        .map(|x| Ok(vec![(x.clone(), x.clone()), point_bracket(eval_cantor(x)?)]))
        .collect::<Result<_>>()?;
    Ok(chain_sum(&points, bits).finish(bits, precision, depth, PolylineMethod::CantorCover))
}

fn point_bracket(v: Rational) -> (Rational, Rational) {
    (v.clone(), v)
}

/// Chords over `k/2^d` with every vertex coordinate bracketed.
pub fn grid_length(curve: &CurveSpec, depth: u32, precision: u32) -> Result<PolylineLength> {
    check_precision(precision)?;
    if depth > MAX_GRID_DEPTH {
        return Err(Error::InvalidParameter(format!("depth {depth} exceeds {MAX_GRID_DEPTH}")));
    }
    let bits = working_bits(precision, depth);
    let points: Vec<Vec<(Rational, Rational)>> = (0..=(1u64 << depth))
        .into_par_iter()
        .map(|k| {
            let x = Rational::dyadic(k, depth);
            let mut p = Vec::with_capacity(curve.components.len() + 1);
            p.push(point_bracket(x.clone()));
            for f in &curve.components {
                p.push(f.enclose(&x, bits)?);
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;
    Ok(chain_sum(&points, bits).finish(bits, precision, depth, PolylineMethod::Grid))
}

/// Bracketed sum of chord lengths between consecutive bracketed vertices.
fn chain_sum(points: &[Vec<(Rational, Rational)>], bits: u32) -> FixedSum {
    points
        .par_windows(2)
        .map(|w| {
            let mut lo_sq = Rational::zero();
            let mut hi_sq = Rational::zero();
            for ((p_lo, p_hi), (q_lo, q_hi)) in w[0].iter().zip(&w[1]) {
                let gap = (q_lo - p_hi).max(p_lo - q_hi).max(Rational::zero());
                let span = (q_hi - p_lo).max(p_hi - q_lo);
                lo_sq += &gap * &gap;
                hi_sq += &span * &span;
            }
            let lo = sqrt_bracket(&lo_sq, bits).lo;
            let hi = sqrt_bracket(&hi_sq, bits).hi;
            FixedSum { lo, hi }
        })
        .reduce(FixedSum::default, FixedSum::add)
}

/// Exact value of the Cantor graph polyline, `1 - (2/3)^d + √(1 + (2/3)^{2d})`,
/// as a bracket at `bits` fractional bits; used only as a reference.
pub fn cantor_graph_closed_form(depth: u32, precision: u32) -> (Rational, Rational) {
    let r = Rational::new(2, 3).pow(depth);
    let flat = Rational::one() - &r;
    let s = sqrt_bracket(&(Rational::one() + &r * &r), precision);
    let scale = Rational::dyadic_unit(precision);
    (&flat + Rational::from(s.lo) * &scale, flat + Rational::from(s.hi) * scale)
}
