//! Slow reference implementations used to cross-check the estimators.
//!
//! Nothing here calls into the singular-function, partition, or estimate
//! modules: rasters are built by recursive subdivision, the Cantor function
//! is evaluated through its self-similarity equations, lengths are summed in
//! `f64` with compensated summation, and cover sums use their own sweep.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numeric::{IntervalUnion, Rational};

/// Values of a function on the grid `k / base^m`, `0 <= k <= base^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterFn {
    pub base: u32,
    pub m: u32,
    pub values: Vec<Rational>,
}

impl RasterFn {
    fn cells(base: u32, m: u32) -> Result<usize> {
        if base != 2 && base != 3 {
            return Err(Error::InvalidParameter(format!("raster base must be 2 or 3, got {base}")));
        }
        let n = (base as u64).checked_pow(m).filter(|&n| n <= 1 << 24);
        n.map(|n| n as usize).ok_or_else(|| Error::InvalidParameter(format!("raster {base}^{m} is too fine")))
    }

    /// Raster of an arbitrary function sampled at every grid point.
    pub fn from_fn(base: u32, m: u32, f: impl Fn(&Rational) -> Rational) -> Result<Self> {
        let n = Self::cells(base, m)?;
        let den = Rational::from((base as i64).pow(m));
        let values = (0..=n).map(|k| f(&(Rational::from(k as i64) / &den))).collect();
        Ok(RasterFn { base, m, values })
    }

    pub fn identity(base: u32, m: u32) -> Result<Self> {
        Self::from_fn(base, m, |x| x.clone())
    }

    pub fn affine(base: u32, m: u32, slope: &Rational, offset: &Rational) -> Result<Self> {
        Self::from_fn(base, m, |x| slope * x + offset)
    }

    /// `R_a` on the dyadic grid by repeated midpoint subdivision: each cell
    /// hands the fraction `a` of its rise to its left half.
    pub fn riesz_nagy(a: &Rational, m: u32) -> Result<Self> {
        Self::cells(2, m)?;
        let mut values = vec![Rational::zero(), Rational::one()];
        for _ in 0..m {
            let mut next = Vec::with_capacity(2 * values.len() - 1);
            for w in values.windows(2) {
                next.push(w[0].clone());
                next.push(&w[0] + a * (&w[1] - &w[0]));
            }
            next.push(Rational::one());
            values = next;
        }
        Ok(RasterFn { base: 2, m, values })
    }

    /// The Cantor function on the triadic grid by repeated subdivision into
    /// thirds: the middle third is flat at the average of the endpoints.
    pub fn cantor(m: u32) -> Result<Self> {
        Self::cells(3, m)?;
        let mut values = vec![Rational::zero(), Rational::one()];
        for _ in 0..m {
            let mut next = Vec::with_capacity(3 * values.len() - 2);
            for w in values.windows(2) {
                let mid = (&w[0] + &w[1]) / Rational::from(2);
                next.push(w[0].clone());
                next.push(mid.clone());
                next.push(mid);
            }
            next.push(Rational::one());
            values = next;
        }
        Ok(RasterFn { base: 3, m, values })
    }

    pub fn grid_len(&self) -> usize {
        self.values.len()
    }

    fn scale(&self) -> Rational {
        Rational::from((self.base as i64).pow(self.m))
    }
}

/// Cantor function through `c(x) = c(3x)/2` on `[0,1/3]`, `c = 1/2` on
/// `[1/3,2/3]`, `c(x) = 1/2 + c(3x-2)/2` on `[2/3,1]`, solving the linear
/// equation that closes the cycle of the orbit of `x`.
pub fn cantor_value(x: &Rational) -> Result<Rational> {
    if !x.in_unit_interval() {
        return Err(Error::OutsideDomain { what: "cantor oracle", x: x.clone() });
    }
    // c(x) = offset_i + scale_i · c(orbit_i)
    let third = Rational::new(1, 3);
    let two_thirds = Rational::new(2, 3);
    let half = Rational::new(1, 2);
    let mut seen: HashMap<Rational, (Rational, Rational)> = HashMap::new();
    let mut cur = x.clone();
    let mut offset = Rational::zero();
    let mut scale = Rational::one();
    loop {
        if cur.is_zero() {
            return Ok(offset);
        }
        if cur.is_one() {
            return Ok(offset + scale);
        }
        if cur >= third && cur <= two_thirds {
            return Ok(offset + scale * &half);
        }
        if let Some((o0, s0)) = seen.get(&cur) {
            // c(x) = o0 + s0·v and c(x) = offset + scale·v with v = c(cur)
            let v = (&offset - o0) / (s0 - &scale);
            return Ok(o0 + s0 * v);
        }
        seen.insert(cur.clone(), (offset.clone(), scale.clone()));
        if cur < third {
            cur = &cur * Rational::from(3);
        } else {
            offset += &scale * &half;
            cur = &cur * Rational::from(3) - Rational::from(2);
        }
        scale *= &half;
    }
}

/// Bracket `(lower, upper)` on the image measure of `u` under the
/// non-decreasing function behind `r`, read off the grid values around the
/// endpoints of each component.
pub fn raster_image_measure(r: &RasterFn, u: &IntervalUnion) -> (Rational, Rational) {
    let scale = r.scale();
    let last = r.values.len() - 1;
    let idx = |v: num_bigint::BigInt| -> usize {
        use num_traits::ToPrimitive;
        v.to_usize().unwrap_or(0).min(last)
    };
    let mut lower = Rational::zero();
    let mut upper = Rational::zero();
    for c in u.components() {
        let lo = &c.lo * &scale;
        let hi = &c.hi * &scale;
        let (lo_in, lo_out) = (idx(lo.ceil()), idx(lo.floor()));
        let (hi_in, hi_out) = (idx(hi.floor()), idx(hi.ceil()));
        if lo_in <= hi_in {
            lower += &r.values[hi_in] - &r.values[lo_in];
        }
        upper += &r.values[hi_out] - &r.values[lo_out];
    }
    (lower, upper)
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Length of the polyline whose vertices have coordinates given by the
/// rasters, cell by cell. All rasters must share base and resolution.
pub fn naive_polyline(rasters: &[RasterFn]) -> Result<f64> {
    let first = rasters.first().ok_or_else(|| Error::InvalidParameter("no coordinates".into()))?;
    if rasters.iter().any(|r| r.base != first.base || r.m != first.m) {
        return Err(Error::InvalidParameter("rasters differ in grid".into()));
    }
    let mut total = Compensated::default();
    for k in 1..first.values.len() {
        let sq: f64 = rasters.iter().map(|r| (&r.values[k] - &r.values[k - 1]).to_f64().powi(2)).sum();
        total.add(sq.sqrt());
    }
    Ok(total.value())
}

/// Polyline length of the graph of `R_a` over the `2^d` dyadic cells, grouped
/// by the number `k` of right turns: `C(d,k)` cells of width `2^-d` and rise
/// `a^(d-k) (1-a)^k`.
pub fn collapsed_polyline(a: f64, d: u32) -> f64 {
    let w = 0.5f64.powi(d as i32);
    let mut binom = 1.0f64;
    let mut total = Compensated::default();
    for k in 0..=d {
        let rise = a.powi((d - k) as i32) * (1.0 - a).powi(k as i32);
        total.add(binom * w.hypot(rise));
        binom = binom * (d - k) as f64 / (k + 1) as f64;
    }
    total.value()
}

pub enum CoverInput {
    Points(Vec<Rational>),
    Union(IntervalUnion),
}

/// Greedy left-to-right cover with pieces of diameter at most `delta`: each
/// piece starts at the leftmost uncovered point and takes everything within
/// `delta` of it. Returns the sum of piece diameters.
pub fn brute_cover_sum(input: &CoverInput, delta: &Rational) -> Result<Rational> {
    if !delta.is_positive() {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let mut total = Rational::zero();
    match input {
        CoverInput::Points(pts) => {
            let mut pts = pts.clone();
            pts.sort();
            pts.dedup();
            let mut i = 0;
            while i < pts.len() {
                let start = pts[i].clone();
                let end = &start + delta;
                let mut j = i;
                while j + 1 < pts.len() && pts[j + 1] <= end {
                    j += 1;
                }
                total += &pts[j] - &start;
                i = j + 1;
            }
        }
        CoverInput::Union(u) => {
            let comps: Vec<(Rational, Rational)> =
                u.components().iter().map(|c| (c.lo.clone(), c.hi.clone())).collect();
            let mut i = 0;
            let mut start = match comps.first() {
                Some(c) => c.0.clone(),
                None => return Ok(total),
            };
            loop {
                let end = &start + delta;
                let mut sup = start.clone();
                while i < comps.len() && comps[i].0 <= end {
                    if comps[i].1 <= end {
                        sup = comps[i].1.clone();
                        i += 1;
                    } else {
                        sup = end.clone();
                        break;
                    }
                }
                total += &sup - &start;
                if i >= comps.len() {
                    break;
                }
                start = if comps[i].0 > end { comps[i].0.clone() } else { end };
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{q, Interval};

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::closed(a, b)
    }

    #[test]
    fn cantor_oracle_values() {
        assert_eq!(cantor_value(&q(1, 4)).unwrap(), q(1, 3));
        assert_eq!(cantor_value(&q(1, 3)).unwrap(), q(1, 2));
        assert_eq!(cantor_value(&q(3, 4)).unwrap(), q(2, 3));
        assert_eq!(cantor_value(&q(1, 10)).unwrap(), q(1, 5));
        assert_eq!(cantor_value(&q(2, 9)).unwrap(), q(1, 4));
    }

    #[test]
    fn raster_grid_lengths() {
        assert_eq!(RasterFn::riesz_nagy(&q(1, 4), 3).unwrap().grid_len(), 9);
        assert_eq!(RasterFn::cantor(2).unwrap().grid_len(), 10);
        assert!(RasterFn::identity(5, 2).is_err());
    }

    #[test]
    fn raster_riesz_nagy_values() {
        let r = RasterFn::riesz_nagy(&q(1, 4), 2).unwrap();
        assert_eq!(r.values, vec![q(0, 1), q(1, 16), q(1, 4), q(7, 16), q(1, 1)]);
    }

    #[test]
    fn image_measure_brackets() {
        let id = RasterFn::identity(2, 3).unwrap();
        let half = IntervalUnion::from_interval(iv(q(0, 1), q(1, 2)));
        assert_eq!(raster_image_measure(&id, &half), (q(1, 2), q(1, 2)));
        let c = RasterFn::cantor(3).unwrap();
        let gap = IntervalUnion::from_interval(Interval::open(q(1, 3), q(2, 3)));
        assert_eq!(raster_image_measure(&c, &gap), (q(0, 1), q(0, 1)));
        let r = RasterFn::riesz_nagy(&q(1, 4), 8).unwrap();
        let (lo, hi) = raster_image_measure(&r, &half);
        assert!(lo <= q(1, 4) && q(1, 4) <= hi);
        // an off-grid endpoint widens the bracket
        let third = IntervalUnion::from_interval(iv(q(0, 1), q(1, 3)));
        let (lo, hi) = raster_image_measure(&id, &third);
        assert_eq!((lo, hi), (q(1, 4), q(3, 8)));
    }

    #[test]
    fn naive_lengths() {
        let id = RasterFn::identity(2, 4).unwrap();
        let len = naive_polyline(&[id.clone(), id]).unwrap();
        assert!((len - 2f64.sqrt()).abs() < 1e-15);
        let c = RasterFn::cantor(6).unwrap();
        let x = RasterFn::identity(3, 6).unwrap();
        let closed = 1.0 - (2f64 / 3.0).powi(6) + (1.0 + (2f64 / 3.0).powi(12)).sqrt();
        assert!((naive_polyline(&[x, c]).unwrap() - closed).abs() < 1e-13);
    }

    #[test]
    fn collapsed_matches_raster() {
        let r = RasterFn::riesz_nagy(&q(1, 4), 10).unwrap();
        let x = RasterFn::identity(2, 10).unwrap();
        let direct = naive_polyline(&[x, r]).unwrap();
        assert!((collapsed_polyline(0.25, 10) - direct).abs() < 1e-13);
        assert!((collapsed_polyline(0.25, 0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cover_sums() {
        let unit = CoverInput::Union(IntervalUnion::unit());
        assert_eq!(brute_cover_sum(&unit, &q(1, 4)).unwrap(), q(1, 1));
        let ends = CoverInput::Points(vec![q(0, 1), q(1, 1)]);
        assert_eq!(brute_cover_sum(&ends, &q(1, 4)).unwrap(), q(0, 1));
        let level2 = IntervalUnion::from_intervals(vec![
            iv(q(0, 1), q(1, 9)),
            iv(q(2, 9), q(1, 3)),
            iv(q(2, 3), q(7, 9)),
            iv(q(8, 9), q(1, 1)),
        ]);
        assert_eq!(brute_cover_sum(&CoverInput::Union(level2), &q(1, 9)).unwrap(), q(4, 9));
    }
}
