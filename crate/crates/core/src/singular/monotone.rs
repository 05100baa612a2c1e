use serde::{Deserialize, Serialize};

use super::cantor::{enclose_cantor, eval_cantor};
use super::riesz_nagy::{check_weight, enclose_riesz_nagy, eval_riesz_nagy};
use super::staircase::NestedIntervalTree;
use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};

/// Default working precision (bits) for enclosures.
pub const DEFAULT_ENCLOSURE_BITS: u32 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn compose(self, inner: Direction) -> Direction {
        if self == inner {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub weight: Rational,
    pub term: MonotoneFn,
}

/// Symbolic monotone function on `[0,1]` (or on a declared sub-domain for
/// `Restriction`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneFn {
    /// The devil's staircase; non-decreasing, not injective.
    Cantor,
    RieszNagy {
        a: Rational,
    },
    Affine {
        slope: Rational,
        offset: Rational,
    },
    /// Continuous interpolation through `knots`, sorted by strictly
    /// increasing abscissa, with monotone ordinates.
    PiecewiseAffine {
        knots: Vec<(Rational, Rational)>,
    },
    /// A nested-interval staircase extended by 0 and 1 outside its root.
    IntervalStaircase {
        tree: NestedIntervalTree,
    },
    WeightedSum {
        terms: Vec<WeightedTerm>,
    },
    Composition {
        outer: Box<MonotoneFn>,
        inner: Box<MonotoneFn>,
    },
    Restriction {
        inner: Box<MonotoneFn>,
        domain: IntervalUnion,
    },
}

impl MonotoneFn {
    pub fn identity() -> Self {
        MonotoneFn::Affine { slope: Rational::one(), offset: Rational::zero() }
    }

    pub fn riesz_nagy(a: Rational) -> Self {
        MonotoneFn::RieszNagy { a }
    }

    pub fn compose(outer: MonotoneFn, inner: MonotoneFn) -> Self {
        MonotoneFn::Composition { outer: Box::new(outer), inner: Box::new(inner) }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MonotoneFn::Affine { slope, .. } if slope.is_negative() => Direction::Decreasing,
            MonotoneFn::PiecewiseAffine { knots } if knots.len() >= 2 && knots[0].1 > knots[knots.len() - 1].1 => {
                Direction::Decreasing
            }
            MonotoneFn::Composition { outer, inner } => outer.direction().compose(inner.direction()),
            MonotoneFn::Restriction { inner, .. } => inner.direction(),
            _ => Direction::Increasing,
        }
    }

    /// Whether distinct points always have distinct images.
    pub fn is_strict(&self) -> bool {
        match self {
            MonotoneFn::Cantor | MonotoneFn::IntervalStaircase { .. } => false,
            MonotoneFn::RieszNagy { .. } => true,
            MonotoneFn::Affine { slope, .. } => !slope.is_zero(),
            MonotoneFn::PiecewiseAffine { knots } => knots.windows(2).all(|w| w[0].1 != w[1].1),
            MonotoneFn::WeightedSum { terms } => terms.iter().any(|t| t.weight.is_positive() && t.term.is_strict()),
            MonotoneFn::Composition { outer, inner } => outer.is_strict() && inner.is_strict(),
            MonotoneFn::Restriction { inner, .. } => inner.is_strict(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MonotoneFn::Cantor | MonotoneFn::Affine { .. } => Ok(()),
            MonotoneFn::RieszNagy { a } => check_weight(a),
            MonotoneFn::PiecewiseAffine { knots } => {
                if knots.len() < 2 {
                    return Err(Error::InvalidParameter("piecewise affine needs two knots".into()));
                }
                if !knots.windows(2).all(|w| w[0].0 < w[1].0) {
                    return Err(Error::InvalidParameter("knot abscissae must increase".into()));
                }
                let up = knots.windows(2).all(|w| w[0].1 <= w[1].1);
                let down = knots.windows(2).all(|w| w[0].1 >= w[1].1);
                if !(up || down) {
                    return Err(Error::InvalidParameter("knot ordinates are not monotone".into()));
                }
                Ok(())
            }
            MonotoneFn::IntervalStaircase { tree } => tree.grid.validate(),
            MonotoneFn::WeightedSum { terms } => {
                if terms.iter().any(|t| !t.weight.is_positive()) {
                    return Err(Error::InvalidParameter("weights must be positive".into()));
                }
                let total: Rational = terms.iter().map(|t| &t.weight).sum();
                if total > 1 {
                    return Err(Error::InvalidParameter(format!("weights sum to {total} > 1")));
                }
                if terms.iter().any(|t| t.term.direction() == Direction::Decreasing) {
                    return Err(Error::InvalidParameter("weighted sums take increasing terms".into()));
                }
                terms.iter().try_for_each(|t| t.term.validate())
            }
            MonotoneFn::Composition { outer, inner } => {
                outer.validate()?;
                inner.validate()
            }
            MonotoneFn::Restriction { inner, .. } => inner.validate(),
        }
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        match self {
            MonotoneFn::Cantor => eval_cantor(x),
            MonotoneFn::RieszNagy { a } => eval_riesz_nagy(a, x),
            MonotoneFn::Affine { slope, offset } => Ok(slope * x + offset),
            MonotoneFn::PiecewiseAffine { knots } => eval_piecewise(knots, x),
            MonotoneFn::IntervalStaircase { tree } => tree.eval(x),
            MonotoneFn::WeightedSum { terms } => {
                let mut acc = Rational::zero();
                for t in terms {
                    acc += &t.weight * t.term.eval(x)?;
                }
                Ok(acc)
            }
            MonotoneFn::Composition { outer, inner } => outer.eval(&inner.eval(x)?),
            MonotoneFn::Restriction { inner, domain } => {
                if !domain.contains(x) {
                    return Err(Error::OutsideDomain { what: "restriction", x: x.clone() });
                }
                inner.eval(x)
            }
        }
    }

    /// Bracket `[lo, hi]` containing the value at `x`; a point bracket when
    /// the value is cheaply exact.
    pub fn enclose(&self, x: &Rational, bits: u32) -> Result<(Rational, Rational)> {
        match self {
            MonotoneFn::Cantor => enclose_cantor(x, bits as usize),
            MonotoneFn::RieszNagy { a } => enclose_riesz_nagy(a, x, bits),
            MonotoneFn::IntervalStaircase { tree } => tree.enclose(x, bits),
            MonotoneFn::Affine { .. } | MonotoneFn::PiecewiseAffine { .. } => {
                let v = self.eval(x)?;
                Ok((v.clone(), v))
            }
            MonotoneFn::WeightedSum { terms } => {
                let mut lo = Rational::zero();
                let mut hi = Rational::zero();
                for t in terms {
                    let (l, h) = t.term.enclose(x, bits)?;
                    lo += &t.weight * l;
                    hi += &t.weight * h;
                }
                Ok((lo, hi))
            }
            MonotoneFn::Composition { outer, inner } => {
                let (il, ih) = inner.enclose(x, bits)?;
                let (a, _) = outer.enclose(&il, bits)?;
                let (_, b) = outer.enclose(&ih, bits)?;
                if outer.direction() == Direction::Increasing {
                    Ok((a, b))
                } else {
                    // decreasing outer swaps the roles of the inner bounds
                    let (_, b2) = outer.enclose(&il, bits)?;
                    let (a2, _) = outer.enclose(&ih, bits)?;
                    Ok((a2, b2))
                }
            }
            MonotoneFn::Restriction { inner, domain } => {
                if !domain.contains(x) {
                    return Err(Error::OutsideDomain { what: "restriction", x: x.clone() });
                }
                inner.enclose(x, bits)
            }
        }
    }

    /// Exact value when available within the default budgets, otherwise a
    /// bracket.
    pub fn eval_or_enclose(&self, x: &Rational, bits: u32) -> Result<(Rational, Rational)> {
        match self.eval(x) {
            Ok(v) => Ok((v.clone(), v)),
            Err(Error::NotExactlyEvaluable { .. }) => self.enclose(x, bits),
            Err(e) => Err(e),
        }
    }
}

fn eval_piecewise(knots: &[(Rational, Rational)], x: &Rational) -> Result<Rational> {
    let (first, last) = (&knots[0], &knots[knots.len() - 1]);
    if x < &first.0 || x > &last.0 {
        return Err(Error::OutsideDomain { what: "piecewise affine", x: x.clone() });
    }
    let i = knots.partition_point(|(kx, _)| kx < x);
    if i < knots.len() && knots[i].0 == *x {
        return Ok(knots[i].1.clone());
    }
    let (x0, y0) = &knots[i - 1];
    let (x1, y1) = &knots[i];
    Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
}

/// `λ(f(u)) = Σ |f(hi) - f(lo)|` over the components of `u`, exact.
pub fn image_measure(f: &MonotoneFn, u: &IntervalUnion) -> Result<Rational> {
    let mut total = Rational::zero();
    for c in u.components() {
        total += (f.eval(&c.hi)? - f.eval(&c.lo)?).abs();
    }
    Ok(total)
}

/// Exact image `f(u)` of an interval union under a continuous monotone `f`.
///
/// Endpoint closedness is carried over for strict `f`; images under
/// non-strict functions are closed, which can differ from the true image
/// only in endpoints.
pub fn image_union(f: &MonotoneFn, u: &IntervalUnion) -> Result<IntervalUnion> {
    let strict = f.is_strict();
    let increasing = f.direction() == Direction::Increasing;
    let mut parts = Vec::with_capacity(u.len());
    for c in u.components() {
        let (flo, fhi) = (f.eval(&c.lo)?, f.eval(&c.hi)?);
        let (lc, hc) = if strict { (c.lo_closed, c.hi_closed) } else { (true, true) };
        parts.push(if increasing { Interval::new(flo, fhi, lc, hc) } else { Interval::new(fhi, flo, hc, lc) });
    }
    Ok(IntervalUnion::from_intervals(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn half() -> IntervalUnion {
        IntervalUnion::from_interval(Interval::closed(q(0, 1), q(1, 2)))
    }

    #[test]
    fn identity_image() {
        assert_eq!(image_measure(&MonotoneFn::identity(), &half()).unwrap(), q(1, 2));
    }

    #[test]
    fn cantor_flat_on_central_gap() {
        let gap = IntervalUnion::from_interval(Interval::open(q(1, 3), q(2, 3)));
        assert_eq!(image_measure(&MonotoneFn::Cantor, &gap).unwrap(), q(0, 1));
    }

    #[test]
    fn riesz_nagy_image_of_left_half() {
        let f = MonotoneFn::riesz_nagy(q(1, 4));
        assert_eq!(image_measure(&f, &half()).unwrap(), q(1, 4));
        let img = image_union(&f, &half()).unwrap();
        assert_eq!(img.components(), &[Interval::closed(q(0, 1), q(1, 4))]);
    }

    #[test]
    fn non_dyadic_endpoint_needs_refinement() {
        let f = MonotoneFn::riesz_nagy(q(1, 4));
        let u = IntervalUnion::from_interval(Interval::closed(q(0, 1), q(1, 3)));
        assert!(matches!(image_measure(&f, &u), Err(Error::NotExactlyEvaluable { .. })));
    }

    #[test]
    fn decreasing_affine() {
        let f = MonotoneFn::Affine { slope: q(-1, 2), offset: q(1, 1) };
        assert_eq!(f.direction(), Direction::Decreasing);
        let img = image_union(&f, &IntervalUnion::from_interval(Interval::closed_open(q(0, 1), q(1, 1)))).unwrap();
        assert_eq!(img.components(), &[Interval::open_closed(q(1, 2), q(1, 1))]);
        assert_eq!(image_measure(&f, &IntervalUnion::unit()).unwrap(), q(1, 2));
    }

    #[test]
    fn piecewise_affine_eval() {
        let f = MonotoneFn::PiecewiseAffine { knots: vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(1, 1))] };
        f.validate().unwrap();
        assert!(!f.is_strict());
        assert_eq!(f.eval(&q(1, 4)).unwrap(), q(1, 2));
        assert_eq!(f.eval(&q(3, 4)).unwrap(), q(1, 1));
        assert!(f.eval(&q(2, 1)).is_err());
    }

    #[test]
    fn weighted_sum_and_composition() {
        let f = MonotoneFn::WeightedSum {
            terms: vec![
                WeightedTerm { weight: q(1, 2), term: MonotoneFn::Cantor },
                WeightedTerm { weight: q(1, 2), term: MonotoneFn::identity() },
            ],
        };
        f.validate().unwrap();
        assert!(f.is_strict());
        assert_eq!(f.eval(&q(1, 3)).unwrap(), q(1, 2) * q(1, 2) + q(1, 6));
        let g = MonotoneFn::compose(MonotoneFn::Cantor, MonotoneFn::riesz_nagy(q(1, 4)));
        // R(1/2) = 1/4 and c(1/4) = 1/3
        assert_eq!(g.eval(&q(1, 2)).unwrap(), q(1, 3));
        let over =
            MonotoneFn::WeightedSum { terms: vec![WeightedTerm { weight: q(3, 2), term: MonotoneFn::identity() }] };
        assert!(over.validate().is_err());
    }

    #[test]
    fn enclosure_brackets_exact_values() {
        let f = MonotoneFn::compose(MonotoneFn::Cantor, MonotoneFn::riesz_nagy(q(1, 4)));
        let x = q(1, 3);
        let (lo, hi) = f.enclose(&x, 40).unwrap();
        assert!(lo <= hi);
        // R is increasing so R(1/4) <= R(1/3) <= R(1/2), and c is monotone
        assert!(lo >= f.eval(&q(1, 4)).unwrap());
        assert!(hi <= f.eval(&q(1, 2)).unwrap());
    }

    #[test]
    fn restriction_checks_domain() {
        let f = MonotoneFn::Restriction { inner: Box::new(MonotoneFn::identity()), domain: half() };
        assert_eq!(f.eval(&q(1, 4)).unwrap(), q(1, 4));
        assert!(f.eval(&q(3, 4)).is_err());
    }

    #[test]
    fn json_kind_tags() {
        let f = MonotoneFn::riesz_nagy(q(1, 4));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"riesz_nagy","a":"1/4"}"#);
        let back: MonotoneFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
