//! Intervals with per-endpoint closedness and finite disjoint unions of them.
//!
//! An [`IntervalUnion`] is kept normalized: components are nonempty,
//! pairwise disjoint, sorted by left endpoint, and no two neighbours can be
//! merged (they are separated by a gap, or touch at a point both omit).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Self {
        Interval { lo, hi, lo_closed, hi_closed }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, false)
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, false, true)
    }

    pub fn point(x: Rational) -> Self {
        Self::closed(x.clone(), x)
    }

    pub fn unit() -> Self {
        Self::closed(Rational::zero(), Rational::one())
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn length(&self) -> Rational {
        if self.is_empty() {
            Rational::zero()
        } else {
            &self.hi - &self.lo
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    /// Whether `other` lies inside `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        if other.is_empty() {
            return true;
        }
        let lo_ok = match other.lo.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed || !other.lo_closed,
            Ordering::Less => false,
        };
        let hi_ok = match other.hi.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed || !other.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }

    /// Order key for sorting: by left endpoint, closed before open.
    fn start_key(&self) -> (&Rational, bool) {
        (&self.lo, !self.lo_closed)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    components: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { components: Vec::new() }
    }

    pub fn unit() -> Self {
        Self::from_interval(Interval::unit())
    }

    pub fn from_interval(iv: Interval) -> Self {
        Self::from_intervals(vec![iv])
    }

    /// Builds a normalized union from arbitrary (possibly overlapping or
    /// empty) intervals.
    pub fn from_intervals(mut parts: Vec<Interval>) -> Self {
        parts.retain(|iv| !iv.is_empty());
        parts.sort_by(|a, b| a.start_key().cmp(&b.start_key()));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            if let Some(last) = out.last_mut() {
                let mergeable = match iv.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => last.hi_closed || iv.lo_closed,
                    Ordering::Greater => false,
                };
                if mergeable {
                    match iv.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = iv.hi;
                            last.hi_closed = iv.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= iv.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        IntervalUnion { components: out }
    }

    /// Finite set of points as a union of degenerate closed intervals.
    pub fn from_points(points: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point).collect())
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Interval> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Exact Lebesgue measure.
    pub fn measure(&self) -> Rational {
        self.components.iter().map(Interval::length).sum()
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.components.first().map(|c| &c.lo)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.components.last().map(|c| &c.hi)
    }

    /// `sup - inf`; zero for the empty set.
    pub fn diam(&self) -> Rational {
        match (self.inf(), self.sup()) {
            (Some(a), Some(b)) => b - a,
            _ => Rational::zero(),
        }
    }

    /// Smallest closed interval containing the union.
    pub fn hull(&self) -> Option<Interval> {
        Some(Interval::closed(self.inf()?.clone(), self.sup()?.clone()))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.components.partition_point(|c| c.hi < *x);
        self.components[idx..].iter().take(2).any(|c| c.contains(x))
    }

    pub fn contains_interval(&self, iv: &Interval) -> bool {
        iv.is_empty() || self.components.iter().any(|c| c.contains_interval(iv))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.components.clone();
        parts.extend(other.components.iter().cloned());
        Self::from_intervals(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let (a, b) = (&self.components, &other.components);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let iv = a[i].intersect(&b[j]);
            if !iv.is_empty() {
                out.push(iv);
            }
            // advance whichever ends first
            let a_first = match a[i].hi.cmp(&b[j].hi) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => !a[i].hi_closed || b[j].hi_closed,
            };
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_intervals(out)
    }

    pub fn intersect_interval(&self, iv: &Interval) -> IntervalUnion {
        self.intersect(&IntervalUnion::from_interval(iv.clone()))
    }

    /// Complement relative to the closed interval `within`.
    pub fn complement_in(&self, within: &Interval) -> IntervalUnion {
        let mut pieces = Vec::with_capacity(self.components.len() + 1);
        let mut lo = within.lo.clone();
        let mut lo_closed = within.lo_closed;
        for c in &self.components {
            pieces.push(Interval::new(lo, c.lo.clone(), lo_closed, !c.lo_closed));
            lo = c.hi.clone();
            lo_closed = !c.hi_closed;
        }
        pieces.push(Interval::new(lo, within.hi.clone(), lo_closed, within.hi_closed));
        IntervalUnion::from_intervals(pieces).intersect_interval(within)
    }

    pub fn subtract(&self, other: &IntervalUnion) -> IntervalUnion {
        let Some(hull) = self.hull() else {
            return IntervalUnion::empty();
        };
        self.intersect(&other.complement_in(&hull))
    }

    pub fn set_op(&self, other: &IntervalUnion, kind: SetOp) -> IntervalUnion {
        match kind {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersect(other),
            SetOp::Subtract => self.subtract(other),
        }
    }

    pub fn is_disjoint(&self, other: &IntervalUnion) -> bool {
        self.intersect(other).is_empty()
    }

    /// Checks the normalization invariant; used by tests and after
    /// deserialization.
    pub fn is_normalized(&self) -> bool {
        self.components.iter().all(|c| !c.is_empty())
            && self.components.windows(2).all(|w| match w[0].hi.cmp(&w[1].lo) {
                Ordering::Less => true,
                Ordering::Equal => !w[0].hi_closed && !w[1].lo_closed,
                Ordering::Greater => false,
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOp {
    Union,
    Intersect,
    Subtract,
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c:?}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.components.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<Interval>::deserialize(deserializer)?;
        Ok(IntervalUnion::from_intervals(parts))
    }
}

impl FromIterator<Interval> for IntervalUnion {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Self::from_intervals(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn cl(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::closed(q(a.0, a.1), q(b.0, b.1))
    }

    #[test]
    fn measure_of_touching_halves_is_one() {
        let u = IntervalUnion::from_intervals(vec![cl((0, 1), (1, 2)), cl((1, 2), (1, 1))]);
        assert_eq!(u.len(), 1);
        assert_eq!(u.measure(), q(1, 1));
    }

    #[test]
    fn measure_of_empty_is_zero() {
        assert_eq!(IntervalUnion::empty().measure(), q(0, 1));
    }

    #[test]
    fn overlapping_inputs_merge() {
        let u = IntervalUnion::from_intervals(vec![cl((0, 1), (1, 3)), cl((1, 4), (1, 2))]);
        assert_eq!(u.components(), &[cl((0, 1), (1, 2))]);
        assert_eq!(u.measure(), q(1, 2));
    }

    #[test]
    fn open_touching_intervals_stay_apart() {
        let u = IntervalUnion::from_intervals(vec![
            Interval::closed_open(q(0, 1), q(1, 2)),
            Interval::open_closed(q(1, 2), q(1, 1)),
        ]);
        assert_eq!(u.len(), 2);
        assert!(!u.contains(&q(1, 2)));
        assert!(u.contains(&q(1, 4)));
        assert!(u.is_normalized());
    }

    #[test]
    fn subtract_self_is_empty() {
        let u = IntervalUnion::unit();
        assert!(u.subtract(&u).is_empty());
    }

    #[test]
    fn intersect_example() {
        let a = IntervalUnion::from_interval(cl((0, 1), (1, 2)));
        let b = IntervalUnion::from_interval(cl((1, 4), (1, 1)));
        assert_eq!(a.intersect(&b).components(), &[cl((1, 4), (1, 2))]);
    }

    #[test]
    fn subtract_middle_gives_half_open_pieces() {
        let a = IntervalUnion::from_intervals(vec![cl((0, 1), (1, 3)), cl((2, 3), (1, 1))]);
        let b = IntervalUnion::from_interval(cl((1, 4), (3, 4)));
        let d = a.subtract(&b);
        assert_eq!(
            d.components(),
            &[Interval::closed_open(q(0, 1), q(1, 4)), Interval::open_closed(q(3, 4), q(1, 1)),]
        );
        assert_eq!(d.measure(), q(1, 2));
    }

    #[test]
    fn subtracting_a_point_splits() {
        let a = IntervalUnion::unit();
        let d = a.subtract(&IntervalUnion::from_points([q(1, 2)]));
        assert_eq!(d.len(), 2);
        assert_eq!(d.measure(), q(1, 1));
        assert!(!d.contains(&q(1, 2)));
    }

    #[test]
    fn empty_intervals_are_dropped() {
        let u = IntervalUnion::from_intervals(vec![
            Interval::closed_open(q(1, 2), q(1, 2)),
            Interval::closed(q(3, 4), q(1, 4)),
        ]);
        assert!(u.is_empty());
        assert!(Interval::point(q(1, 3)).length().is_zero());
    }

    #[test]
    fn json_shape() {
        let u = IntervalUnion::from_interval(Interval::closed_open(q(0, 1), q(1, 3)));
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"[{"lo":"0/1","hi":"1/3","lo_closed":true,"hi_closed":false}]"#);
        let back: IntervalUnion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
    }
}
