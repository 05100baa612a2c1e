//! Strictly increasing maps that send a null set to a set of full measure,
//! truncated after finitely many staircases.
//!
//! Rational-endpoint intervals `I_0, I_1, …` are visited in a fixed order.
//! For each one a staircase `g_m` is built whose set `N_m` avoids the
//! excluded set and every earlier `N`. The map is
//!
//! ```text
//! f = Σ_{m<M} 2^{-(m+1)} g_m + 2^{-M} · id
//! ```
//!
//! where the identity tail keeps `f` strictly increasing with `f(1) = 1`.
//! Since `g_m` rises by 1 across `N_m` and every term is non-decreasing,
//! `λ(f(N_m)) >= 2^{-(m+1)}`, so the union of the `N_m` is carried onto a set
//! of measure at least `1 - 2^{-M}`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::grid::PlacementGrid;
use super::monotone::{image_measure, MonotoneFn, WeightedTerm};
use super::staircase::{build_tree, NestedIntervalTree};
use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};

/// Closed subintervals `[p, q]` of `[0,1]` with rational endpoints, listed by
/// denominator bound `b = 1, 2, 3, …` and, within a bound, lexicographically
/// by `(lo, hi)` among the intervals that first appear at that bound.
pub fn rational_intervals() -> impl Iterator<Item = Interval> {
    (1i64..).flat_map(|b| {
        let mut points: Vec<Rational> = (1..=b)
            .flat_map(|d| {
                (0..=d).filter(move |&n| n.gcd(&d) == 1 || (n == 0 && d == 1)).map(move |n| Rational::new(n, d))
            })
            .collect();
        points.sort();
        points.dedup();
        let is_new = move |r: &Rational| *r.denom() == b.into();
        let mut fresh = Vec::new();
        for (i, lo) in points.iter().enumerate() {
            for hi in &points[i + 1..] {
                if is_new(lo) || is_new(hi) {
                    fresh.push(Interval::closed(lo.clone(), hi.clone()));
                }
            }
        }
        fresh
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapperConfig {
    /// Depth of every staircase tree; at least 1.
    pub staircase_depth: u32,
    pub grid: PlacementGrid,
    /// How many enumerated intervals may be inspected before giving up.
    pub max_candidates: usize,
}

impl Default for MapperConfig {
    fn default() -> Self {
        MapperConfig { staircase_depth: 4, grid: PlacementGrid::Dyadic, max_candidates: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapperResult {
    /// The strictly increasing map.
    pub f: MonotoneFn,
    /// Union of the truncated null sets.
    pub n_trunc: IntervalUnion,
    /// Number of staircases `M`.
    pub level: usize,
    /// `1 - 2^{-M}`.
    pub image_lower_bound: Rational,
    /// The intervals `I_m` that received a staircase.
    pub intervals: Vec<Interval>,
    /// The individual null sets `N_m`.
    pub pieces: Vec<IntervalUnion>,
}

impl MapperResult {
    /// Staircase trees in order of `m`.
    pub fn trees(&self) -> Vec<&NestedIntervalTree> {
        let MonotoneFn::WeightedSum { terms } = &self.f else {
            return Vec::new();
        };
        terms
            .iter()
            .filter_map(|t| match &t.term {
                MonotoneFn::IntervalStaircase { tree } => Some(tree),
                _ => None,
            })
            .collect()
    }

    /// Union of the exact dyadic preimages of the null sets under the grid
    /// map (the sets themselves on the dyadic grid).
    pub fn preimage_union(&self) -> Option<IntervalUnion> {
        let mut acc = IntervalUnion::empty();
        for t in self.trees() {
            acc = acc.union(&t.preimage_union()?);
        }
        Some(acc)
    }

    /// Exact `λ(f(N_trunc))`.
    pub fn image_measure(&self) -> Result<Rational> {
        image_measure(&self.f, &self.n_trunc)
    }
}

/// Mapper on the dyadic grid with default staircase depth.
pub fn build_full_measure_mapper(excluded: &IntervalUnion, m: usize) -> Result<MapperResult> {
    build_full_measure_mapper_with(excluded, m, &MapperConfig::default())
}

pub fn build_full_measure_mapper_with(excluded: &IntervalUnion, m: usize, cfg: &MapperConfig) -> Result<MapperResult> {
    if m == 0 {
        return Err(Error::InvalidParameter("mapper needs at least one staircase".into()));
    }
    if cfg.staircase_depth == 0 {
        return Err(Error::InvalidParameter("staircase depth must be at least 1".into()));
    }
    cfg.grid.validate()?;

    let mut blocked = excluded.clone();
    let mut trees = Vec::with_capacity(m);
    let mut intervals = Vec::with_capacity(m);
    let mut pieces = Vec::with_capacity(m);
    for candidate in rational_intervals().take(cfg.max_candidates) {
        if trees.len() == m {
            break;
        }
        let tree = match build_tree(&candidate, &blocked, cfg.staircase_depth, &cfg.grid) {
            Ok(t) => t,
            Err(Error::ConstructionFailure(_)) | Err(Error::InvalidParameter(_)) => continue,
            Err(e) => return Err(e),
        };
        let n = tree.leaf_union();
        blocked = blocked.union(&n);
        pieces.push(n);
        intervals.push(candidate);
        trees.push(tree);
    }
    if trees.len() < m {
        return Err(Error::ConstructionFailure(format!(
            "only {} of {m} intervals admit a staircase avoiding the excluded set",
            trees.len()
        )));
    }

    let mut terms: Vec<WeightedTerm> = trees
        .into_iter()
        .enumerate()
        .map(|(i, tree)| WeightedTerm {
            weight: Rational::dyadic_unit(i as u32 + 1),
            term: MonotoneFn::IntervalStaircase { tree },
        })
        .collect();
    terms.push(WeightedTerm { weight: Rational::dyadic_unit(m as u32), term: MonotoneFn::identity() });
    let f = MonotoneFn::WeightedSum { terms };

    let n_trunc = pieces.iter().fold(IntervalUnion::empty(), |acc, p| acc.union(p));
    let result = MapperResult {
        f,
        n_trunc,
        level: m,
        image_lower_bound: Rational::one() - Rational::dyadic_unit(m as u32),
        intervals,
        pieces,
    };
    verify_mapper(&result)?;
    Ok(result)
}

/// Exact post-conditions: endpoint values, disjoint pieces, and the image
/// bounds per piece and in total.
pub fn verify_mapper(r: &MapperResult) -> Result<()> {
    let fail = |msg: String| Err(Error::InequalityViolated(msg));
    if !r.f.eval(&Rational::zero())?.is_zero() || !r.f.eval(&Rational::one())?.is_one() {
        return fail("mapper does not fix 0 and 1".into());
    }
    for (i, a) in r.pieces.iter().enumerate() {
        for b in &r.pieces[i + 1..] {
            if !a.is_disjoint(b) {
                return fail(format!("piece {i} overlaps a later piece"));
            }
        }
        let bound = Rational::dyadic_unit(i as u32 + 1);
        let got = image_measure(&r.f, a)?;
        if got < bound {
            return fail(format!("image of piece {i} has measure {got} < {bound}"));
        }
    }
    let total = r.image_measure()?;
    if total < r.image_lower_bound {
        return fail(format!("image measure {total} < {}", r.image_lower_bound));
    }
    Ok(())
}
