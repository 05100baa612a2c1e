use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::riesz_nagy::{check_weight, eval_at_index};
use crate::error::Result;
use crate::numeric::{Interval, Rational};

/// Deepest grid level the staircase builder will try.
pub const MAX_GRID_LEVEL: u32 = 120;

/// Family of nested grids on which staircase nodes are placed.
///
/// At level `k` the cells are `[g(i), g(i+1)]` for `0 <= i < 2^k`, where
/// `g(i) = i / 2^k` for the dyadic grid and `g(i) = R_a(i / 2^k)` for the
/// image grid. Cells of the image grid have exact dyadic preimages under
/// `R_a`, which is what lets pullbacks through `R_a` stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlacementGrid {
    Dyadic,
    RieszNagyImage { a: Rational },
}

impl PlacementGrid {
    pub fn validate(&self) -> Result<()> {
        match self {
            PlacementGrid::Dyadic => Ok(()),
            PlacementGrid::RieszNagyImage { a } => check_weight(a),
        }
    }

    /// `g(i)` at level `k`.
    pub fn point(&self, k: u32, i: u128) -> Rational {
        match self {
            PlacementGrid::Dyadic => Rational::dyadic(i, k),
            PlacementGrid::RieszNagyImage { a } => eval_at_index(a, &BigInt::from(i), k),
        }
    }

    pub fn cell(&self, k: u32, i: u128) -> Interval {
        Interval::closed(self.point(k, i), self.point(k, i + 1))
    }

    /// Dyadic preimage `[i/2^k, (i+1)/2^k]` of a cell.
    pub fn preimage_cell(k: u32, i: u128) -> Interval {
        Interval::closed(Rational::dyadic(i, k), Rational::dyadic(i + 1, k))
    }

    /// Length of the longest cell at level `k`.
    pub fn max_cell_len(&self, k: u32) -> Rational {
        match self {
            PlacementGrid::Dyadic => Rational::dyadic_unit(k),
            PlacementGrid::RieszNagyImage { a } => {
                let b = Rational::one() - a;
                a.clone().max(b).pow(k)
            }
        }
    }

    /// Smallest level whose cells are all at most `bound` long.
    pub fn level_for(&self, bound: &Rational) -> u32 {
        (0..=MAX_GRID_LEVEL).find(|&k| self.max_cell_len(k) <= *bound).unwrap_or(MAX_GRID_LEVEL)
    }

    /// Number of grid points `g(0..=2^k)` satisfying `pred`, where `pred`
    /// holds on a prefix of the (increasing) grid points.
    fn count_prefix(&self, k: u32, pred: impl Fn(&Rational) -> bool) -> u128 {
        let (mut lo, mut hi) = (0u128, (1u128 << k) + 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if pred(&self.point(k, mid)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Leftmost level-`k` cell contained in `comp`.
    pub fn first_cell_in(&self, k: u32, comp: &Interval) -> Option<u128> {
        let i = self.count_prefix(k, |g| if comp.lo_closed { g < &comp.lo } else { g <= &comp.lo });
        if i >= 1u128 << k {
            return None;
        }
        comp.contains_interval(&self.cell(k, i)).then_some(i)
    }

    /// Rightmost level-`k` cell contained in `comp`.
    pub fn last_cell_in(&self, k: u32, comp: &Interval) -> Option<u128> {
        let below = self.count_prefix(k, |g| if comp.hi_closed { g <= &comp.hi } else { g < &comp.hi });
        // the last grid point inside is below-1; its cell starts one earlier
        if below < 2 {
            return None;
        }
        let i = below - 2;
        comp.contains_interval(&self.cell(k, i)).then_some(i)
    }
}
