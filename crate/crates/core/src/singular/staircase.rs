//! Nested-interval staircases: a binary tree of closed intervals `J_s` inside
//! a root interval `I`, and the continuous non-decreasing function that the
//! Cantor function induces on it.
//!
//! At level `n` every node has length at most `1/((n+1)·2^n)`, the two
//! children of a node lie inside it and are strictly separated, and every
//! node below the root avoids a declared excluded set. Truncated at depth
//! `d`, the leaves `J_s`, `|s| = d`, form the set `N`. The staircase maps the
//! leaf with index `i` (binary order) affinely onto the level-`d` Cantor cell
//! with index `i`, composes with the Cantor function, and is constant on
//! every gap between leaves. Its image of `N` is all of `[0,1]`.

use serde::{Deserialize, Serialize};

use super::cantor::{enclose_cantor, eval_cantor};
use super::grid::{PlacementGrid, MAX_GRID_LEVEL};
use super::monotone::MonotoneFn;
use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedIntervalTree {
    /// Root interval `I = [a, b]`.
    pub root: (Rational, Rational),
    /// `levels[n]` holds the `2^n` nodes of level `n` in binary order.
    pub levels: Vec<Vec<(Rational, Rational)>>,
    pub grid: PlacementGrid,
    /// Dyadic preimages of the leaves under the grid map; absent only for a
    /// depth-0 tree on a non-dyadic grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_preimages: Option<Vec<(Rational, Rational)>>,
}

/// Length bound for nodes at `level`: `1/((level+1)·2^level)`.
pub fn level_bound(level: u32) -> Rational {
    Rational::new(1, num_bigint::BigInt::from(level + 1) << level as usize)
}

impl NestedIntervalTree {
    pub fn depth(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn leaves(&self) -> &[(Rational, Rational)] {
        self.levels.last().expect("tree has a root level")
    }

    /// The truncated set `N`: union of the leaves.
    pub fn leaf_union(&self) -> IntervalUnion {
        IntervalUnion::from_intervals(
            self.leaves().iter().map(|(l, r)| Interval::closed(l.clone(), r.clone())).collect(),
        )
    }

    /// Union of the leaf preimages, when they are exact.
    pub fn preimage_union(&self) -> Option<IntervalUnion> {
        self.leaf_preimages.as_ref().map(|cells| {
            IntervalUnion::from_intervals(cells.iter().map(|(l, r)| Interval::closed(l.clone(), r.clone())).collect())
        })
    }

    fn locate(&self, y: &Rational) -> Located {
        let (a, b) = &self.root;
        if y <= a {
            return Located::Gap(0);
        }
        if y >= b {
            return Located::Gap(self.leaves().len());
        }
        let leaves = self.leaves();
        let idx = leaves.partition_point(|(_, r)| r < y);
        match leaves.get(idx) {
            Some((l, r)) if l <= y => {
                let t = (y - l) / (r - l);
                Located::Leaf(idx, t)
            }
            _ => Located::Gap(idx),
        }
    }

    fn cell_value(&self, idx: usize, inner: Rational) -> Rational {
        let d = self.depth();
        (Rational::from(idx as i64) + inner) * Rational::dyadic_unit(d)
    }

    /// Exact value of the staircase, extended by 0 left of the root and by
    /// 1 right of it.
    pub fn eval(&self, y: &Rational) -> Result<Rational> {
        check_unit(y)?;
        match self.locate(y) {
            Located::Gap(i) => Ok(self.cell_value(i, Rational::zero())),
            Located::Leaf(i, t) => Ok(self.cell_value(i, eval_cantor(&t)?)),
        }
    }

    pub fn enclose(&self, y: &Rational, bits: u32) -> Result<(Rational, Rational)> {
        check_unit(y)?;
        match self.locate(y) {
            Located::Gap(i) => {
                let v = self.cell_value(i, Rational::zero());
                Ok((v.clone(), v))
            }
            Located::Leaf(i, t) => {
                let (lo, hi) = enclose_cantor(&t, bits as usize)?;
                Ok((self.cell_value(i, lo), self.cell_value(i, hi)))
            }
        }
    }

    /// Checks the nesting, separation, length, and avoidance conditions.
    pub fn check(&self, excluded: &IntervalUnion) -> Result<()> {
        let fail = |msg: String| Err(Error::InequalityViolated(msg));
        for (n, level) in self.levels.iter().enumerate() {
            if level.len() != 1 << n {
                return fail(format!("level {n} has {} nodes", level.len()));
            }
            let bound = level_bound(n as u32);
            for (s, (l, r)) in level.iter().enumerate() {
                if r - l > bound {
                    return fail(format!("node {s} at level {n} is longer than {bound}"));
                }
                if n > 0 {
                    let node = IntervalUnion::from_interval(Interval::closed(l.clone(), r.clone()));
                    if !node.is_disjoint(excluded) {
                        return fail(format!("node {s} at level {n} meets the excluded set"));
                    }
                    let (pl, pr) = &self.levels[n - 1][s / 2];
                    if l < pl || r > pr {
                        return fail(format!("node {s} at level {n} escapes its parent"));
                    }
                    if s % 2 == 1 && level[s - 1].1 >= *l {
                        return fail(format!("siblings at level {n} are not separated"));
                    }
                }
            }
        }
        Ok(())
    }
}

enum Located {
    /// In a gap with this many leaves to the left.
    Gap(usize),
    /// Inside the leaf with this index, at relative position `t ∈ [0,1]`.
    Leaf(usize, Rational),
}

fn check_unit(y: &Rational) -> Result<()> {
    if y.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutsideDomain { what: "interval staircase", x: y.clone() })
    }
}

/// Builds the tree for root `I`, avoiding `excluded` below the root.
///
/// Children of a node are the leftmost and rightmost grid cells that fit in
/// the free part of the node, taken at the coarsest grid level whose cells
/// all meet the next level's length bound (finer levels are tried when the
/// free part is too fragmented).
pub fn build_tree(
    root: &Interval,
    excluded: &IntervalUnion,
    depth: u32,
    grid: &PlacementGrid,
) -> Result<NestedIntervalTree> {
    grid.validate()?;
    if root.is_empty() || root.lo >= root.hi || !root.lo_closed || !root.hi_closed {
        return Err(Error::InvalidParameter(format!("root {root:?} must be a proper closed interval")));
    }
    if !(root.lo.in_unit_interval() && root.hi.in_unit_interval()) {
        return Err(Error::InvalidParameter(format!("root {root:?} must lie in [0,1]")));
    }
    let root_set = IntervalUnion::from_interval(root.clone());
    let blocked = root_set.intersect(excluded);
    if blocked.measure() >= root.length() {
        return Err(Error::InvalidParameter(format!("excluded set covers the root {root:?} up to measure zero")));
    }

    let mut levels = vec![vec![(root.lo.clone(), root.hi.clone())]];
    let mut cells: Vec<(u32, u128)> = Vec::new();
    for n in 0..depth {
        let bound = level_bound(n + 1);
        let start = grid.level_for(&bound);
        let mut next = Vec::with_capacity(2 << n);
        let mut next_cells = Vec::with_capacity(2 << n);
        for (s, (l, r)) in levels[n as usize].iter().enumerate() {
            let node = IntervalUnion::from_interval(Interval::closed(l.clone(), r.clone()));
            let free = node.subtract(excluded);
            let Some((left, right)) = (start..=MAX_GRID_LEVEL).find_map(|k| place_children(grid, k, &free)) else {
                return Err(Error::ConstructionFailure(format!(
                    "no room for the children of node {s} at level {n} in {root:?}"
                )));
            };
            for (k, i) in [left, right] {
                let c = grid.cell(k, i);
                next.push((c.lo, c.hi));
                next_cells.push((k, i));
            }
        }
        levels.push(next);
        cells = next_cells;
    }

    let leaf_preimages = if depth > 0 {
        Some(
            cells
                .iter()
                .map(|&(k, i)| {
                    let c = PlacementGrid::preimage_cell(k, i);
                    (c.lo, c.hi)
                })
                .collect(),
        )
    } else if *grid == PlacementGrid::Dyadic {
        Some(vec![(root.lo.clone(), root.hi.clone())])
    } else {
        None
    };

    let tree =
        NestedIntervalTree { root: (root.lo.clone(), root.hi.clone()), levels, grid: grid.clone(), leaf_preimages };
    tree.check(excluded)?;
    Ok(tree)
}

/// `(N, f_I)` for the root `I` on the dyadic grid: the leaf union and the
/// staircase as a monotone descriptor.
pub fn build_interval_staircase(
    root: &Interval,
    excluded: &IntervalUnion,
    depth: u32,
) -> Result<(IntervalUnion, MonotoneFn)> {
    let tree = build_tree(root, excluded, depth, &PlacementGrid::Dyadic)?;
    Ok((tree.leaf_union(), MonotoneFn::IntervalStaircase { tree }))
}

fn place_children(grid: &PlacementGrid, k: u32, free: &IntervalUnion) -> Option<((u32, u128), (u32, u128))> {
    let left = free.components().iter().find_map(|c| grid.first_cell_in(k, c))?;
    let right = free.components().iter().rev().find_map(|c| grid.last_cell_in(k, c))?;
    // strict separation of the two children
    (grid.point(k, left + 1) < grid.point(k, right)).then_some(((k, left), (k, right)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn unit_tree(depth: u32) -> NestedIntervalTree {
        build_tree(&Interval::unit(), &IntervalUnion::empty(), depth, &PlacementGrid::Dyadic).unwrap()
    }

    #[test]
    fn depth_zero_is_root() {
        let t = unit_tree(0);
        assert_eq!(t.leaf_union(), IntervalUnion::unit());
        // c composed with the identity affine map
        assert_eq!(t.eval(&q(1, 4)).unwrap(), q(1, 3));
        assert_eq!(t.eval(&q(1, 2)).unwrap(), q(1, 2));
    }

    #[test]
    fn depth_one_layout() {
        let t = unit_tree(1);
        assert_eq!(t.levels[1], vec![(q(0, 1), q(1, 4)), (q(3, 4), q(1, 1))]);
    }

    #[test]
    fn depth_two_measure_bound() {
        let t = unit_tree(2);
        assert!(t.leaf_union().measure() <= q(1, 3));
        assert_eq!(t.leaf_union().measure(), q(1, 4));
    }

    #[test]
    fn constant_across_first_gap() {
        for d in 1..6 {
            let t = unit_tree(d);
            let left = &t.levels[1][0].1;
            let right = &t.levels[1][1].0;
            assert_eq!(t.eval(left).unwrap(), q(1, 2));
            assert_eq!(t.eval(right).unwrap(), q(1, 2));
            assert_eq!(t.eval(&q(1, 2)).unwrap(), q(1, 2));
        }
    }

    #[test]
    fn avoids_excluded_set() {
        let excluded = IntervalUnion::from_interval(Interval::closed(q(0, 1), q(1, 2)));
        let t = build_tree(&Interval::unit(), &excluded, 3, &PlacementGrid::Dyadic).unwrap();
        assert!(t.leaf_union().is_disjoint(&excluded));
        assert_eq!(t.eval(&q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(t.eval(&q(1, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn rejects_fully_excluded_root() {
        let root = Interval::closed(q(1, 4), q(1, 2));
        let excluded = IntervalUnion::unit();
        assert!(build_tree(&root, &excluded, 2, &PlacementGrid::Dyadic).is_err());
    }

    #[test]
    fn image_grid_preimages_are_exact() {
        let a = q(1, 4);
        let grid = PlacementGrid::RieszNagyImage { a: a.clone() };
        let t = build_tree(&Interval::unit(), &IntervalUnion::empty(), 3, &grid).unwrap();
        let pre = t.leaf_preimages.as_ref().unwrap();
        for ((l, r), (pl, pr)) in t.leaves().iter().zip(pre) {
            assert_eq!(*l, crate::singular::eval_riesz_nagy(&a, pl).unwrap());
            assert_eq!(*r, crate::singular::eval_riesz_nagy(&a, pr).unwrap());
        }
    }
}
