//! Left-right ordered partitions of subsets of the line and their diameter
//! sums, the finite counterpart of δ-fine cover sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};

/// A finite family of pairwise disjoint, nonempty blocks.
///
/// Blocks may be non-convex. Whether the family is left-right ordered is a
/// property checked by [`is_left_right_ordered`], not a construction
/// invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LRPartition {
    blocks: Vec<IntervalUnion>,
}

impl LRPartition {
    pub fn new(blocks: Vec<IntervalUnion>) -> Result<Self> {
        if blocks.iter().any(IntervalUnion::is_empty) {
            return Err(Error::InvalidParameter("partition blocks must be nonempty".into()));
        }
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                if !a.is_disjoint(b) {
                    return Err(Error::InvalidParameter("partition blocks overlap".into()));
                }
            }
        }
        Ok(LRPartition { blocks })
    }

    /// Partition whose blocks are single intervals.
    pub fn from_intervals(parts: Vec<Interval>) -> Result<Self> {
        Self::new(parts.into_iter().map(IntervalUnion::from_interval).collect())
    }

    pub fn single(block: IntervalUnion) -> Result<Self> {
        Self::new(vec![block])
    }

    pub fn blocks(&self) -> &[IntervalUnion] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The set being partitioned.
    pub fn domain(&self) -> IntervalUnion {
        self.blocks.iter().fold(IntervalUnion::empty(), |acc, b| acc.union(b))
    }

    fn sorted(mut blocks: Vec<IntervalUnion>) -> Vec<IntervalUnion> {
        blocks.sort_by(|a, b| a.inf().cmp(&b.inf()).then_with(|| a.sup().cmp(&b.sup())));
        blocks
    }
}

/// Every pair of distinct blocks is separated: `sup F1 <= inf F2` or
/// `inf F1 >= sup F2`.
pub fn is_left_right_ordered(p: &LRPartition) -> bool {
    let blocks = &p.blocks;
    blocks.iter().enumerate().all(|(i, a)| {
        blocks[i + 1..].iter().all(|b| {
            let (a_inf, a_sup) = (a.inf().unwrap(), a.sup().unwrap());
            let (b_inf, b_sup) = (b.inf().unwrap(), b.sup().unwrap());
            a_sup <= b_inf || a_inf >= b_sup
        })
    })
}

/// `Σ diam(block)`.
pub fn diam_sum(p: &LRPartition) -> Rational {
    p.blocks.iter().map(IntervalUnion::diam).sum()
}

/// Common refinement `{V_i ∩ W_j}` of two left-right ordered partitions of the
/// same set, with the diameter-sum inequality checked exactly.
pub fn refine(p: &LRPartition, q: &LRPartition) -> Result<LRPartition> {
    if p.domain() != q.domain() {
        return Err(Error::DomainMismatch);
    }
    if !is_left_right_ordered(p) || !is_left_right_ordered(q) {
        return Err(Error::InvalidParameter("refine needs left-right ordered partitions".into()));
    }
    let mut blocks = Vec::new();
    for v in &p.blocks {
        for w in &q.blocks {
            let b = v.intersect(w);
            if !b.is_empty() {
                blocks.push(b);
            }
        }
    }
    let out = LRPartition { blocks: LRPartition::sorted(blocks) };
    let (sp, sq, sr) = (diam_sum(p), diam_sum(q), diam_sum(&out));
    let bound = sp.min(sq);
    if sr > bound {
        return Err(Error::InequalityViolated(format!("refinement diameter sum {sr} exceeds {bound}")));
    }
    debug_assert!(is_left_right_ordered(&out));
    Ok(out)
}

/// Summary of a cover given as a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSum {
    pub value: Rational,
    /// Largest block diameter.
    pub delta: Rational,
    pub block_count: usize,
}

pub fn cover_sum(p: &LRPartition) -> CoverSum {
    let diams: Vec<Rational> = p.blocks.iter().map(IntervalUnion::diam).collect();
    CoverSum {
        delta: diams.iter().cloned().max().unwrap_or_else(Rational::zero),
        value: diams.into_iter().sum(),
        block_count: p.blocks.len(),
    }
}

/// Greedy left-to-right partition of `u` into blocks of diameter at most
/// `delta`: each block is whatever of `u` remains in `[s, s + delta]`, where
/// `s` is the infimum of what is left.
pub fn greedy_partition(u: &IntervalUnion, delta: &Rational) -> Result<LRPartition> {
    if !delta.is_positive() {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let mut rest = u.clone();
    let mut blocks = Vec::new();
    while let Some(start) = rest.inf().cloned() {
        let window = Interval::closed(start.clone(), &start + delta);
        let block = rest.intersect_interval(&window);
        rest = rest.subtract(&block);
        blocks.push(block);
    }
    Ok(LRPartition { blocks })
}
