//! Exact checkers for the measure inequalities behind the upper bound, plus
//! a seeded randomized harness that exercises them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, LipschitzWitness, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};
use crate::partition::{diam_sum, refine, LRPartition};
use crate::singular::{image_measure, MonotoneFn, WeightedTerm};

/// Outcome of one exact inequality check `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs <= rhs;
        InequalityCheck { lhs, rhs, holds }
    }
}

/// Points of `F` on which a Lipschitz declaration is tested: component
/// endpoints, the grid `k/2^depth` inside each component, and the knots of a
/// piecewise-affine `f`.
fn lipschitz_samples(f: &MonotoneFn, comp: &Interval, depth: u32) -> Vec<Rational> {
    let mut xs = vec![comp.lo.clone(), comp.hi.clone()];
    let lo = comp.lo.ceil_scaled(depth);
    let hi = comp.hi.floor_scaled(depth);
    let mut k = lo;
    while k <= hi {
        xs.push(Rational::dyadic(k.clone(), depth));
        k += 1;
    }
    if let MonotoneFn::PiecewiseAffine { knots } = f {
        xs.extend(knots.iter().map(|(x, _)| x.clone()).filter(|x| comp.lo <= *x && *x <= comp.hi));
    }
    xs.sort();
    xs.dedup();
    xs
}

/// `λ(f(F)) <= c · λ(F)` for a map declared `c`-Lipschitz on `F`.
///
/// The declaration is tested on consecutive sample points at resolution
/// `2^{-sample_depth}`; a pair that breaks it is returned as
/// [`Error::LipschitzViolated`].
pub fn check_lipschitz_image(
    f: &MonotoneFn,
    c: &Rational,
    set: &IntervalUnion,
    sample_depth: u32,
) -> Result<InequalityCheck> {
    if c.is_negative() {
        return Err(Error::InvalidParameter("Lipschitz constant must be non-negative".into()));
    }
    for comp in set.components() {
        let xs = lipschitz_samples(f, comp, sample_depth);
        let ys: Vec<Rational> = xs.iter().map(|x| f.eval(x)).collect::<Result<_>>()?;
        for i in 1..xs.len() {
            if (&ys[i] - &ys[i - 1]).abs() > c * (&xs[i] - &xs[i - 1]) {
                return Err(Error::LipschitzViolated(Box::new(LipschitzWitness {
                    c: c.clone(),
                    x: xs[i - 1].clone(),
                    y: xs[i].clone(),
                })));
            }
        }
    }
    Ok(InequalityCheck::new(image_measure(f, set)?, c * set.measure()))
}

/// Affine pieces `(x0, x1, slope)` of a piecewise-affine or affine map.
fn affine_pieces(f: &MonotoneFn) -> Result<Vec<(Rational, Rational, Rational)>> {
    match f {
        MonotoneFn::Affine { slope, .. } => Ok(vec![(Rational::zero(), Rational::one(), slope.clone())]),
        MonotoneFn::PiecewiseAffine { knots } => {
            f.validate()?;
            Ok(knots
                .windows(2)
                .map(|w| {
                    let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                    (w[0].0.clone(), w[1].0.clone(), slope)
                })
                .collect())
        }
        _ => Err(Error::InvalidParameter("derivative bound needs an affine or piecewise-affine map".into())),
    }
}

/// `λ(f(E)) <= ∫_E |f'|` for piecewise-affine `f`, both sides exact.
pub fn check_derivative_bound(f: &MonotoneFn, set: &IntervalUnion) -> Result<InequalityCheck> {
    let mut integral = Rational::zero();
    for (x0, x1, slope) in affine_pieces(f)? {
        let piece = set.intersect_interval(&Interval::closed(x0, x1));
        integral += slope.abs() * piece.measure();
    }
    Ok(InequalityCheck::new(image_measure(f, set)?, integral))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumLemmaCheck {
    /// `Σ diam((f_1+f_2)(P_ij))` over the pulled-back refinement.
    pub lhs: Rational,
    /// `Σ diam(V_i) + Σ diam(W_j)` for the δ-fine partitions of `f_1(D)`, `f_2(D)`.
    pub rhs: Rational,
    /// Largest `diam((f_1+f_2)(P_ij))`; at most `2δ`.
    pub max_block_diam: Rational,
    pub delta: Rational,
    pub holds: bool,
}

const MAX_BISECTIONS: u32 = 48;

/// Splits every component of `D` into cells on which both maps rise by at
/// most `delta`.
fn fine_cells(
    f1: &MonotoneFn,
    f2: &MonotoneFn,
    d: &IntervalUnion,
    delta: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    let mut cells = Vec::new();
    for comp in d.components() {
        let mut stack = vec![(comp.hi.clone(), comp.lo.clone(), 0u32)];
        // stack holds (hi, lo, depth) so that popping yields cells left to right
        while let Some((hi, lo, depth)) = stack.pop() {
            let fine =
                (f1.eval(&hi)? - f1.eval(&lo)?).abs() <= *delta && (f2.eval(&hi)? - f2.eval(&lo)?).abs() <= *delta;
            if fine {
                cells.push((lo, hi));
            } else if depth >= MAX_BISECTIONS {
                return Err(Error::InvalidParameter(format!(
                    "increments over [{lo}, {hi}] do not shrink below {delta}"
                )));
            } else {
                let mid = (&lo + &hi) / Rational::from(2);
                stack.push((hi, mid.clone(), depth + 1));
                stack.push((mid, lo, depth + 1));
            }
        }
    }
    Ok(cells)
}

/// Greedy grouping of consecutive cells into blocks whose `f`-image has
/// diameter at most `delta`, as half-open index ranges.
fn group_cells(f: &MonotoneFn, cells: &[(Rational, Rational)], delta: &Rational) -> Result<Vec<(usize, usize)>> {
    let vals: Vec<(Rational, Rational)> =
        cells.iter().map(|(l, r)| Ok((f.eval(l)?, f.eval(r)?))).collect::<Result<_>>()?;
    let mut groups = Vec::new();
    let mut start = 0;
    while start < cells.len() {
        let mut end = start + 1;
        while end < cells.len() && range_diam(&vals, start, end + 1) <= *delta {
            end += 1;
        }
        groups.push((start, end));
        start = end;
    }
    Ok(groups)
}

/// Diameter of the image of cells `start..end` under a monotone map with
/// cell endpoint values `vals`.
fn range_diam(vals: &[(Rational, Rational)], start: usize, end: usize) -> Rational {
    (&vals[end - 1].1 - &vals[start].0).abs()
}

fn range_sum(vals: &[(Rational, Rational)], groups: &[(usize, usize)]) -> Rational {
    groups.iter().map(|&(s, e)| range_diam(vals, s, e)).sum()
}

/// The sum lemma for strictly increasing `f_1`, `f_2` on `D`:
/// `H¹_{2δ}((f_1+f_2)(D)) <= H¹_δ(f_1(D)) + H¹_δ(f_2(D))`, realized on
/// explicit partitions.
///
/// Greedy δ-fine left-right ordered partitions `{V_i}` of `f_1(D)` and
/// `{W_j}` of `f_2(D)` are pulled back to `D`, refined, and pushed forward
/// under `f_1 + f_2`. The check asserts that every refined block has image
/// diameter at most `2δ` and that the diameters sum to at most
/// `Σ diam V_i + Σ diam W_j`. The pulled-back partitions are also passed
/// through [`refine`], which asserts the two-partition diameter inequality.
pub fn check_sum_lemma(f1: &MonotoneFn, f2: &MonotoneFn, d: &IntervalUnion, delta: &Rational) -> Result<SumLemmaCheck> {
    if !delta.is_positive() {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    if d.is_empty() {
        return Err(Error::InvalidParameter("domain is empty".into()));
    }
    let cells = fine_cells(f1, f2, d, delta)?;
    let g1 = group_cells(f1, &cells, delta)?;
    let g2 = group_cells(f2, &cells, delta)?;

    let sum = MonotoneFn::WeightedSum {
        terms: vec![
            WeightedTerm { weight: Rational::one(), term: f1.clone() },
            WeightedTerm { weight: Rational::one(), term: f2.clone() },
        ],
    };
    let eval_cells = |f: &MonotoneFn| -> Result<Vec<(Rational, Rational)>> {
        cells.iter().map(|(l, r)| Ok((f.eval(l)?, f.eval(r)?))).collect()
    };
    let v1 = eval_cells(f1)?;
    let v2 = eval_cells(f2)?;
    let vs = eval_cells(&sum)?;

    let mut refined = Vec::new();
    for &(s1, e1) in &g1 {
        for &(s2, e2) in &g2 {
            let (s, e) = (s1.max(s2), e1.min(e2));
            if s < e {
                refined.push((s, e));
            }
        }
    }
    let lhs = range_sum(&vs, &refined);
    let rhs = range_sum(&v1, &g1) + range_sum(&v2, &g2);
    let max_block_diam = refined.iter().map(|&(s, e)| range_diam(&vs, s, e)).max().unwrap_or_else(Rational::zero);

    // the same refinement, seen as left-right ordered partitions of D
    let p1 = pullback(d, &cells, &g1)?;
    let p2 = pullback(d, &cells, &g2)?;
    refine(&p1, &p2)?;

    let two_delta = delta * Rational::from(2);
    let holds = lhs <= rhs && max_block_diam <= two_delta;
    Ok(SumLemmaCheck { lhs, rhs, max_block_diam, delta: delta.clone(), holds })
}

/// Blocks of `D` covered by each group of cells, with every shared cell
/// endpoint assigned to the earlier block.
fn pullback(d: &IntervalUnion, cells: &[(Rational, Rational)], groups: &[(usize, usize)]) -> Result<LRPartition> {
    let mut rest = d.clone();
    let mut blocks = Vec::with_capacity(groups.len());
    for &(s, e) in groups {
        let hull = Interval::closed(cells[s].0.clone(), cells[e - 1].1.clone());
        let block = rest.intersect_interval(&hull);
        rest = rest.subtract(&block);
        if !block.is_empty() {
            blocks.push(block);
        }
    }
    LRPartition::new(blocks)
}

/// Per-lemma tally of the randomized harness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTally {
    pub lemma: String,
    pub trials: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuiteReport {
    pub seed: u64,
    pub tallies: Vec<LemmaTally>,
}

impl LemmaSuiteReport {
    pub fn ok(&self) -> bool {
        self.tallies.iter().all(|t| t.violations == 0)
    }
}

/// Random inputs with small rational endpoints.
pub mod random {
    use super::*;

    pub fn rational(rng: &mut impl Rng) -> Rational {
        let den = rng.gen_range(1..=48i64);
        Rational::new(rng.gen_range(0..=den), den)
    }

    /// Sorted distinct rationals in `[0,1]`, always containing 0 and 1.
    pub fn breakpoints(rng: &mut impl Rng, inner: usize) -> Vec<Rational> {
        let mut xs: Vec<Rational> = (0..inner).map(|_| rational(rng)).collect();
        xs.push(Rational::zero());
        xs.push(Rational::one());
        xs.sort();
        xs.dedup();
        xs
    }

    /// Union of up to four intervals with random closedness.
    pub fn union(rng: &mut impl Rng) -> IntervalUnion {
        let k = rng.gen_range(1..=4);
        let parts = (0..k)
            .map(|_| {
                let (a, b) = (rational(rng), rational(rng));
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                if lo == hi {
                    Interval::point(lo)
                } else {
                    Interval::new(lo, hi, rng.gen(), rng.gen())
                }
            })
            .collect();
        IntervalUnion::from_intervals(parts)
    }

    /// Non-empty union whose closure has positive measure.
    pub fn fat_union(rng: &mut impl Rng) -> IntervalUnion {
        loop {
            let u = union(rng);
            if u.measure().is_positive() {
                return u;
            }
        }
    }

    /// Piecewise-affine map from `0` to `1` with random knots; strictly
    /// increasing when `strict`, otherwise possibly flat on some pieces.
    pub fn piecewise_affine(rng: &mut impl Rng, strict: bool) -> MonotoneFn {
        let inner = rng.gen_range(1..=5);
        let xs = breakpoints(rng, inner);
        let n = xs.len();
        let ys = loop {
            let mut ys: Vec<Rational> = (0..n - 2).map(|_| rational(rng)).collect();
            ys.push(Rational::zero());
            ys.push(Rational::one());
            ys.sort();
            if !strict || ys.windows(2).all(|w| w[0] < w[1]) {
                break ys;
            }
        };
        MonotoneFn::PiecewiseAffine { knots: xs.into_iter().zip(ys).collect() }
    }

    /// Left-right ordered partition of `u` obtained by cutting at random
    /// points.
    pub fn ordered_partition(rng: &mut impl Rng, u: &IntervalUnion) -> LRPartition {
        let inner = rng.gen_range(0..=5);
        let cuts = breakpoints(rng, inner);
        let mut rest = u.clone();
        let mut blocks = Vec::new();
        for w in cuts.windows(2) {
            let upper = Interval::new(w[0].clone(), w[1].clone(), true, rng.gen());
            let block = rest.intersect_interval(&upper);
            rest = rest.subtract(&block);
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        if !rest.is_empty() {
            blocks.push(rest);
        }
        LRPartition::new(blocks).expect("cut pieces are disjoint and non-empty")
    }

    pub fn delta(rng: &mut impl Rng) -> Rational {
        Rational::dyadic_unit(rng.gen_range(1..=4))
    }
}

fn max_abs_slope(f: &MonotoneFn) -> Result<Rational> {
    Ok(affine_pieces(f)?.into_iter().map(|(_, _, s)| s.abs()).max().unwrap_or_else(Rational::zero))
}

/// Runs each lemma checker on `trials` random inputs drawn from a ChaCha
/// stream seeded with `seed`. Any error from a checker counts as a violation.
pub fn run_lemma_suite(trials: usize, seed: u64) -> LemmaSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tally = |name: &str, rng: &mut ChaCha8Rng, trial: &dyn Fn(&mut ChaCha8Rng) -> Result<bool>| {
        let violations = (0..trials).filter(|_| !matches!(trial(rng), Ok(true))).count();
        LemmaTally { lemma: name.to_string(), trials, violations }
    };

    let two_partitions = tally("two_partitions", &mut rng, &|rng| {
        let u = random::union(rng);
        if u.is_empty() {
            return Ok(true);
        }
        let p = random::ordered_partition(rng, &u);
        let q = random::ordered_partition(rng, &u);
        let r = refine(&p, &q)?;
        Ok(diam_sum(&r) <= diam_sum(&p).min(diam_sum(&q)))
    });
    let sum_lemma = tally("sum_of_maps", &mut rng, &|rng| {
        let f1 = random::piecewise_affine(rng, true);
        let f2 = random::piecewise_affine(rng, true);
        let d = random::fat_union(rng);
        Ok(check_sum_lemma(&f1, &f2, &d, &random::delta(rng))?.holds)
    });
    let lipschitz = tally("lipschitz_image", &mut rng, &|rng| {
        let f = random::piecewise_affine(rng, false);
        let c = max_abs_slope(&f)?;
        let set = random::union(rng);
        Ok(check_lipschitz_image(&f, &c, &set, 6)?.holds)
    });
    let derivative = tally("derivative_bound", &mut rng, &|rng| {
        let f = random::piecewise_affine(rng, false);
        let set = random::union(rng);
        Ok(check_derivative_bound(&f, &set)?.holds)
    });
    LemmaSuiteReport { seed, tallies: vec![two_partitions, sum_lemma, lipschitz, derivative] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn iv(a: Rational, b: Rational) -> IntervalUnion {
        IntervalUnion::from_interval(Interval::closed(a, b))
    }

    #[test]
    fn lipschitz_examples() {
        let half = MonotoneFn::Affine { slope: q(1, 2), offset: q(0, 1) };
        let r = check_lipschitz_image(&half, &q(1, 2), &IntervalUnion::unit(), 6).unwrap();
        assert!(r.holds && r.lhs == r.rhs);
        let id = MonotoneFn::identity();
        let r = check_lipschitz_image(&id, &q(1, 1), &IntervalUnion::unit(), 6).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(matches!(
            check_lipschitz_image(&id, &q(1, 2), &IntervalUnion::unit(), 3),
            Err(Error::LipschitzViolated(_))
        ));
    }

    #[test]
    fn riesz_nagy_cell_slope() {
        let f = MonotoneFn::riesz_nagy(q(1, 4));
        // steepest depth-8 cell is the all-ones cell: (3/4)^8 · 2^8
        let c = q(3, 2).pow(8);
        let r = check_lipschitz_image(&f, &c, &iv(q(1, 2), q(1, 1)), 8).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, q(3, 4));
        assert!(check_lipschitz_image(&f, &c, &iv(q(1, 2), q(1, 1)), 9).is_err());
    }

    #[test]
    fn derivative_examples() {
        let id = MonotoneFn::identity();
        let r = check_derivative_bound(&id, &iv(q(0, 1), q(1, 2))).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(1, 2), q(1, 2)));
        let flat = MonotoneFn::Affine { slope: q(0, 1), offset: q(1, 3) };
        let r = check_derivative_bound(&flat, &iv(q(0, 1), q(1, 2))).unwrap();
        assert_eq!((r.lhs, r.rhs), (q(0, 1), q(0, 1)));
        let two_piece =
            MonotoneFn::PiecewiseAffine { knots: vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(1, 1))] };
        let r = check_derivative_bound(&two_piece, &IntervalUnion::unit()).unwrap();
        assert_eq!((r.lhs, r.rhs), (q(1, 1), q(1, 1)));
        assert!(check_derivative_bound(&MonotoneFn::Cantor, &IntervalUnion::unit()).is_err());
    }

    #[test]
    fn sum_lemma_identity_pair() {
        let id = MonotoneFn::identity();
        let r = check_sum_lemma(&id, &id, &IntervalUnion::unit(), &q(1, 4)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, q(2, 1));
        assert_eq!(r.lhs, q(2, 1));
        assert_eq!(r.max_block_diam, q(1, 2));
    }

    #[test]
    fn sum_lemma_with_cantor() {
        // level-3 Cantor cover: 8 intervals of length 1/27
        let mut parts = Vec::new();
        for i in 0..8u32 {
            let mut lo = q(0, 1);
            for j in 0..3 {
                if (i >> (2 - j)) & 1 == 1 {
                    lo += q(2, 1) * Rational::new(1, 3i64.pow(j + 1));
                }
            }
            let hi = &lo + q(1, 27);
            parts.push(Interval::closed(lo, hi));
        }
        let d = IntervalUnion::from_intervals(parts);
        assert_eq!(d.measure(), q(8, 27));
        let r = check_sum_lemma(&MonotoneFn::identity(), &MonotoneFn::Cantor, &d, &q(1, 8)).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn suite_small_run() {
        let rep = run_lemma_suite(25, 7);
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.tallies.len(), 4);
    }
}
