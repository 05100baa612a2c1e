//! Piecewise-monotone de Bruijn–Erdős curves
//! `A = {(x, f_1(x), …, f_{n-2}(x), α) : x ∈ [0,1]}` and the unique-coordinate
//! check on finite samples.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Interval, IntervalUnion, Rational};
use crate::partition::LRPartition;
use crate::singular::{
    build_full_measure_mapper_with, image_measure, image_union, MapperConfig, MapperResult, MonotoneFn, PlacementGrid,
};

/// Staircase depth used by the mappers of [`build_theorem3_curve`].
pub const DEFAULT_STAIRCASE_DEPTH: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub n: usize,
    /// `f_1, …, f_{n-2}`.
    pub components: Vec<MonotoneFn>,
    pub alpha: Rational,
    /// Blocks `S_j` on which every component is monotone; `None` means the
    /// single block `[0,1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub piece_domains: Option<LRPartition>,
    /// Set for negative controls whose components need not be injective.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub diagnostic: bool,
}

impl CurveSpec {
    /// A curve whose components are all injective.
    pub fn new(components: Vec<MonotoneFn>, alpha: Rational) -> Result<Self> {
        let spec = Self::build(components, alpha, false)?;
        if let Some(i) = spec.components.iter().position(|f| !f.is_strict()) {
            return Err(Error::InvalidParameter(format!("component {} is not injective", i + 1)));
        }
        Ok(spec)
    }

    /// A curve that may carry non-injective components such as the Cantor
    /// function. Such a point set is generally not a dBE-set.
    pub fn diagnostic(components: Vec<MonotoneFn>, alpha: Rational) -> Result<Self> {
        Self::build(components, alpha, true)
    }

    fn build(components: Vec<MonotoneFn>, alpha: Rational, diagnostic: bool) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("a curve needs at least one component function (n >= 3)".into()));
        }
        if !alpha.in_unit_interval() {
            return Err(Error::InvalidParameter(format!("alpha {alpha} must lie in [0,1]")));
        }
        for f in &components {
            f.validate()?;
        }
        Ok(CurveSpec { n: components.len() + 2, components, alpha, piece_domains: None, diagnostic })
    }

    pub fn with_pieces(mut self, pieces: LRPartition) -> Result<Self> {
        if pieces.domain() != IntervalUnion::unit() {
            return Err(Error::DomainMismatch);
        }
        self.piece_domains = Some(pieces);
        Ok(self)
    }

    /// The blocks `S_j`, defaulting to `{[0,1]}`.
    pub fn pieces(&self) -> Vec<IntervalUnion> {
        match &self.piece_domains {
            Some(p) => p.blocks().to_vec(),
            None => vec![IntervalUnion::unit()],
        }
    }

    /// Monotone function giving coordinate `i` (1-based) as a function of `x`.
    pub fn coordinate_fn(&self, i: usize) -> Result<MonotoneFn> {
        self.check_coordinate(i)?;
        Ok(if i == 1 {
            MonotoneFn::identity()
        } else if i == self.n {
            MonotoneFn::Affine { slope: Rational::zero(), offset: self.alpha.clone() }
        } else {
            self.components[i - 2].clone()
        })
    }

    fn check_coordinate(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidParameter(format!("coordinate {i} outside 1..={}", self.n)));
        }
        Ok(())
    }

    /// Exact point of the curve at parameter `x`.
    pub fn point(&self, x: &Rational) -> Result<Vec<Rational>> {
        let mut p = Vec::with_capacity(self.n);
        p.push(x.clone());
        for f in &self.components {
            p.push(f.eval(x)?);
        }
        p.push(self.alpha.clone());
        Ok(p)
    }
}

/// The Theorem-3 style curve
/// `(x, h(x), f_1(h(x)), …, f_{n-3}(h(x)), α)` with `h = R_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Curve {
    pub spec: CurveSpec,
    pub a: Rational,
    pub h: MonotoneFn,
    pub mappers: Vec<MapperResult>,
    /// `W_j = h^{-1}(N_j)`.
    pub w: Vec<IntervalUnion>,
    /// `[0,1]` minus every `W_j`.
    pub q1: IntervalUnion,
}

pub fn build_theorem3_curve(n: usize, a: &Rational, m: usize, alpha: &Rational) -> Result<Theorem3Curve> {
    build_theorem3_curve_with(n, a, m, alpha, DEFAULT_STAIRCASE_DEPTH)
}

pub fn build_theorem3_curve_with(
    n: usize,
    a: &Rational,
    m: usize,
    alpha: &Rational,
    staircase_depth: u32,
) -> Result<Theorem3Curve> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "n = {n}: a curve needs n >= 3; two-dimensional dBE-sets are axis-parallel segments"
        )));
    }
    if !a.is_positive() || *a >= 1 || *a == Rational::new(1, 2) {
        return Err(Error::InvalidParameter(format!("weight {a} must lie in (0,1) and differ from 1/2")));
    }
    let h = MonotoneFn::riesz_nagy(a.clone());
    let cfg = MapperConfig {
        staircase_depth,
        grid: PlacementGrid::RieszNagyImage { a: a.clone() },
        ..MapperConfig::default()
    };

    let mut components = vec![h.clone()];
    let mut mappers = Vec::with_capacity(n - 3);
    let mut w = Vec::with_capacity(n - 3);
    let mut excluded = IntervalUnion::empty();
    for _ in 0..n - 3 {
        let mapper = build_full_measure_mapper_with(&excluded, m, &cfg)?;
        excluded = excluded.union(&mapper.n_trunc);
        let pre = mapper
            .preimage_union()
            .ok_or_else(|| Error::ConstructionFailure("mapper leaves lack exact preimages".into()))?;
        w.push(pre);
        components.push(MonotoneFn::compose(mapper.f.clone(), h.clone()));
        mappers.push(mapper);
    }
    let all_w = w.iter().fold(IntervalUnion::empty(), |acc, x| acc.union(x));
    let q1 = all_w.complement_in(&Interval::unit());
    let spec = CurveSpec::new(components, alpha.clone())?;
    Ok(Theorem3Curve { spec, a: a.clone(), h, mappers, w, q1 })
}

/// Projection measures of the pieces of the decomposition
/// `D_{2,j}` (onto coordinate `j+2`) and `D_{2,n-2}` (onto coordinate 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// `λ(f_j(h(W_j)))` for each mapper.
    pub mapper_pieces: Vec<Rational>,
    /// `λ(h(Q_1))`.
    pub q1_image: Rational,
}

impl Theorem3Curve {
    pub fn decomposition(&self) -> Result<DecompositionReport> {
        let mut mapper_pieces = Vec::with_capacity(self.w.len());
        for (j, wj) in self.w.iter().enumerate() {
            mapper_pieces.push(image_measure(&self.spec.components[j + 1], wj)?);
        }
        let q1_image = image_measure(&self.h, &self.q1)?;
        Ok(DecompositionReport { mapper_pieces, q1_image })
    }
}

/// `2^d + 1` exact points at `x = k/2^d`, sorted by `x`.
pub fn sample(curve: &CurveSpec, d: u32) -> Result<Vec<Vec<Rational>>> {
    if d > 30 {
        return Err(Error::InvalidParameter(format!("sample depth {d} exceeds 30")));
    }
    (0..=(1u64 << d)).into_par_iter().map(|k| curve.point(&Rational::dyadic(k, d))).collect()
}

/// Like [`sample`], but a coordinate whose exact value is out of reach is
/// replaced by the lower end of a `2^{-(2d+16)}`-bracket. Meant for
/// estimates that do not need exact vertices.
pub fn sample_enclosed(curve: &CurveSpec, d: u32) -> Result<Vec<Vec<Rational>>> {
    if d > 30 {
        return Err(Error::InvalidParameter(format!("sample depth {d} exceeds 30")));
    }
    let bits = 2 * d + 16;
    (0..=(1u64 << d))
        .into_par_iter()
        .map(|k| {
            let x = Rational::dyadic(k, d);
            let mut p = Vec::with_capacity(curve.n);
            p.push(x.clone());
            for f in &curve.components {
                p.push(f.enclose(&x, bits)?.0);
            }
            p.push(curve.alpha.clone());
            Ok(p)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: (usize, usize),
    pub matches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbeReport {
    pub ok: bool,
    pub pairs_checked: u64,
    pub violations: Vec<Violation>,
}

/// Checks that every pair of distinct points agrees in exactly one
/// coordinate.
pub fn check_dbe_property(points: &[Vec<Rational>]) -> Result<DbeReport> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidParameter("points have different dimensions".into()));
    }
    let per_row: Vec<Result<Vec<Violation>>> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in i + 1..points.len() {
                let matches = points[i].iter().zip(&points[j]).filter(|(x, y)| x == y).count();
                if matches == dim {
                    return Err(Error::DuplicatePoint(j));
                }
                if matches != 1 {
                    found.push(Violation { pair: (i, j), matches });
                }
            }
            Ok(found)
        })
        .collect();
    let mut violations = Vec::new();
    for row in per_row {
        violations.extend(row?);
    }
    let n = points.len() as u64;
    Ok(DbeReport { ok: violations.is_empty(), pairs_checked: n * (n - 1) / 2, violations })
}

/// Index (1-based) of a coordinate shared by all points, if any.
///
/// A 2-dBE sample passing [`check_dbe_property`] always has one: its points
/// lie on a single axis-parallel line.
pub fn common_coordinate(points: &[Vec<Rational>]) -> Option<usize> {
    let first = points.first()?;
    (0..first.len()).find(|&i| points.iter().all(|p| p[i] == first[i])).map(|i| i + 1)
}

/// Coordinate `i` (1-based) of every point.
pub fn project(points: &[Vec<Rational>], i: usize) -> Result<Vec<Rational>> {
    points
        .iter()
        .map(|p| {
            p.get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| Error::InvalidParameter(format!("coordinate {i} outside 1..={}", p.len())))
        })
        .collect()
}

/// Exact image of `domain` under the `i`-th coordinate map.
pub fn projection_image(curve: &CurveSpec, i: usize, domain: &IntervalUnion) -> Result<IntervalUnion> {
    let f = curve.coordinate_fn(i)?;
    if domain.is_empty() {
        return Ok(IntervalUnion::empty());
    }
    if i == curve.n {
        return Ok(IntervalUnion::from_points([curve.alpha.clone()]));
    }
    image_union(&f, domain)
}
