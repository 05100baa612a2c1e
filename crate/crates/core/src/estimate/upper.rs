use crate::curve::CurveSpec;
use crate::error::Result;
use crate::numeric::Rational;
use crate::singular::image_measure;

/// Exact partition-sum bound `Σ_j (λ(S_j) + Σ_k λ(f_k(S_j)))` on the
/// one-dimensional Hausdorff measure of the curve, over its declared pieces
/// `S_j`.
///
/// For a single piece and components mapping `[0,1]` onto `[0,1]` this is
/// exactly `n - 1`.
pub fn upper_bound_h1(curve: &CurveSpec) -> Result<Rational> {
    let mut total = Rational::zero();
    for piece in curve.pieces() {
        total += piece.measure();
        for f in &curve.components {
            total += image_measure(f, &piece)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_theorem3_curve;
    use crate::numeric::{q, Interval};
    use crate::partition::LRPartition;
    use crate::singular::MonotoneFn;

    #[test]
    fn riesz_nagy_curve_gives_two() {
        let c = CurveSpec::new(vec![MonotoneFn::riesz_nagy(q(1, 4))], q(1, 2)).unwrap();
        assert_eq!(upper_bound_h1(&c).unwrap(), q(2, 1));
    }

    #[test]
    fn half_slope_affine() {
        let c = CurveSpec::new(vec![MonotoneFn::Affine { slope: q(1, 2), offset: q(0, 1) }], q(0, 1)).unwrap();
        assert_eq!(upper_bound_h1(&c).unwrap(), q(3, 2));
    }

    #[test]
    fn theorem3_curve_gives_n_minus_one() {
        let c = build_theorem3_curve(5, &q(1, 4), 3, &q(1, 2)).unwrap();
        assert_eq!(upper_bound_h1(&c.spec).unwrap(), q(4, 1));
    }

    #[test]
    fn split_pieces_do_not_change_monotone_total() {
        let pieces = LRPartition::from_intervals(vec![
            Interval::closed_open(q(0, 1), q(1, 2)),
            Interval::closed(q(1, 2), q(1, 1)),
        ])
        .unwrap();
        let c = CurveSpec::new(vec![MonotoneFn::riesz_nagy(q(1, 4))], q(1, 2)).unwrap().with_pieces(pieces).unwrap();
        assert_eq!(upper_bound_h1(&c).unwrap(), q(2, 1));
    }
}
