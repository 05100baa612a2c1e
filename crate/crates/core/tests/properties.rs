use dbe_core::family::{unique_intersection, unique_positive_agreement, SetFamily};
use dbe_core::numeric::{Interval, IntervalUnion, Rational};
use dbe_core::oracle::{brute_cover_sum, cantor_value, CoverInput, RasterFn};
use dbe_core::partition::{cover_sum, greedy_partition};
use dbe_core::singular::{eval_cantor, eval_riesz_nagy, image_measure, inverse_riesz_nagy, MonotoneFn};
use proptest::prelude::*;

fn rational_unit() -> impl Strategy<Value = Rational> {
    (1i64..200).prop_flat_map(|d| (0..=d).prop_map(move |n| Rational::new(n, d)))
}

fn dyadic_unit() -> impl Strategy<Value = Rational> {
    (0u32..14).prop_flat_map(|k| (0i64..=(1 << k)).prop_map(move |n| Rational::dyadic(n, k)))
}

fn weight() -> impl Strategy<Value = Rational> {
    (1i64..16).prop_filter_map("a = 1/2", |n| (2 * n != 16).then(|| Rational::new(n, 16)))
}

fn union() -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((rational_unit(), rational_unit()), 0..6).prop_map(|pairs| {
        IntervalUnion::from_intervals(
            pairs.into_iter().map(|(a, b)| Interval::closed(a.clone().min(b.clone()), a.max(b))).collect(),
        )
    })
}

proptest! {
    #[test]
    fn union_is_normalized_and_measure_additive(u in union(), v in union()) {
        let both = u.union(&v);
        prop_assert!(both.is_normalized());
        prop_assert_eq!(both.measure() + u.intersect(&v).measure(), u.measure() + v.measure());
    }

    #[test]
    fn complement_partitions_unit(u in union()) {
        let rest = u.complement_in(&Interval::closed(Rational::zero(), Rational::one()));
        prop_assert!(rest.is_disjoint(&u));
        prop_assert_eq!(rest.measure() + u.measure(), Rational::one());
    }

    #[test]
    fn cantor_agrees_with_oracle(x in rational_unit()) {
        prop_assert_eq!(eval_cantor(&x).unwrap(), cantor_value(&x).unwrap());
    }

    #[test]
    fn riesz_nagy_round_trips(a in weight(), x in dyadic_unit()) {
        let y = eval_riesz_nagy(&a, &x).unwrap();
        prop_assert!(y.in_unit_interval());
        prop_assert_eq!(inverse_riesz_nagy(&a, &y, 64).unwrap(), x);
    }

    #[test]
    fn riesz_nagy_matches_raster(a in weight(), k in 0usize..=256) {
        let r = RasterFn::riesz_nagy(&a, 8).unwrap();
        prop_assert_eq!(eval_riesz_nagy(&a, &Rational::dyadic(k as i64, 8)).unwrap(), r.values[k].clone());
    }

    #[test]
    fn riesz_nagy_image_of_complement(a in weight(), x in dyadic_unit(), y in dyadic_unit()) {
        let (lo, hi) = (x.clone().min(y.clone()), x.max(y));
        let f = MonotoneFn::riesz_nagy(a);
        let u = IntervalUnion::from_interval(Interval::closed(lo, hi));
        let rest = u.complement_in(&Interval::closed(Rational::zero(), Rational::one()));
        prop_assert_eq!(image_measure(&f, &u).unwrap() + image_measure(&f, &rest).unwrap(), Rational::one());
    }

    #[test]
    fn greedy_cover_matches_oracle(u in union(), d in 1i64..20) {
        let delta = Rational::new(1, d);
        let part = greedy_partition(&u, &delta).unwrap();
        let cs = cover_sum(&part);
        prop_assert!(cs.delta <= delta);
        prop_assert!(cs.value <= u.diam());
        prop_assert_eq!(cs.value, brute_cover_sum(&CoverInput::Union(u), &delta).unwrap());
    }

    #[test]
    fn family_encodings_agree(masks in prop::collection::btree_set(1u32..32, 1..8)) {
        let f = SetFamily::new(5, masks.into_iter().collect()).unwrap();
        prop_assert_eq!(unique_intersection(&f), unique_positive_agreement(&f.vectors()));
    }
}
