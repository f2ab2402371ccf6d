mod common;

use igusa_dt::json::SeriesJson;
use igusa_dt::{qs_add, qs_equal, qs_mul, qs_pow, qs_recip, PLaurent, QSeries};
use proptest::prelude::*;

/// An exact polynomial series, used as ground truth for window checks.
fn exact_qseries() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(
        (-2i64..=1, prop::collection::vec(-3i64..=3, 0..4))
            .prop_map(|(start, v)| PLaurent::from_ints(start, &v, None)),
        0..4,
    )
    .prop_map(|terms| QSeries::new(0, terms, None))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truncation_commutes_with_arithmetic(
        a in exact_qseries(),
        b in exact_qseries(),
        qa in 0i64..=3,
        qb in 0i64..=3,
        pa in -1i64..=3,
        pb in -1i64..=3,
    ) {
        let ta = a.truncate_q(qa).truncate_p(pa);
        let tb = b.truncate_q(qb).truncate_p(pb);
        let sum = qs_equal(&qs_add(&ta, &tb), &qs_add(&a, &b));
        let prod = qs_equal(&qs_mul(&ta, &tb), &qs_mul(&a, &b));
        prop_assert!(sum.equal, "{:?}", sum.first_mismatch);
        prop_assert!(prod.equal, "{:?}", prod.first_mismatch);
    }

    #[test]
    fn powers_add(a in common::qseries(), j in 0i64..=3, k in 0i64..=3) {
        let lhs = qs_mul(&qs_pow(&a, j).unwrap(), &qs_pow(&a, k).unwrap());
        prop_assert!(qs_equal(&lhs, &qs_pow(&a, j + k).unwrap()).equal);
    }

    #[test]
    fn negative_powers_invert(a in common::unit_qseries(), k in 1i64..=3) {
        let lhs = qs_mul(&qs_pow(&a, k).unwrap(), &qs_pow(&a, -k).unwrap());
        prop_assert!(qs_equal(&lhs, &QSeries::one()).equal);
        let inv = qs_recip(&a).unwrap();
        prop_assert!(qs_equal(&qs_pow(&inv, k).unwrap(), &qs_pow(&a, -k).unwrap()).equal);
    }

    #[test]
    fn json_round_trip(a in common::qseries(), k in 0usize..=10) {
        let doc = SeriesJson::from_series("x", &a, k);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let series = back.to_series().unwrap();
        prop_assert!(qs_equal(&series, &a).equal);
        prop_assert_eq!(series.external_max(), a.external_max());
    }
}
