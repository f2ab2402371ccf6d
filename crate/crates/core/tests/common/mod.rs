//! Random truncated series shared by the property suites.

#![allow(dead_code)]

use igusa_dt::{PLaurent, QSeries};
use proptest::prelude::*;

/// A `p`-Laurent coefficient with small integer entries. Roughly a quarter
/// are exact polynomials, the rest carry a finite validity bound.
pub fn plaurent() -> impl Strategy<Value = PLaurent> {
    (
        -3i64..=2,
        prop::collection::vec(-4i64..=4, 0..5),
        prop::option::weighted(0.75, 0i64..=5),
    )
        .prop_map(|(start, values, extra)| {
            let high = extra.map(|e| start + e);
            PLaurent::from_ints(start, &values, high)
        })
}

/// A `p`-Laurent coefficient with a nonzero leading term and a finite bound.
pub fn unit_plaurent() -> impl Strategy<Value = PLaurent> {
    (
        -3i64..=3,
        prop::sample::select(vec![-2i64, -1, 1, 2, 3]),
        prop::collection::vec(-4i64..=4, 0..5),
        0i64..=6,
    )
        .prop_map(|(start, lead, rest, extra)| {
            let mut values = vec![lead];
            values.extend(rest);
            PLaurent::from_ints(start, &values, Some(start + extra + 2))
        })
}

/// A truncated `q`-series with offset in `-1..=1` and `q_max <= 3`.
pub fn qseries() -> impl Strategy<Value = QSeries> {
    (-1i64..=1, prop::collection::vec(plaurent(), 1..4), 0i64..=3)
        .prop_map(|(offset, terms, q_max)| QSeries::new(offset, terms, Some(q_max)))
}

/// A truncated `q`-series whose leading coefficient is invertible.
pub fn unit_qseries() -> impl Strategy<Value = QSeries> {
    (
        -1i64..=1,
        unit_plaurent(),
        prop::collection::vec(plaurent(), 0..3),
        0i64..=3,
    )
        .prop_map(|(offset, lead, rest, q_max)| {
            let mut terms = vec![lead];
            terms.extend(rest);
            QSeries::new(offset, terms, Some(q_max))
        })
}
