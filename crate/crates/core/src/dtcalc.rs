//! Reduced DT partition functions for `h = 0` and `h = 1`.
//!
//! Every DT-level series has `q_offset = -1` and is returned exact for
//! external `q`-degrees `-1..=q_max`. Unweighted ("hat") series are
//! assembled from strata contributions; the Behrend weighting enters only as
//! the global stratum signs
//!
//! ```text
//! DT_0 = -DT^_0,    DT_1 = -DT^_{1,vert} + DT^_{1,diag}
//! ```
//!
//! [`apply_behrend_signs`] re-derives those signs coefficientwise from the
//! pointwise Behrend values and the `(-p)^n` convention of the DT series.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::forms::{
    self, delta, divisor_series, eta_pow, f_product, p_over_one_minus_p_sq, sigma1, to_p_precision,
};
use crate::series::{qs_mul, qs_pow, qs_recip, rat, PLaurent, QSeries, Rational};
use crate::vertex::VertexEngine;

/// Where a vertex-type ingredient comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Brute-force vertex enumeration with `K` added boxes.
    Vertex { k: usize },
    /// The product/closed formula for the same series.
    Closed,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Vertex { k } => write!(f, "vertex(K={k})"),
            Route::Closed => write!(f, "closed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DtLabel {
    Dt0Hat,
    Dt0,
    Dt1VertHat,
    Dt1DiagHat,
    Dt1,
    Dt0Closed,
    Dt1Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub q_max: i64,
    pub p_max: i64,
    pub route: Route,
}

/// A DT-level series with its label and how it was computed.
#[derive(Clone, Debug)]
pub struct DtSeries {
    pub label: DtLabel,
    pub series: QSeries,
    pub provenance: Provenance,
}

impl DtSeries {
    fn new(label: DtLabel, series: QSeries, q_max: i64, p_max: i64, route: Route) -> Self {
        debug_assert_eq!(series.q_offset(), -1);
        DtSeries {
            label,
            series: series.truncate_q(q_max).truncate_p(p_max),
            provenance: Provenance {
                q_max,
                p_max,
                route,
            },
        }
    }
}

/// Pointwise Behrend value on a stratum, as a function of `n = χ(O_Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BehrendParity {
    /// `(-1)^(n+1)`: the `h = 0` stratum and the vertical `h = 1` stratum.
    Odd,
    /// `(-1)^n`: the diagonal `h = 1` stratum.
    Even,
}

/// Converts an unweighted series `Σ DT^_{d,n} q^(d-1) p^n` into the Behrend
/// weighted one `Σ ν(n) DT^_{d,n} q^(d-1) (-p)^n`, one coefficient at a time.
pub fn apply_behrend_signs(hat: &QSeries, parity: BehrendParity) -> QSeries {
    hat.map_terms(|t| {
        let terms = t.terms().map(|(n, c)| {
            let behrend = match parity {
                BehrendParity::Odd => (n + 1).rem_euclid(2) == 0,
                BehrendParity::Even => n.rem_euclid(2) == 0,
            };
            let weighted = if behrend { c.clone() } else { -c.clone() };
            // DT_{d,n} is the coefficient of (-p)^n
            let as_p = if n.rem_euclid(2) == 0 {
                weighted
            } else {
                -weighted
            };
            (n, as_p)
        });
        PLaurent::from_terms(terms, t.high())
    })
}

/// `Σ_{a} F(a) q^a` from either route, internal degrees `0..=a_max`.
pub fn f_series(engine: &VertexEngine, a_max: i64, route: Route) -> Result<QSeries> {
    match route {
        Route::Vertex { k } => engine.f_series(a_max as u32, k),
        Route::Closed => Ok(f_product(a_max)),
    }
}

/// `DT^_0 = q^{-1} p/(1-p)^2 (Σ F(a) q^a)^2 ∏ (1 - q^m)^{-22}`.
pub fn dt0_hat(engine: &VertexEngine, q_max: i64, p_max: i64, route: Route) -> Result<DtSeries> {
    let inner = q_max + 1;
    let build = |p: i64| -> Result<QSeries> {
        let f = f_series(engine, inner, route)?;
        let local = QSeries::constant(p_over_one_minus_p_sq(p));
        let s = qs_mul(&qs_mul(&local, &qs_pow(&f, 2)?), &eta_pow(-22, inner));
        Ok(s.shift_q(-1))
    };
    let s = match route {
        // vertex windows are fixed by K; report them as they are
        Route::Vertex { .. } => build(p_max + inner)?,
        Route::Closed => to_p_precision(p_max, build)?,
    };
    Ok(DtSeries::new(DtLabel::Dt0Hat, s, q_max, p_max, route))
}

/// `DT_0 = -DT^_0`.
pub fn dt0(engine: &VertexEngine, q_max: i64, p_max: i64, route: Route) -> Result<DtSeries> {
    let hat = dt0_hat(engine, q_max, p_max, route)?;
    Ok(DtSeries {
        label: DtLabel::Dt0,
        series: hat.series.neg(),
        provenance: hat.provenance,
    })
}

/// `DT_0 = 1/(F^2 Δ)`, with `F^2` obtained by inverting `-F^{-2}`.
pub fn dt0_closed(q_max: i64, p_max: i64) -> Result<DtSeries> {
    let inner = q_max + 1;
    let s = to_p_precision(p_max, |p| {
        let f2 = qs_recip(&forms::f_squared_neg_inv(inner, p))?.neg();
        Ok(qs_recip(&qs_mul(&f2, &delta(inner)))?)
    })?;
    Ok(DtSeries::new(
        DtLabel::Dt0Closed,
        s,
        q_max,
        p_max,
        Route::Closed,
    ))
}

/// Vertical `h = 1` contribution.
///
/// Vertex route: `q^{-1} (-22 ∏(1-q^m)^{-24} + 24 ∏(1-q^m)^{-23} Σ N(b) q^b)`.
/// Closed route: `24 q^{-1} ∏(1-q^m)^{-24} {1/12 + p/(1-p)^2 + Σ Σ k (p^k + p^{-k}) q^d}`.
pub fn dt1_vertical_hat(
    engine: &VertexEngine,
    q_max: i64,
    p_max: i64,
    route: Route,
) -> Result<DtSeries> {
    let inner = q_max + 1;
    let s = match route {
        Route::Vertex { k } => {
            let n = engine.n_series(inner as u32, k)?;
            let smooth = eta_pow(-24, inner).scale_int(-22);
            let nodal = qs_mul(&eta_pow(-23, inner), &n).scale_int(24);
            smooth.add(&nodal).shift_q(-1)
        }
        Route::Closed => {
            let brace = divisor_series(&Rational::new(1.into(), 12.into()), 0, inner, p_max);
            qs_mul(&eta_pow(-24, inner), &brace)
                .scale_int(24)
                .shift_q(-1)
        }
    };
    Ok(DtSeries::new(DtLabel::Dt1VertHat, s, q_max, p_max, route))
}

/// Diagonal `h = 1` contribution: `q^{-1} ∏(1-q^m)^{-24} · 2·24 Σ_d σ₁(d) q^d`.
pub fn dt1_diag_hat(q_max: i64, p_max: i64) -> DtSeries {
    let inner = q_max + 1;
    let counts: Vec<i64> = std::iter::once(0)
        .chain((1..=inner).map(|d| 48 * sigma1(d as u64) as i64))
        .collect();
    let curves = QSeries::from_q_ints(0, &counts).truncate_q(inner);
    let s = qs_mul(&eta_pow(-24, inner), &curves).shift_q(-1);
    DtSeries::new(DtLabel::Dt1DiagHat, s, q_max, p_max, Route::Closed)
}

/// `DT_1 = -DT^_{1,vert} + DT^_{1,diag}`.
pub fn dt1(engine: &VertexEngine, q_max: i64, p_max: i64, route: Route) -> Result<DtSeries> {
    let vert = dt1_vertical_hat(engine, q_max, p_max, route)?;
    let diag = dt1_diag_hat(q_max, p_max);
    Ok(DtSeries {
        label: DtLabel::Dt1,
        series: diag.series.sub(&vert.series),
        provenance: vert.provenance,
    })
}

/// `DT_1 = -24 ℘ / Δ`.
pub fn dt1_closed(q_max: i64, p_max: i64) -> Result<DtSeries> {
    let inner = q_max + 1;
    let s = to_p_precision(p_max, |p| {
        let inv_delta = qs_recip(&delta(inner))?;
        Ok(qs_mul(&forms::wp(inner, p), &inv_delta).scale_int(-24))
    })?;
    Ok(DtSeries::new(
        DtLabel::Dt1Closed,
        s,
        q_max,
        p_max,
        Route::Closed,
    ))
}

/// The explicit product display for `DT_0`:
/// `-p q^{-1} (1-p)^{-2} ∏ (1-q^m)^{-20} (1-p q^m)^{-2} (1-p^{-1} q^m)^{-2}`,
/// built from binomial factors only.
pub fn dt0_product_display(q_max: i64, p_max: i64) -> QSeries {
    let inner = q_max + 1;
    let one = rat(1);
    let mut acc = QSeries::constant(p_over_one_minus_p_sq(p_max + inner)).truncate_q(inner);
    for m in 1..=inner {
        acc = qs_mul(&acc, &forms::binomial_factor(&one, 0, m, -20, inner));
        acc = qs_mul(&acc, &forms::binomial_factor(&one, 1, m, -2, inner));
        acc = qs_mul(&acc, &forms::binomial_factor(&one, -1, m, -2, inner));
    }
    acc.neg().shift_q(-1).truncate_p(p_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::qs_equal;

    fn engine() -> VertexEngine {
        VertexEngine::default()
    }

    #[test]
    fn dt0_leading_term() {
        let d = dt0(&engine(), 2, 6, Route::Closed).unwrap();
        let lead = d.series.coeff(-1).unwrap();
        assert_eq!(
            lead,
            PLaurent::from_ints(1, &[-1, -2, -3, -4, -5, -6], Some(6))
        );
        let closed = dt0_closed(2, 6).unwrap();
        assert_eq!(closed.series.coeff(-1).unwrap(), lead);
        assert!(qs_equal(&d.series, &closed.series).equal);
        assert!(qs_equal(&d.series, &dt0_product_display(2, 6)).equal);
    }

    #[test]
    fn dt1_leading_term() {
        let d = dt1(&engine(), 2, 5, Route::Closed).unwrap();
        let lead = d.series.coeff(-1).unwrap();
        assert_eq!(
            lead,
            PLaurent::from_ints(0, &[-2, -24, -48, -72, -96, -120], Some(5))
        );
        let closed = dt1_closed(2, 5).unwrap();
        let cmp = qs_equal(&d.series, &closed.series);
        assert!(cmp.equal, "{:?}", cmp.first_mismatch);
    }

    #[test]
    fn diagonal_count_and_p_independence() {
        let d = dt1_diag_hat(3, 4);
        assert_eq!(d.series.coeff(-1).unwrap(), PLaurent::zero_to(4));
        // q^0: 48 σ₁(1)
        assert_eq!(
            d.series.coeff(0).unwrap(),
            PLaurent::from_ints(0, &[48], Some(4))
        );
        for t in d.series.terms() {
            assert!(t.terms().all(|(deg, _)| deg == 0));
        }
    }

    #[test]
    fn vertical_vertex_route_spot_value() {
        let v = dt1_vertical_hat(&engine(), 0, 3, Route::Vertex { k: 5 }).unwrap();
        // -22 + 24 (1 + p/(1-p)^2) at q^-1
        let lead = v.series.coeff(-1).unwrap();
        assert_eq!(lead.coeff(0), Some(rat(2)));
        assert_eq!(lead.coeff(1), Some(rat(24)));
        assert_eq!(lead.coeff(2), Some(rat(48)));
    }

    #[test]
    fn behrend_signs_reduce_to_global_sign() {
        let s = QSeries::new(
            -1,
            vec![PLaurent::from_ints(-2, &[1, 2, 3, 4, 5], Some(2))],
            Some(0),
        );
        assert_eq!(apply_behrend_signs(&s, BehrendParity::Odd), s.neg());
        assert_eq!(apply_behrend_signs(&s, BehrendParity::Even), s);
    }
}
