//! JSON form of a series:
//!
//! ```json
//! { "series": "dt0", "q_offset": -1,
//!   "truncation": { "q_max": 4, "p_window": [-5, 6], "K": 8 },
//!   "coefficients": [ { "q": -1, "p_high": 6, "terms": [ { "p": 1, "value": "-1/1" } ] } ] }
//! ```
//!
//! `truncation.q_max` is the internal truncation order, so the last known
//! external degree is `q_offset + q_max`. `p_window` is `[lowest stored
//! degree, smallest validity bound]`. Rationals are `"num/den"` strings.
//! `K = 0` means no vertex enumeration was involved. `p_high` per entry is
//! the validity bound of that coefficient (`null` when exact).

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::series::{PLaurent, QSeries, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub p: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub q: i64,
    pub p_high: Option<i64>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub q_max: Option<i64>,
    pub p_window: [i64; 2],
    #[serde(rename = "K")]
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub series: String,
    pub q_offset: i64,
    pub truncation: Truncation,
    pub coefficients: Vec<Coefficient>,
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let d = BigInt::from_str(d.trim()).ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(BigInt::from_str(n.trim()).ok()?, d))
}

impl SeriesJson {
    pub fn from_series(name: &str, s: &QSeries, k: usize) -> Self {
        let mut coefficients = Vec::new();
        let mut lo = i64::MAX;
        let mut hi = i64::MAX;
        let end = match s.external_max() {
            Some(m) => m,
            None => s.last_stored_degree(),
        };
        for q in s.q_offset()..=end {
            let t = s.coeff(q).expect("within q range");
            if let Some(first) = t.terms().next() {
                lo = lo.min(first.0);
            }
            hi = hi.min(t.high().or(t.max_degree()).unwrap_or(i64::MAX));
            coefficients.push(Coefficient {
                q,
                p_high: t.high(),
                terms: t
                    .terms()
                    .map(|(p, c)| Term {
                        p,
                        value: format_rational(c),
                    })
                    .collect(),
            });
        }
        if lo == i64::MAX {
            lo = 0;
        }
        if hi == i64::MAX {
            hi = lo;
        }
        SeriesJson {
            series: name.to_string(),
            q_offset: s.q_offset(),
            truncation: Truncation {
                q_max: s.q_max(),
                p_window: [lo, hi],
                k,
            },
            coefficients,
        }
    }

    /// Rebuilds the series, windows included.
    pub fn to_series(&self) -> Option<QSeries> {
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.q != self.q_offset + i as i64 {
                return None;
            }
            let parsed: Option<Vec<(i64, Rational)>> = c
                .terms
                .iter()
                .map(|t| Some((t.p, parse_rational(&t.value)?)))
                .collect();
            terms.push(PLaurent::from_terms(parsed?, c.p_high));
        }
        Some(QSeries::new(self.q_offset, terms, self.truncation.q_max))
    }
}
