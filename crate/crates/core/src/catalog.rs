//! Series addressable by name, as exposed on the command line and in the
//! browser demo.

use crate::dtcalc::{self, Route};
use crate::error::{Error, Result};
use crate::forms::{self, EllipticGenus};
use crate::series::QSeries;
use crate::vertex::VertexEngine;

/// Every series name, in display order.
pub const SERIES_NAMES: &[&str] = &[
    "delta",
    "wp",
    "f2neginv",
    "zk3",
    "chi10-layer",
    "dt-pred",
    "dt0-hat",
    "dt0",
    "dt1-vert-hat",
    "dt1-diag-hat",
    "dt1",
    "dt0-closed",
    "dt1-closed",
];

/// Truncation for a named series. `q_max` is the highest external
/// `q`-degree kept; `k = None` selects the closed route where a series has
/// two routes; `h` selects the layer of `chi10-layer` and `dt-pred`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRequest {
    pub q_max: i64,
    pub p_max: i64,
    pub k: Option<usize>,
    pub h: usize,
}

impl SeriesRequest {
    fn route(&self) -> Route {
        match self.k {
            Some(k) => Route::Vertex { k },
            None => Route::Closed,
        }
    }
}

/// A computed named series together with the `K` that produced it
/// (0 when no vertex enumeration was involved).
#[derive(Clone, Debug)]
pub struct NamedSeries {
    pub name: String,
    pub series: QSeries,
    pub k: usize,
}

pub fn is_series_name(name: &str) -> bool {
    SERIES_NAMES.contains(&name)
}

/// Computes the series called `name`.
pub fn named_series(name: &str, engine: &VertexEngine, req: SeriesRequest) -> Result<NamedSeries> {
    if req.q_max < 0 || req.p_max < 0 {
        return Err(Error::InvalidParameter(
            "q_max and p_max must be non-negative".into(),
        ));
    }
    let (q, p) = (req.q_max, req.p_max);
    let route = req.route();
    let uses_vertex = matches!(name, "dt0-hat" | "dt0" | "dt1-vert-hat" | "dt1");
    let series = match name {
        "delta" => forms::delta(q).truncate_q(q),
        "wp" => forms::wp(q, p),
        "f2neginv" => forms::f_squared_neg_inv(q, p),
        "zk3" => EllipticGenus::new(q, p)?.series().truncate_p(p.max(1)),
        "chi10-layer" => {
            if req.h > 2 {
                return Err(Error::InvalidParameter(format!(
                    "hmax {} is above 2",
                    req.h
                )));
            }
            forms::chi10_tri(q, req.h)?.layer(req.h).truncate_q(q)
        }
        "dt-pred" => {
            if req.h > 1 {
                return Err(Error::InvalidParameter(format!(
                    "h must be 0 or 1, got {}",
                    req.h
                )));
            }
            forms::dt_prediction(req.h, q, p)?
                .truncate_q(q)
                .truncate_p(p)
        }
        "dt0-hat" => dtcalc::dt0_hat(engine, q, p, route)?.series,
        "dt0" => dtcalc::dt0(engine, q, p, route)?.series,
        "dt1-vert-hat" => dtcalc::dt1_vertical_hat(engine, q, p, route)?.series,
        "dt1-diag-hat" => dtcalc::dt1_diag_hat(q, p).series,
        "dt1" => dtcalc::dt1(engine, q, p, route)?.series,
        "dt0-closed" => dtcalc::dt0_closed(q, p)?.series,
        "dt1-closed" => dtcalc::dt1_closed(q, p)?.series,
        _ => return Err(Error::InvalidParameter(format!("unknown series {name:?}"))),
    };
    Ok(NamedSeries {
        name: name.to_string(),
        series,
        k: if uses_vertex { req.k.unwrap_or(0) } else { 0 },
    })
}
