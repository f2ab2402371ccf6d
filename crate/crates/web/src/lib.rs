//! Browser bindings: vertex counts, coefficient tables and identity checks,
//! each returned as a JSON string.

use igusa_dt::catalog::{self, SeriesRequest};
use igusa_dt::json::SeriesJson;
use igusa_dt::verify::{self, VerifyParams};
use igusa_dt::{LegTriple, Partition, VertexEngine};
use wasm_bindgen::prelude::*;

/// A smaller budget than the native default keeps the page responsive.
pub const BROWSER_BUDGET: u64 = 2_000_000;

/// Largest truncation accepted from the page.
pub const MAX_ORDER: i64 = 12;

fn engine() -> VertexEngine {
    VertexEngine::new(BROWSER_BUDGET)
}

fn check_order(label: &str, v: i64) -> Result<(), String> {
    if (0..=MAX_ORDER).contains(&v) {
        Ok(())
    } else {
        Err(format!("{label} must lie in 0..={MAX_ORDER}"))
    }
}

/// Parses three legs written as `"2,1; ; 1"`: partitions separated by
/// semicolons, parts by commas, an empty field for the empty partition.
pub fn parse_legs(text: &str) -> Result<LegTriple, String> {
    let fields: Vec<&str> = text.split(';').collect();
    if fields.len() != 3 {
        return Err(format!(
            "expected three legs separated by ';', got {}",
            fields.len()
        ));
    }
    let mut legs = Vec::with_capacity(3);
    for field in fields {
        let parts: Vec<u32> = field
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| format!("bad part {s:?}")))
            .collect::<Result<_, _>>()?;
        let p = Partition::try_from(parts).map_err(|e| e.to_string())?;
        legs.push(p);
    }
    let [a, b, c]: [Partition; 3] = legs.try_into().expect("three legs");
    Ok(LegTriple::new(a, b, c))
}

pub fn vertex_counts_json(legs: &str, k: usize) -> Result<String, String> {
    if k > 16 {
        return Err("K must be at most 16".into());
    }
    let legs = parse_legs(legs)?;
    let counts = engine().counts(&legs, k).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "legs": legs.to_string(),
        "K": k,
        "counts": counts.as_slice(),
    })
    .to_string())
}

pub fn series_table_json(
    name: &str,
    q_max: i64,
    p_max: i64,
    k: Option<usize>,
    h: usize,
) -> Result<String, String> {
    check_order("q_max", q_max)?;
    check_order("p_max", p_max)?;
    let req = SeriesRequest { q_max, p_max, k, h };
    let named = catalog::named_series(name, &engine(), req).map_err(|e| e.to_string())?;
    let doc = SeriesJson::from_series(name, &named.series, named.k);
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

pub fn run_check_json(name: &str, q_max: i64, p_max: i64, k: usize) -> Result<String, String> {
    check_order("q_max", q_max)?;
    check_order("p_max", p_max)?;
    let params = VerifyParams {
        q_max: Some(q_max),
        p_max: Some(p_max),
        k: Some(k),
    };
    let engine = engine();
    let reports = if name == "all" {
        verify::run_all(&engine, params, false)
    } else {
        vec![verify::run_check(name, &engine, params)
            .ok_or_else(|| format!("unknown check {name:?}"))?]
    };
    serde_json::to_string(&reports).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn series_names() -> String {
    serde_json::to_string(catalog::SERIES_NAMES).expect("serializable")
}

#[wasm_bindgen]
pub fn check_names() -> String {
    serde_json::to_string(verify::CHECK_NAMES).expect("serializable")
}

/// Number of 3D partitions with the given legs, by added boxes `0..=K`.
#[wasm_bindgen]
pub fn vertex_counts(legs: &str, k: usize) -> Result<String, JsError> {
    vertex_counts_json(legs, k).map_err(|e| JsError::new(&e))
}

/// Coefficient table of a named series; `k` selects the vertex route.
#[wasm_bindgen]
pub fn series_table(
    name: &str,
    q_max: i32,
    p_max: i32,
    k: Option<u32>,
    h: u32,
) -> Result<String, JsError> {
    series_table_json(
        name,
        q_max as i64,
        p_max as i64,
        k.map(|k| k as usize),
        h as usize,
    )
    .map_err(|e| JsError::new(&e))
}

/// Runs a named check (or `all`) and returns the reports.
#[wasm_bindgen]
pub fn run_check(name: &str, q_max: i32, p_max: i32, k: u32) -> Result<String, JsError> {
    run_check_json(name, q_max as i64, p_max as i64, k as usize).map_err(|e| JsError::new(&e))
}
