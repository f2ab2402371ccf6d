use std::process::{Command, Output};

use igusa_dt::dtcalc;
use igusa_dt::json::SeriesJson;
use igusa_dt::qs_equal;

fn igusa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igusa-dt"))
        .args(args)
        .env_remove("IGUSA_VERTEX_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes() {
    let out = igusa(&["verify", "all", "--qmax", "2", "--pmax", "4", "--K", "6"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_reports_sorted_json() {
    let out = igusa(&[
        "verify", "all", "--qmax", "1", "--pmax", "3", "--K", "4", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check_name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "pass");
        assert!(r["first_mismatch"].is_null());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&igusa(&["series", "nosuch"])), 2);
    assert_eq!(code(&igusa(&["verify", "nosuch"])), 2);
    assert_eq!(code(&igusa(&["series", "dt0", "--qmax", "x"])), 2);
    assert_eq!(code(&igusa(&["frobnicate"])), 2);
    assert_eq!(code(&igusa(&["series", "dt-pred", "--hmax", "3"])), 2);
}

#[test]
fn budget_exit_3_and_flag_beats_env() {
    assert_eq!(code(&igusa(&["verify", "macmahon", "--budget", "10"])), 3);
    assert_eq!(
        code(&igusa(&[
            "series", "dt0", "--qmax", "1", "--K", "6", "--budget", "10"
        ])),
        3
    );
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["verify", "macmahon", "--K", "5"];
        args.extend_from_slice(extra);
        let out = Command::new(env!("CARGO_BIN_EXE_igusa-dt"))
            .args(&args)
            .env("IGUSA_VERTEX_BUDGET", env)
            .output()
            .unwrap();
        code(&out)
    };
    assert_eq!(run("10", &[]), 3);
    assert_eq!(run("10", &["--budget", "100000"]), 0);
    assert_eq!(run("lots", &[]), 2);
}

#[test]
fn series_json_schema_and_round_trip() {
    let args = [
        "series", "dt0", "--qmax", "3", "--pmax", "4", "--K", "8", "--format", "json",
    ];
    let out = igusa(&args);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"], "dt0");
    assert_eq!(v["q_offset"], -1);
    assert_eq!(v["truncation"]["K"], 8);
    assert_eq!(v["truncation"]["p_window"][1], 4);
    let first = &v["coefficients"][0];
    assert_eq!(first["q"], -1);
    assert_eq!(first["terms"][0]["p"], 1);
    assert_eq!(first["terms"][0]["value"], "-1/1");

    // re-comparing the parsed coefficients reproduces the verdict
    let doc: SeriesJson = serde_json::from_value(v).unwrap();
    let parsed = doc.to_series().unwrap();
    let closed = dtcalc::dt0_closed(3, 4).unwrap();
    let cmp = qs_equal(&parsed, &closed.series);
    assert!(cmp.equal);
    assert_eq!(cmp.q_range(), Some((-1, 3)));
    assert!(cmp.min_p_high().unwrap() >= 4);

    // determinism
    assert_eq!(igusa(&args).stdout, out.stdout);
}

#[test]
fn every_series_name_prints() {
    for name in igusa_dt::catalog::SERIES_NAMES {
        let out = igusa(&["series", name, "--qmax", "1", "--pmax", "2"]);
        assert_eq!(code(&out), 0, "{name}");
        assert!(stdout(&out).starts_with(name));
    }
}

#[test]
fn text_table_of_delta() {
    let out = igusa(&["series", "delta", "--qmax", "3"]);
    assert_eq!(
        stdout(&out),
        "delta  q_offset=1  q_max=3\nq^1: 1\nq^2: -24\nq^3: 252\n"
    );
}

#[test]
fn verify_json_is_deterministic_apart_from_timing() {
    let args = [
        "verify", "all", "--qmax", "1", "--pmax", "3", "--K", "4", "--format", "json",
    ];
    let strip = |out: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(strip(igusa(&args)), strip(igusa(&args)));
}
