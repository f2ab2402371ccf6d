//! `igusa-dt`: exact coefficient tables and identity checks.
//!
//! Exit codes: 0 all checks pass, 1 mismatch, 2 usage or configuration
//! error, 3 vertex enumeration budget exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use igusa_dt::catalog::{self, SeriesRequest, SERIES_NAMES};
use igusa_dt::json::SeriesJson;
use igusa_dt::verify::{self, CheckReport, Status, VerifyParams, CHECK_NAMES};
use igusa_dt::vertex::DEFAULT_BUDGET;
use igusa_dt::{Error, QSeries, VertexEngine};

const BUDGET_ENV: &str = "IGUSA_VERTEX_BUDGET";

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "igusa-dt",
    version,
    about = "Exact DT partition functions of K3×E"
)]
struct Cli {
    /// Vertex enumeration budget in states (overrides IGUSA_VERTEX_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficient table of a named series.
    Series {
        /// One of: delta, wp, f2neginv, zk3, chi10-layer, dt-pred, dt0-hat,
        /// dt0, dt1-vert-hat, dt1-diag-hat, dt1, dt0-closed, dt1-closed.
        name: String,
        /// Highest q-degree printed.
        #[arg(long = "qmax", default_value_t = 4)]
        q_max: i64,
        /// Highest p-degree required to be exact.
        #[arg(long = "pmax", default_value_t = 6)]
        p_max: i64,
        /// Added boxes for the vertex route; omit for the closed route.
        #[arg(long = "K")]
        k: Option<usize>,
        /// Layer for chi10-layer and dt-pred.
        #[arg(long = "hmax", default_value_t = 0)]
        h: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run one named identity check, or `all`.
    Verify {
        check: String,
        #[arg(long = "qmax")]
        q_max: Option<i64>,
        #[arg(long = "pmax")]
        p_max: Option<i64>,
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn budget_from(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn series_text(name: &str, s: &QSeries, k: usize) -> String {
    let mut out = format!("{name}  q_offset={}", s.q_offset());
    if let Some(m) = s.external_max() {
        let _ = write!(out, "  q_max={m}");
    }
    if k > 0 {
        let _ = write!(out, "  K={k}");
    }
    out.push('\n');
    let end = s.external_max().unwrap_or_else(|| s.last_stored_degree());
    for q in s.q_offset()..=end {
        let c = s.coeff(q).expect("within q range");
        let _ = writeln!(out, "q^{q}: {c}");
    }
    out
}

fn run_series(
    engine: &VertexEngine,
    name: &str,
    req: SeriesRequest,
    format: Format,
) -> Result<String, Error> {
    let named = catalog::named_series(name, engine, req)?;
    Ok(match format {
        Format::Text => series_text(name, &named.series, named.k),
        Format::Json => {
            let doc = SeriesJson::from_series(name, &named.series, named.k);
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    })
}

fn exit_code(reports: &[CheckReport]) -> u8 {
    let has = |s: Status| reports.iter().any(|r| r.status == s);
    if has(Status::Fail) {
        EXIT_MISMATCH
    } else if has(Status::BudgetExceeded) {
        EXIT_BUDGET
    } else if has(Status::Error) {
        EXIT_USAGE
    } else {
        0
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let budget = match budget_from(cli.budget) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let engine = VertexEngine::new(budget);
    match cli.command {
        Command::Series {
            name,
            q_max,
            p_max,
            k,
            h,
            format,
        } => {
            if !catalog::is_series_name(&name) {
                eprintln!(
                    "error: unknown series {name:?}; expected one of {}",
                    SERIES_NAMES.join(", ")
                );
                return ExitCode::from(EXIT_USAGE);
            }
            let req = SeriesRequest { q_max, p_max, k, h };
            match run_series(&engine, &name, req, format) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(error_code(&e))
                }
            }
        }
        Command::Verify {
            check,
            q_max,
            p_max,
            k,
            format,
        } => {
            let params = VerifyParams { q_max, p_max, k };
            let reports = if check == "all" {
                verify::run_all(&engine, params, true)
            } else {
                match verify::run_check(&check, &engine, params) {
                    Some(r) => vec![r],
                    None => {
                        eprintln!(
                            "error: unknown check {check:?}; expected all or one of {}",
                            CHECK_NAMES.join(", ")
                        );
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
            };
            match format {
                Format::Text => {
                    for r in &reports {
                        println!("{}", r.summary_line());
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&reports).expect("serializable")
                    );
                }
            }
            for r in reports.iter().filter(|r| r.status == Status::Error) {
                if let Some(msg) = &r.message {
                    eprintln!("error: {}: {msg}", r.check_name);
                }
            }
            ExitCode::from(exit_code(&reports))
        }
    }
}
