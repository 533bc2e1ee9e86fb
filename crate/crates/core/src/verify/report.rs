use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::{CheckId, CheckResult, ModePref, Status, VerifyError, WeightCap};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(VerifyError::Config(format!("unknown format {s:?}"))),
        }
    }
}

/// Run parameters echoed into the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunMeta {
    pub tool_version: String,
    pub k_values: Vec<u32>,
    pub checks: Vec<CheckId>,
    pub weight_cap: WeightCap,
    pub mode: ModePref,
}

pub fn render_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    let mut last = None;
    for r in results {
        if last != Some(r.check_id) {
            let _ = writeln!(out, "{} {}", r.check_id, r.check_id.info().title);
            last = Some(r.check_id);
        }
        let k = r.k.map_or("k=sym".to_string(), |k| format!("k={k}"));
        let time = if r.elapsed_ms > 0 { format!(" ({} ms)", r.elapsed_ms) } else { String::new() };
        let _ = writeln!(out, "  {k:<7} {:<7} {}{time}", r.status.to_string(), r.witness);
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    run_meta: &'a RunMeta,
    results: &'a [CheckResult],
}

pub fn render_json(meta: &RunMeta, results: &[CheckResult]) -> String {
    let report = JsonReport { schema_version: SCHEMA_VERSION, run_meta: meta, results };
    serde_json::to_string_pretty(&report).expect("report serializes")
}

/// Dimension-table rows as CSV.
pub fn render_csv(results: &[CheckResult]) -> String {
    let mut out = String::from("k,n,space,dim_computed,dim_formula,match\n");
    for row in results.iter().flat_map(|r| &r.rows) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.k,
            row.n,
            row.space,
            row.dim_computed,
            row.dim_formula,
            row.matches()
        );
    }
    out
}
