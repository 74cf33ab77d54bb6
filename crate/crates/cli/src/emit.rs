//! CSV and JSON writers. Numbers use Rust's shortest round-trip formatting, so
//! re-running a scenario reproduces the files byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{Format, ScenarioFile};
use crate::error::CliError;
use crate::run::{Report, Row, RunResult};

pub const CSV_HEADER: &str = "t,energy,norm,momentum,entropy,fisher,constraint_residual";
pub const SCHEMA_VERSION: &str = "1";

fn num(out: &mut String, v: Option<f64>) {
    match v {
        // `+ 0.0` folds −0 into 0
        Some(v) if v.is_finite() => write!(out, "{:?}", v + 0.0).expect("writing to a String"),
        Some(v) => write!(out, "{v}").expect("writing to a String"),
        None => {}
    }
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [Some(r.t), Some(r.energy), Some(r.norm), r.momentum, r.entropy, r.fisher, r.constraint_residual];
        for (i, v) in fields.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            num(&mut out, v);
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    scenario: &'a ScenarioFile,
    rows: &'a [Row],
    report: &'a Report,
}

pub fn json(scenario: &ScenarioFile, result: &RunResult) -> String {
    let env = Envelope { schema_version: SCHEMA_VERSION, scenario, rows: &result.rows, report: &result.report };
    let mut s = serde_json::to_string_pretty(&env).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes the requested files into `dir` (created if missing) and returns their paths.
pub fn write(dir: &Path, scenario: &ScenarioFile, result: &RunResult, format: Format) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    if format.csv() {
        let path = dir.join(&scenario.output.csv);
        fs::write(&path, csv(&result.rows)).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    if format.json() {
        let path = dir.join(&scenario.output.json);
        fs::write(&path, json(scenario, result)).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
