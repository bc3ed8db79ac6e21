//! Result rows and their JSON, CSV and text renderings.
//!
//! JSON documents have the shape
//! `{config, results: [{n, value, oracle, agree}], summary: {checked, mismatches, max_abs_residual, elapsed_ms}}`.
//! Exact rationals are written as `"p/q"` strings (`"p"` when integral), log
//! values as their prime-log coefficient expansion, floats as numbers.

use divsum_core::applications::LogValue;
use divsum_core::{BigRational, Value};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Exact(BigRational),
    Float(f64),
    Log(LogValue),
}

impl Cell {
    pub fn to_json(&self) -> Json {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Exact(r) => Json::String(r.to_string()),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Cell::Log(v) => Json::String(v.exact.to_string()),
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Exact(r) => r.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Log(v) => v.exact.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Exact(r) => r.to_string(),
            Cell::Float(x) => x.to_string(),
            Cell::Log(v) => format!("{} ≈ {}", v.exact, v.float),
        }
    }
}

impl From<Value> for Cell {
    fn from(v: Value) -> Cell {
        match v {
            Value::Exact(r) => Cell::Exact(r),
            Value::Float(x) => Cell::Float(x),
            Value::Log(v) => {
                let float = v.to_f64();
                Cell::Log(LogValue { float, exact: v })
            }
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: u64,
    pub value: Cell,
    pub oracle: Cell,
    pub agree: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: String,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Results {
    Rows(Vec<Row>),
    Bench(Vec<BenchRow>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checked: u64,
    pub mismatches: u64,
    pub max_abs_residual: f64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Document {
    pub config: RunConfig,
    pub results: Results,
    pub summary: Summary,
    /// Human-readable rendering, prepared by the command that produced the results.
    pub text: String,
}

impl Document {
    pub fn to_json(&self) -> Result<String, CliError> {
        let results: Vec<Json> = match &self.results {
            Results::Rows(rows) => rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "value": r.value.to_json(),
                        "oracle": r.oracle.to_json(),
                        "agree": r.agree,
                    })
                })
                .collect(),
            Results::Bench(rows) => rows.iter().map(|r| json!(r)).collect(),
        };
        let summary = json!({
            "checked": self.summary.checked,
            "mismatches": self.summary.mismatches,
            "max_abs_residual": finite_or_null(self.summary.max_abs_residual),
            "elapsed_ms": self.summary.elapsed_ms,
        });
        let doc = json!({
            "config": self.config,
            "results": results,
            "summary": summary,
        });
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Format(e.to_string());
        match &self.results {
            Results::Rows(rows) => {
                w.write_record(["n", "value", "oracle", "agree"])
                    .map_err(err)?;
                for r in rows {
                    w.write_record([
                        r.n.to_string(),
                        r.value.to_csv(),
                        r.oracle.to_csv(),
                        r.agree.to_string(),
                    ])
                    .map_err(err)?;
                }
            }
            Results::Bench(rows) => {
                w.write_record(["method", "median_ms", "min_ms", "max_ms", "mismatches"])
                    .map_err(err)?;
                for r in rows {
                    w.write_record([
                        r.method.clone(),
                        format_float(r.median_ms),
                        format_float(r.min_ms),
                        format_float(r.max_ms),
                        r.mismatches.to_string(),
                    ])
                    .map_err(err)?;
                }
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Format(e.to_string()))
    }
}

fn finite_or_null(x: f64) -> Json {
    serde_json::Number::from_f64(x).map_or(Json::Null, Json::Number)
}
