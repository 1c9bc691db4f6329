//! JSON output and its text rendering.

use std::fmt::Write as _;

use pursuit_core::strategy::CaptureTimeBoundReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Summary line of one `simulate` or `play` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub graph: String,
    pub strategy: String,
    pub cops: usize,
    pub robber: String,
    pub outcome: String,
    pub capture_round: Option<usize>,
    pub rounds_played: usize,
    pub max_rounds: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub capture_time_bound: Option<CaptureTimeBoundReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub reentries: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

pub fn render<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => to_json(value),
        Format::Text => to_text(&serde_json::to_value(value).expect("reports serialise")),
    }
}

/// `key: value` lines; nested objects are indented, short arrays inline.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn text_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_into(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        text_into(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Machine-readable failure written to stdout before a nonzero exit.
pub fn error_json(e: &CliError) -> String {
    to_json(&serde_json::json!({
        "error": e.kind(),
        "exit_code": e.exit_code(),
        "message": e.to_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_follows_json() {
        let v = serde_json::json!({"graph": "grid:3", "bounds": {"eq1": 2, "thm1": null}, "bags": [1, 1]});
        assert_eq!(to_text(&v), "bags: 1 1\nbounds:\n  eq1: 2\n  thm1: -\ngraph: grid:3\n");
    }
}
