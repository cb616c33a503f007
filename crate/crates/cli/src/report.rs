//! Report envelopes and the fixed-width table format.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::files::to_canonical_string;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Results of one command as a JSON object plus the rows shown in table mode.
pub struct Output {
    pub results: Value,
    pub rows: Vec<(String, String)>,
}

impl Output {
    pub fn new(results: Value) -> Self {
        let rows = default_rows(&results);
        Self { results, rows }
    }

    pub fn with_rows(results: Value, rows: Vec<(String, String)>) -> Self {
        Self { results, rows }
    }
}

fn flat(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("JSON values always serialize"),
    }
}

fn default_rows(results: &Value) -> Vec<(String, String)> {
    match results {
        Value::Object(map) => map.iter().map(|(k, v)| (k.clone(), flat(v))).collect(),
        other => vec![("result".into(), flat(other))],
    }
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for chunk in inputs {
        h.update((chunk.len() as u64).to_le_bytes());
        h.update(chunk);
    }
    hex::encode(h.finalize())
}

pub fn render_json(command: &str, input_digest: &str, out: &Output) -> String {
    to_canonical_string(&json!({
        "command": command,
        "inputDigest": input_digest,
        "results": out.results,
        "toolVersion": TOOL_VERSION,
    }))
}

pub fn render_table(command: &str, out: &Output) -> String {
    let width = out.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0).max(8);
    let mut s = format!("# {command}\n");
    for (k, v) in &out.rows {
        s.push_str(&format!("{k:<width$}  {v}\n"));
    }
    s
}

/// Rows `h^{q,1}` for a vector of `h^{1,q}` values.
pub fn hodge_rows(h: &[i64]) -> Vec<(String, String)> {
    h.iter().enumerate().map(|(q, v)| (format!("h^{{{q},1}}"), v.to_string())).collect()
}
