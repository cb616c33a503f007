//! Polytope and partition files: JSON with vertices as decimal-integer strings.

use std::fmt;

use nefhodge::{Int, LatticePolytope};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug)]
pub struct FileError(pub String);

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, FileError> {
    Err(FileError(msg.into()))
}

fn parse_json(text: &str) -> Result<Map<String, Value>, FileError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| FileError(format!("malformed JSON at line {} column {}: {e}", e.line(), e.column())))?;
    let Value::Object(map) = value else {
        return err("top level: expected an object");
    };
    match map.get("schemaVersion") {
        Some(Value::String(v)) if v == SCHEMA_VERSION => {}
        Some(other) => return err(format!("schemaVersion: expected \"{SCHEMA_VERSION}\", got {other}")),
        None => return err("schemaVersion: missing"),
    }
    Ok(map)
}

fn parse_dim(map: &Map<String, Value>) -> Result<usize, FileError> {
    match map.get("dim") {
        Some(Value::Number(n)) => match n.as_u64() {
            Some(d) if d > 0 => Ok(d as usize),
            _ => err(format!("dim: expected a positive integer, got {n}")),
        },
        Some(other) => err(format!("dim: expected a positive integer, got {other}")),
        None => err("dim: missing"),
    }
}

fn parse_int(value: &Value, field: &str) -> Result<Int, FileError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return err(format!("{field}: expected a decimal integer string, got {other}")),
    };
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return err(format!("{field}: \"{text}\" is not a decimal integer"));
    }
    text.parse().map_err(|_| FileError(format!("{field}: \"{text}\" is not a decimal integer")))
}

fn parse_vertices(value: Option<&Value>, dim: usize, field: &str) -> Result<Vec<Vec<Int>>, FileError> {
    let Some(Value::Array(rows)) = value else {
        return err(format!("{field}: expected an array of vertices"));
    };
    if rows.is_empty() {
        return err(format!("{field}: at least one vertex is required"));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let Value::Array(coords) = row else {
                return err(format!("{field}[{i}]: expected an array of coordinates"));
            };
            if coords.len() != dim {
                return err(format!("{field}[{i}]: expected {dim} coordinates, got {}", coords.len()));
            }
            coords.iter().enumerate().map(|(j, c)| parse_int(c, &format!("{field}[{i}][{j}]"))).collect()
        })
        .collect()
}

fn build(points: &[Vec<Int>], dim: usize, field: &str) -> Result<LatticePolytope, FileError> {
    LatticePolytope::from_points(points, dim).map_err(|e| FileError(format!("{field}: {e}")))
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope, FileError> {
    let map = parse_json(text)?;
    let dim = parse_dim(&map)?;
    let pts = parse_vertices(map.get("vertices"), dim, "vertices")?;
    build(&pts, dim, "vertices")
}

pub fn parse_partition(text: &str) -> Result<Vec<LatticePolytope>, FileError> {
    let map = parse_json(text)?;
    let dim = parse_dim(&map)?;
    let Some(Value::Array(parts)) = map.get("parts") else {
        return err("parts: expected an array of vertex lists");
    };
    if parts.is_empty() {
        return err("parts: at least one part is required");
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let field = format!("parts[{i}]");
            let pts = parse_vertices(Some(p), dim, &field)?;
            build(&pts, dim, &field)
        })
        .collect()
}

pub fn int_vec(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn vertex_list(vs: &[Vec<Int>]) -> Value {
    Value::Array(vs.iter().map(|v| int_vec(v)).collect())
}

pub fn polytope_file(p: &LatticePolytope) -> Value {
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "dim": p.ambient_dim(),
        "vertices": vertex_list(p.vertices()),
    })
}

pub fn partition_file(parts: &[LatticePolytope]) -> Value {
    let dim = parts.first().map_or(0, |p| p.ambient_dim());
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "dim": dim,
        "parts": Value::Array(parts.iter().map(|p| vertex_list(p.vertices())).collect()),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
