//! Structured reports.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::format::AlgebraFile;
use crate::exactla::{FieldElement, Matrix};
use crate::isotest::field_tag;
use crate::liealg::AlgebraPresentation;

pub const SCHEMA: &str = "reslie-report/1";

/// Keys whose values vary between runs on identical inputs.
pub const TIMING_KEYS: [&str; 1] = ["timing"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub name: Option<String>,
    pub field: String,
    pub modulus: Vec<u32>,
    pub dim: usize,
}

impl InputInfo {
    pub fn new(path: &str, text: &str, file: &AlgebraFile) -> Self {
        let f = file.algebra.field();
        InputInfo {
            path: path.to_string(),
            sha256: sha256_hex(text.as_bytes()),
            name: file.name.clone(),
            field: field_tag(f),
            modulus: f.modulus().to_vec(),
            dim: file.algebra.dim(),
        }
    }
}

/// One property evaluated on one subject.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub property: String,
    pub passed: bool,
    /// Replayable evidence for a failure, or the data a pass rests on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(property: &str, passed: bool, witness: Option<Value>) -> Self {
        Check { property: property.to_string(), passed, witness }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<InputInfo>,
    pub body: Value,
    pub failures: usize,
    pub candidate_violations: usize,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut inputs = self.inputs.clone();
        inputs.sort_by(|a, b| a.sha256.cmp(&b.sha256).then(a.path.cmp(&b.path)));
        json!({
            "schema": SCHEMA,
            "tool": {"name": "reslie", "version": env!("CARGO_PKG_VERSION")},
            "command": self.command,
            "inputs": inputs,
            "results": self.body,
            "summary": {"failures": self.failures, "candidate_violations": self.candidate_violations},
            "timing": {"elapsed_ms": self.elapsed_ms as u64},
        })
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_json();
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                render_text(&value, 0, &mut out);
                out
            }
        }
    }
}

/// Drop run-dependent fields, for comparing reports.
pub fn strip_timing(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        for k in TIMING_KEYS {
            map.remove(k);
        }
    }
    v
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn vector_json(a: &AlgebraPresentation, v: &[FieldElement]) -> Value {
    Value::String(a.format_vector(v))
}

pub fn matrix_json(a: &AlgebraPresentation, m: &Matrix) -> Value {
    let f = a.field();
    Value::Array(
        (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|&c| Value::String(f.format(c))).collect())).collect(),
    )
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
