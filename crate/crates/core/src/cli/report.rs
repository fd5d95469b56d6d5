//! Deterministic text and JSON rendering of command results.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::gf::GfMatrix;
use crate::stabilizer::Ratio;

pub const SCHEMA: &str = "qudit-frustration/report/v1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    /// Result fields in insertion order.
    pub payload: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, input_text: &str) -> Self {
        Report {
            command: command.to_owned(),
            input_digest: digest(input_text),
            payload: Map::new(),
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.payload.insert(key.to_owned(), value.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input_digest": self.input_digest,
            "tool_version": TOOL_VERSION,
            "result": Value::Object(self.payload.clone()),
        })
    }
}

/// SHA-256 of the canonical input text, hex encoded.
pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Decimal string with 12 significant digits.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000000".to_owned();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-6..12).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 9.99.. -> 10.0..
    let digits = s
        .bytes()
        .filter(u8::is_ascii_digit)
        .skip_while(|&b| b == b'0')
        .count();
    if digits > 12 && decimals > 0 {
        let decimals = decimals - 1;
        format!("{x:.decimals$}")
    } else {
        s
    }
}

pub fn real(x: f64) -> Value {
    Value::String(format_real(x))
}

pub fn ratio(r: Ratio) -> Value {
    json!({ "num": r.num, "den": r.den, "real": format_real(r.to_f64()) })
}

/// Matrix as rows of signed representatives.
pub fn matrix(m: &GfMatrix) -> Value {
    Value::Array(
        m.to_signed_rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(Value::from).collect()))
            .collect(),
    )
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.to_json()).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("command: {}\n", r.command));
            out.push_str(&format!("input_digest: {}\n", r.input_digest));
            for (k, v) in &r.payload {
                render_text(&mut out, k, v, 0);
            }
            out
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) if map.contains_key("num") && map.contains_key("den") => {
            format!(
                "{}/{} ({})",
                map["num"],
                map["den"],
                map.get("real").map(inline).unwrap_or_default()
            )
        }
        other => other.to_string(),
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if !(map.contains_key("num") && map.contains_key("den")) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_text(out, k, v, depth + 1);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                render_text(out, &format!("- [{i}]"), item, depth + 1);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for row in items {
                out.push_str(&format!("{pad}  {}\n", inline(row)));
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", inline(other))),
    }
}
