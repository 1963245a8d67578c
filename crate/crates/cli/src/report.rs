use std::fmt::Write as _;

use hurwitz_core::Caps;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Collects the argument vector and the bytes of every input file read.
#[derive(Default)]
pub struct InputLog {
    hasher: Sha256,
}

impl InputLog {
    pub fn new(args: &[String]) -> Self {
        let mut log = InputLog::default();
        for a in args {
            log.hasher.update(a.as_bytes());
            log.hasher.update([0u8]);
        }
        log
    }

    pub fn record(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(&self) -> String {
        let out = self.hasher.clone().finalize();
        let mut s = String::with_capacity(64);
        for b in out.iter() {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

pub fn caps_json(caps: &Caps) -> Value {
    json!({
        "max_orbit": caps.max_orbit,
        "max_cosets": caps.max_cosets,
        "max_elements": caps.max_elements,
    })
}

pub fn build(
    args: &[String],
    digest: String,
    caps: &Caps,
    outcome: std::result::Result<Value, Value>,
    wall_ms: Option<f64>,
) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(args));
    m.insert("inputs_digest".into(), json!(digest));
    match outcome {
        Ok(results) => m.insert("results".into(), results),
        Err(error) => m.insert("error".into(), error),
    };
    m.insert("caps".into(), caps_json(caps));
    if let Some(ms) = wall_ms {
        m.insert("wall_time_ms".into(), json!(ms));
    }
    Value::Object(m)
}

/// Indented plain-text rendering.
pub fn human(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => Some(
            items
                .iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join("  "),
        ),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}[{i}] {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
