//! Plain-text rendering of JSON reports: nested `key: value` lines, lists of
//! scalars inline, lists of objects as `-` items.

use std::fmt::Write;

use serde_json::Value;

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    for key in ["command", "seed"] {
        if let Some(v) = report.get(key) {
            field(&mut out, 0, key, v);
        }
    }
    match report.get("report") {
        Some(Value::Object(fields)) => {
            for (k, v) in fields {
                field(&mut out, 0, k, v);
            }
        }
        Some(other) => field(&mut out, 0, "report", other),
        None => {}
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn field(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    body(out, indent + 1, v);
}

fn body(out: &mut String, indent: usize, v: &Value) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                field(out, indent, k, x);
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        body(out, indent + 1, item);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_layout() {
        let r = json!({"command": "depth", "seed": 1, "report": {
            "verdict": "Finite(2)", "levels": [{"level": 0, "ids": ["a", "b"]}]}});
        assert_eq!(
            render(&r),
            "command: depth\nseed: 1\nlevels:\n  -\n    ids: [a, b]\n    level: 0\nverdict: Finite(2)\n"
        );
    }
}
