//! Text rendering of structured reports.
//!
//! The text form is produced from the JSON report, never separately, so the
//! two cannot disagree.

use serde_json::Value;

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Arrays nested no deeper than scalars-of-arrays stay on one line.
fn is_compact(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| is_scalar(x) || matches!(x, Value::Array(inner) if inner.iter().all(|y| is_scalar(y) || matches!(y, Value::Array(z) if z.iter().all(is_scalar))))),
        _ => is_scalar(v),
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_compact(x) {
                    let shown = if is_scalar(x) { inline(x) } else { x.to_string() };
                    out.push_str(&format!("{pad}{k}: {shown}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    walk(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_compact(x) {
                    let shown = if is_scalar(x) { inline(x) } else { x.to_string() };
                    out.push_str(&format!("{pad}- {shown}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    walk(x, indent + 1, out);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{}\n", inline(scalar))),
    }
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    walk(report, 0, &mut out);
    out
}
