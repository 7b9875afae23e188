#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn logframe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logframe"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--format structured`, requires exit 0 and parses the report.
pub fn structured(args: &[&str]) -> Value {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let out = logframe(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("structured output is JSON")
}

fn bump_rational(s: &str) -> Option<String> {
    let (p, q) = s.split_once('/')?;
    let p: i64 = p.parse().ok()?;
    Some(format!("{}/{q}", p + 1))
}

fn swap_word(s: &str) -> Option<&'static str> {
    Some(match s {
        "trivial" => "nontrivial",
        "nontrivial" => "trivial",
        "feasible" => "infeasible",
        "infeasible" => "feasible",
        "equality" => "strict",
        "strict" => "equality",
        _ => return None,
    })
}

/// Every document obtained by changing one leaf of `v`: integers move by
/// one, `"p/q"` strings become `"(p+1)/q"`, enum words flip, and `null`
/// becomes `0`.
pub fn single_entry_mutations(v: &Value) -> Vec<Value> {
    let mut out = Vec::new();
    let mut replace = |new: Value| out.push(new);
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                replace(Value::from(i + 1));
                replace(Value::from(i - 1));
            }
        }
        Value::String(s) => {
            if let Some(b) = bump_rational(s) {
                replace(Value::from(b));
            } else if let Some(w) = swap_word(s) {
                replace(Value::from(w));
            }
        }
        Value::Null => replace(Value::from(0)),
        Value::Bool(b) => replace(Value::from(!b)),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                for m in single_entry_mutations(item) {
                    let mut copy = items.clone();
                    copy[i] = m;
                    out.push(Value::Array(copy));
                }
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                for m in single_entry_mutations(item) {
                    let mut copy = map.clone();
                    copy[k] = m;
                    out.push(Value::Object(copy));
                }
            }
        }
    }
    out
}

/// Mutations of the listed top-level parts of a report.
pub fn mutations_of(doc: &Value, keys: &[&str]) -> Vec<Value> {
    let mut out = Vec::new();
    for &key in keys {
        if let Some(part) = doc.get(key) {
            for m in single_entry_mutations(part) {
                let mut copy = doc.clone();
                copy[key] = m;
                out.push(copy);
            }
        }
    }
    out
}
