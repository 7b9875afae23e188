//! Reading fans, fields, forms and semi-torus data from JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use thiserror::Error;

use logframe::fan::{Fan, FanData};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: invalid fan: {message}")]
    Validation { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl InputError {
    pub fn invalid(e: impl std::fmt::Display) -> Self {
        InputError::Invalid(e.to_string())
    }
}

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| InputError::Parse {
        path: path.to_path_buf(),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })
}

/// Structural parse only: ray lengths and cone indices are checked, the
/// geometric conditions are not.
pub fn parse_fan_unchecked(path: &Path) -> Result<Fan, InputError> {
    let v = read_json(path)?;
    fan_from_value(&v, path)
}

pub fn fan_from_value(v: &Value, path: &Path) -> Result<Fan, InputError> {
    let parse = |message: String| InputError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let data: FanData = serde_json::from_value(v.clone()).map_err(|e| parse(e.to_string()))?;
    Fan::from_data(data).map_err(|e| parse(e.to_string()))
}

/// Parses and validates; any violation is an input error.
pub fn parse_fan(path: &Path) -> Result<Fan, InputError> {
    let fan = parse_fan_unchecked(path)?;
    ensure_valid(fan, path)
}

pub fn ensure_valid(fan: Fan, path: &Path) -> Result<Fan, InputError> {
    let report = fan.validate();
    match report.violations.first() {
        None => Ok(fan),
        Some(v) => Err(InputError::Validation {
            path: path.to_path_buf(),
            message: describe_violation(v),
        }),
    }
}

pub fn describe_violation(v: &logframe::fan::Violation) -> String {
    use logframe::fan::Violation::*;
    match v {
        ZeroRay { ray } => format!("ray {ray} is zero"),
        NonPrimitive { ray, content } => format!("non-primitive ray {ray} (content {content})"),
        DuplicateRay { first, second } => format!("rays {first} and {second} coincide"),
        NotStronglyConvex { cone } => format!("cone {cone} is not strongly convex"),
        NonSimplicial { cone } => format!("cone {cone} is not simplicial"),
        DuplicateCone { first, second } => format!("cones {first} and {second} coincide"),
        NotMaximal { cone, contained_in } => format!("cone {cone} is a face of cone {contained_in}"),
        BadIntersection { first, second, common_face } => {
            format!("cones {first} and {second} do not meet in the common face {common_face}")
        }
    }
}

/// Either an inline JSON value (starting with `[` or `{`) or a path to one.
pub fn json_arg(arg: &str) -> Result<Value, InputError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| InputError::Invalid(format!("inline JSON: {e}")))
    } else {
        read_json(Path::new(arg))
    }
}
