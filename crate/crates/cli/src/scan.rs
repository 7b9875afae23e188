//! Verdicts over a finite family of fans.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::input::{ensure_valid, fan_from_value, parse_fan, read_json, InputError};
use logframe::fan::Fan;
use logframe::logtoric::{snc_certificate, triviality_certificate, TrivialityVerdict};
use logframe::semitorus::{fiber_product_analyze, ExtensionData};

#[derive(Clone, Debug)]
pub enum FanSource {
    File(PathBuf),
    Inline(Value),
}

#[derive(Clone, Debug)]
pub struct Member {
    pub id: String,
    pub fan: FanSource,
    pub extension: Option<FanSource>,
}

#[derive(Clone, Debug)]
pub struct FamilyManifest {
    pub members: Vec<Member>,
}

fn source(v: &Value, base: &Path) -> Result<FanSource, InputError> {
    match v {
        Value::String(p) => Ok(FanSource::File(base.join(p))),
        Value::Object(_) => Ok(FanSource::Inline(v.clone())),
        other => Err(InputError::Invalid(format!("expected a file path or an inline object, got {other}"))),
    }
}

impl FamilyManifest {
    /// `{"members": [{"id", "fan", "extension"?}], "options"?}`; relative
    /// paths resolve against the manifest's directory.
    pub fn load(path: &Path) -> Result<FamilyManifest, InputError> {
        let v = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let bad = |m: String| InputError::Parse {
            path: path.to_path_buf(),
            message: m,
        };
        let obj = v.as_object().ok_or_else(|| bad("manifest must be an object".into()))?;
        if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "members" | "options")) {
            return Err(bad(format!("unknown field `{k}`")));
        }
        let items = obj
            .get("members")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `members` list".into()))?;
        let mut seen = BTreeSet::new();
        let mut members = Vec::with_capacity(items.len());
        for (i, m) in items.iter().enumerate() {
            let id = match m.get("id") {
                Some(Value::String(s)) => s.clone(),
                None => i.to_string(),
                Some(other) => return Err(bad(format!("member {i}: id must be a string, got {other}"))),
            };
            if !seen.insert(id.clone()) {
                return Err(bad(format!("duplicate member id `{id}`")));
            }
            let fan = source(m.get("fan").ok_or_else(|| bad(format!("member {i}: missing `fan`")))?, base)
                .map_err(|e| bad(format!("member {i}: {e}")))?;
            let extension = m
                .get("extension")
                .map(|e| source(e, base))
                .transpose()
                .map_err(|e| bad(format!("member {i}: {e}")))?;
            members.push(Member { id, fan, extension });
        }
        Ok(FamilyManifest { members })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberVerdict {
    pub index: usize,
    pub id: String,
    /// `None` when the member could not be evaluated.
    pub snc: Option<bool>,
    pub triviality: Option<TrivialityVerdict>,
    pub in_s: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_cone: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_invariant: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub members: Vec<MemberVerdict>,
    /// Indices of the members in `S`.
    pub s: Vec<usize>,
    /// Verdict class ↦ member indices.
    pub partition: BTreeMap<String, Vec<usize>>,
}

fn load_fan(src: &FanSource) -> Result<Fan, InputError> {
    match src {
        FanSource::File(p) => parse_fan(p),
        FanSource::Inline(v) => {
            let p = Path::new("<inline>");
            ensure_valid(fan_from_value(v, p)?, p)
        }
    }
}

fn evaluate(index: usize, m: &Member) -> MemberVerdict {
    let mut out = MemberVerdict {
        index,
        id: m.id.clone(),
        snc: None,
        triviality: None,
        in_s: false,
        failure_cone: None,
        d_invariant: None,
        error: None,
    };
    let fan = match load_fan(&m.fan) {
        Ok(f) => f,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    // boundary first, then the frame
    let snc = snc_certificate(&fan).is_ok();
    let cert = triviality_certificate(&fan);
    out.snc = Some(snc);
    out.triviality = Some(cert.verdict);
    out.failure_cone = cert.failure.as_ref().map(|f| f.cone.to_string());
    out.in_s = snc && cert.is_trivial();
    if let Some(src) = &m.extension {
        let data = match src {
            FanSource::File(p) => read_json(p),
            FanSource::Inline(v) => Ok(v.clone()),
        };
        match data
            .and_then(|v| ExtensionData::from_json(&v).map_err(InputError::invalid))
            .and_then(|e| fiber_product_analyze(&e, &fan).map_err(InputError::invalid))
        {
            Ok(r) => out.d_invariant = Some(r.d_invariant),
            Err(e) => out.error = Some(e.to_string()),
        }
    }
    out
}

pub fn family_scan(m: &FamilyManifest) -> ScanResult {
    // collect preserves manifest order
    let members: Vec<MemberVerdict> = m
        .members
        .par_iter()
        .enumerate()
        .map(|(i, member)| evaluate(i, member))
        .collect();
    let mut partition: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for v in &members {
        let key = match (v.snc, v.triviality) {
            (Some(true), Some(TrivialityVerdict::Trivial)) => "snc+trivial",
            (Some(true), Some(TrivialityVerdict::Nontrivial)) => "snc+nontrivial",
            (Some(false), Some(TrivialityVerdict::Trivial)) => "not_snc+trivial",
            (Some(false), Some(TrivialityVerdict::Nontrivial)) => "not_snc+nontrivial",
            _ => "error",
        };
        partition.entry(key.into()).or_default().push(v.index);
    }
    ScanResult {
        s: members.iter().filter(|v| v.in_s).map(|v| v.index).collect(),
        members,
        partition,
    }
}
