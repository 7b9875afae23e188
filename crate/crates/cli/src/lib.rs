//! Command-line front end: reads fans and analytic data from JSON files,
//! runs the decision procedures, and prints versioned reports.

pub mod input;
pub mod render;
pub mod scan;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use input::{describe_violation, json_arg, parse_fan, parse_fan_unchecked, read_json, InputError};
use logframe::chartcalc::{self, form, ChartVectorField, Frame, LogOneForm, MonomialMap};
use logframe::exactnum::intmat::bigint_to_json;
use logframe::exactnum::ExactComplex;
use logframe::fan::complete::{DEFAULT_SAMPLES, DEFAULT_SEED};
use logframe::fan::{Fan, ProjectivityCertificate};
use logframe::logtoric::{self, charts, TrivialityCertificate};
use logframe::semitorus::{self, ExtensionData, HopfDatum, SemiTorusData};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "logframe", version, about = "Exact decision procedures for toric log tangent frames and semi-tori")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized guards (completeness sampling)
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fan queries
    #[command(subcommand)]
    Fan(FanCmd),
    /// Vector fields on a single chart
    #[command(subcommand)]
    Chart(ChartCmd),
    /// Logarithmic one-forms
    #[command(subcommand)]
    Form(FormCmd),
    /// Semi-torus lattices and one-parameter subgroups
    #[command(subcommand)]
    Semitorus(SemitorusCmd),
    /// Torus extensions with toric fibers
    #[command(subcommand)]
    Extension(ExtensionCmd),
    /// Diagonal Hopf surfaces
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Families of fans
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Re-check a certificate produced by `fan frame-cert` or `fan projective`
    VerifyCert { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FanCmd {
    /// Validity, smoothness and completeness
    Check {
        file: PathBuf,
        /// Number of random completeness samples
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Orbit counts by codimension
    Strata { file: PathBuf },
    /// Betti numbers and the d-invariant
    Betti { file: PathBuf },
    /// Strictly convex support function or Farkas witness
    Projective { file: PathBuf },
    /// Global frame certificate for the log tangent bundle
    FrameCert { file: PathBuf },
    /// Residues of invariant log forms in every chart
    Residues {
        file: PathBuf,
        /// Character as comma-separated integers; repeatable. Defaults to each chart's dual basis.
        #[arg(long = "character", allow_hyphen_values = true)]
        characters: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChartCmd {
    /// Rewrite a field through a monomial chart change
    Pushforward {
        field: PathBuf,
        /// Exponent matrix, inline JSON or a file
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// Divisor coordinates of the target chart (1-based, comma-separated)
        #[arg(long)]
        target_divisor: Option<String>,
    },
    /// Vanishing orders along each divisor coordinate
    Orders { field: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FormCmd {
    /// Closedness, obstruction and residues
    Closed { form: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SemitorusCmd {
    /// Lattice, spanning and compactness checks
    Check { file: PathBuf },
    /// Closure of t ↦ (e^{at}, e^{bt}) in (C*)^2
    Closure {
        /// `re` or `re,im`, each part `p/q` or `p/q:r/s` (= p/q + r/s·√radicand)
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 2)]
        radicand: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtensionCmd {
    /// Fiber-product compactification report
    Analyze {
        file: PathBuf,
        /// Fiber fan; may be omitted when d = 0
        #[arg(long)]
        fan: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HopfCmd {
    /// Orbits, isotropy and the frame verdict
    Analyze {
        /// JSON datum `{"alpha", "beta"}`; alternative to the flags
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value_t = 2)]
        radicand: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Members whose boundary is s.n.c. and whose log tangent bundle is trivial
    Scan { manifest: PathBuf },
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn envelope(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    match body {
        Value::Object(b) => m.extend(b),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, InputError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| InputError::Invalid(format!("`{x}`: {e}"))))
        .collect()
}

/// Runs a command and returns its structured report.
pub fn run(cli: &Cli) -> Result<Value, InputError> {
    match &cli.command {
        Command::Fan(cmd) => run_fan(cmd, cli.seed),
        Command::Chart(cmd) => run_chart(cmd),
        Command::Form(FormCmd::Closed { form }) => run_form(form),
        Command::Semitorus(cmd) => run_semitorus(cmd),
        Command::Extension(ExtensionCmd::Analyze { file, fan }) => run_extension(file, fan.as_deref()),
        Command::Hopf(HopfCmd::Analyze {
            file,
            alpha,
            beta,
            radicand,
        }) => run_hopf(file.as_deref(), alpha.as_deref(), beta.as_deref(), *radicand),
        Command::Family(FamilyCmd::Scan { manifest }) => {
            let m = scan::FamilyManifest::load(manifest)?;
            Ok(envelope("family scan", to_value(&scan::family_scan(&m))))
        }
        Command::VerifyCert { file } => run_verify(file),
    }
}

fn run_fan(cmd: &FanCmd, seed: u64) -> Result<Value, InputError> {
    match cmd {
        FanCmd::Check { file, samples } => {
            let fan = parse_fan_unchecked(file)?;
            let validation = fan.validate();
            let mut body = json!({
                "n": fan.n(),
                "rays": fan.rays().len(),
                "max_cones": fan.max_cones().len(),
                "valid": validation.valid,
                "violations": validation.violations.iter().map(|v| {
                    let mut o = to_value(v);
                    o["message"] = json!(describe_violation(v));
                    o
                }).collect::<Vec<_>>(),
            });
            if validation.valid {
                body["smoothness"] = to_value(&fan.smoothness());
                let complete = fan.completeness(seed, *samples).map_err(InputError::invalid)?;
                body["completeness"] = to_value(&complete);
            }
            Ok(envelope("fan check", body))
        }
        FanCmd::Strata { file } => {
            let fan = parse_fan(file)?;
            Ok(envelope("fan strata", to_value(&logtoric::strata_census(&fan))))
        }
        FanCmd::Betti { file } => {
            let fan = parse_fan(file)?;
            let betti = logtoric::betti_numbers(&fan).map_err(InputError::invalid)?;
            let d = logtoric::d_invariant_report(&fan).map_err(InputError::invalid)?;
            Ok(envelope(
                "fan betti",
                json!({
                    "betti": betti.iter().map(bigint_to_json).collect::<Vec<_>>(),
                    "d_invariant": d,
                }),
            ))
        }
        FanCmd::Projective { file } => {
            let fan = parse_fan(file)?;
            let cert = fan.is_projective().map_err(InputError::invalid)?;
            Ok(envelope(
                "fan projective",
                json!({"kind": "projectivity", "verdict": cert.verdict, "fan": fan.to_data(), "certificate": cert}),
            ))
        }
        FanCmd::FrameCert { file } => {
            let fan = parse_fan(file)?;
            let cert = logtoric::triviality_certificate(&fan);
            Ok(envelope(
                "fan frame-cert",
                json!({"kind": "triviality", "verdict": cert.verdict, "certificate": cert}),
            ))
        }
        FanCmd::Residues { file, characters } => {
            let fan = parse_fan(file)?;
            let chs = charts(&fan).map_err(InputError::invalid)?;
            let given: Vec<Vec<BigInt>> = characters
                .iter()
                .map(|c| parse_int_list(c).map(|v| v.into_iter().map(BigInt::from).collect()))
                .collect::<Result<_, _>>()?;
            let mut out = Vec::with_capacity(chs.len());
            for ch in &chs {
                let ms = if given.is_empty() { ch.dual_basis() } else { given.clone() };
                let r = ch.residue_matrix(&ms).map_err(InputError::invalid)?;
                out.push(json!({
                    "cone": ch.cone,
                    "equation": ch.local_equation(),
                    "characters": to_value(&logframe::exactnum::IntMatrix::from_rows(&ms)),
                    "residues": r,
                }));
            }
            Ok(envelope("fan residues", json!({"unit": "2*pi*i", "charts": out})))
        }
    }
}

fn parse_divisor_arg(s: &str, n: usize) -> Result<BTreeSet<usize>, InputError> {
    if s.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    parse_int_list(s)?
        .into_iter()
        .map(|i| {
            if i >= 1 && (i as usize) <= n {
                Ok(i as usize - 1)
            } else {
                Err(InputError::Invalid(format!("divisor coordinate {i} outside 1..={n}")))
            }
        })
        .collect()
}

fn orders_of(v: &ChartVectorField) -> Vec<Value> {
    v.divisor
        .iter()
        .map(|&i| {
            let show = |f| match chartcalc::vanishing_order(v, i, f) {
                Ok(o) => to_value(&o),
                Err(e) => json!({"error": e.to_string()}),
            };
            json!({"coordinate": i + 1, "ordinary": show(Frame::Ordinary), "log": show(Frame::Log)})
        })
        .collect()
}

fn run_chart(cmd: &ChartCmd) -> Result<Value, InputError> {
    match cmd {
        ChartCmd::Pushforward {
            field,
            map,
            target_divisor,
        } => {
            let v = ChartVectorField::from_json(&read_json(field)?).map_err(InputError::invalid)?;
            let phi = MonomialMap::from_json(&json_arg(map)?).map_err(InputError::invalid)?;
            let target = target_divisor
                .as_deref()
                .map(|s| parse_divisor_arg(s, v.n()))
                .transpose()?;
            let w = chartcalc::field::pushforward(&v, &phi, target.as_ref()).map_err(InputError::invalid)?;
            Ok(envelope(
                "chart pushforward",
                json!({
                    "map": phi.matrix(),
                    "field": w,
                    "display": w.display(),
                    "ordinary_display": w.from_log_frame().display(),
                    "orders": orders_of(&w),
                }),
            ))
        }
        ChartCmd::Orders { field } => {
            let v = ChartVectorField::from_json(&read_json(field)?).map_err(InputError::invalid)?;
            Ok(envelope(
                "chart orders",
                json!({"display": v.display(), "zero_field": v.is_zero(), "orders": orders_of(&v)}),
            ))
        }
    }
}

fn run_form(path: &Path) -> Result<Value, InputError> {
    let w = LogOneForm::from_json(&read_json(path)?).map_err(InputError::invalid)?;
    let report = form::d_closed(&w);
    let residues: Vec<Value> = w
        .divisor
        .iter()
        .map(|&i| {
            let r = form::residue(&w, i).expect("divisor coordinate");
            json!({"coordinate": i + 1, "residue": r, "display": r.to_string(), "constant": r.is_constant()})
        })
        .collect();
    Ok(envelope(
        "form closed",
        json!({
            "display": w.display(),
            "closed": report.closed,
            "obstruction": report.obstruction.iter().map(|t| json!({
                "i": t.i, "j": t.j, "basis": t.basis, "coefficient": t.coefficient, "display": t.coefficient.to_string(),
            })).collect::<Vec<_>>(),
            "residue_unit": "2*pi*i",
            "residues": residues,
        }),
    ))
}

fn run_semitorus(cmd: &SemitorusCmd) -> Result<Value, InputError> {
    match cmd {
        SemitorusCmd::Check { file } => {
            let s = SemiTorusData::from_json(&read_json(file)?).map_err(InputError::invalid)?;
            let r = semitorus::check_semi_torus(&s).map_err(InputError::invalid)?;
            Ok(envelope("semitorus check", to_value(&r)))
        }
        SemitorusCmd::Closure { a, b, radicand } => {
            let a = ExactComplex::parse_cli(a, *radicand).map_err(InputError::invalid)?;
            let b = ExactComplex::parse_cli(b, *radicand).map_err(InputError::invalid)?;
            let r = semitorus::one_parameter_closure(&a, &b).map_err(InputError::invalid)?;
            Ok(envelope("semitorus closure", to_value(&r)))
        }
    }
}

fn run_extension(file: &Path, fan: Option<&Path>) -> Result<Value, InputError> {
    let e = ExtensionData::from_json(&read_json(file)?).map_err(InputError::invalid)?;
    let fan = match fan {
        Some(p) => parse_fan(p)?,
        None if e.d == 0 => Fan::new(0, vec![], vec![vec![]]).expect("point fan"),
        None => return Err(InputError::Invalid("--fan is required when d > 0".into())),
    };
    let r = semitorus::fiber_product_analyze(&e, &fan).map_err(InputError::invalid)?;
    Ok(envelope("extension analyze", to_value(&r)))
}

fn run_hopf(file: Option<&Path>, alpha: Option<&str>, beta: Option<&str>, radicand: u32) -> Result<Value, InputError> {
    let h = match (file, alpha, beta) {
        (Some(p), None, None) => HopfDatum::from_json(&read_json(p)?).map_err(InputError::invalid)?,
        (None, Some(a), Some(b)) => HopfDatum {
            alpha: ExactComplex::parse_cli(a, radicand).map_err(InputError::invalid)?,
            beta: ExactComplex::parse_cli(b, radicand).map_err(InputError::invalid)?,
        },
        _ => return Err(InputError::Invalid("give either a datum file or both --alpha and --beta".into())),
    };
    let r = semitorus::hopf_analyze(&h).map_err(InputError::invalid)?;
    Ok(envelope("hopf analyze", to_value(&r)))
}

/// Outcome of re-checking a certificate document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub kind: String,
    pub accepted: bool,
    pub reason: Option<String>,
}

/// Re-checks a `fan frame-cert` or `fan projective` report.
pub fn verify_document(doc: &Value) -> Result<Verification, InputError> {
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| InputError::Invalid("certificate document has no `kind`".into()))?;
    let cert = doc
        .get("certificate")
        .ok_or_else(|| InputError::Invalid("certificate document has no `certificate`".into()))?;
    let verdict_matches = |v: &Value| doc.get("verdict").is_none_or(|top| top == v);
    let result = match kind {
        "triviality" => {
            let c: TrivialityCertificate =
                serde_json::from_value(cert.clone()).map_err(|e| InputError::Invalid(format!("certificate: {e}")))?;
            if !verdict_matches(&to_value(&c.verdict)) {
                Err("report verdict disagrees with the certificate".to_string())
            } else {
                c.verify()
            }
        }
        "projectivity" => {
            let c: ProjectivityCertificate =
                serde_json::from_value(cert.clone()).map_err(|e| InputError::Invalid(format!("certificate: {e}")))?;
            let fan_v = doc
                .get("fan")
                .ok_or_else(|| InputError::Invalid("projectivity document has no `fan`".into()))?;
            let fan = input::fan_from_value(fan_v, Path::new("<certificate>"))?;
            if !verdict_matches(&to_value(&c.verdict)) {
                Err("report verdict disagrees with the certificate".to_string())
            } else if !fan.is_valid() {
                Err("fan is not valid".to_string())
            } else if !fan.is_smooth() || !fan.is_complete().is_ok_and(|r| r.complete) {
                Err("projectivity is only certified for smooth complete fans".to_string())
            } else if c.verify(&fan) {
                Ok(())
            } else {
                Err("certificate does not check against the fan".to_string())
            }
        }
        other => return Err(InputError::Invalid(format!("unknown certificate kind `{other}`"))),
    };
    Ok(Verification {
        kind: kind.to_string(),
        accepted: result.is_ok(),
        reason: result.err(),
    })
}

fn run_verify(file: &Path) -> Result<Value, InputError> {
    let doc = read_json(file)?;
    Ok(envelope("verify-cert", to_value(&verify_document(&doc)?)))
}

/// Renders a report in the requested format, newline-terminated.
pub fn format_report(report: &Value, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render::render_text(report),
    }
}
