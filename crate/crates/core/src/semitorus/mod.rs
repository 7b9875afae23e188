//! Semi-tori `ℂⁿ/Γ` given by explicit lattice generators, closures of
//! one-parameter subgroups of `(ℂ*)²`, extensions of compact tori by
//! `(ℂ*)^d` with toric fibers, and diagonal Hopf surfaces.

pub mod closure;
pub mod extension;
pub mod hopf;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exactnum::{complex_rank, real_rank, ExactComplex, NumError};
use crate::fan::FanError;
use crate::logtoric::LogToricError;

pub use closure::{one_parameter_closure, ClosureVerdict, Quotient, SubgroupClosureReport};
pub use extension::{fiber_product_analyze, ExtensionData, ExtensionReport};
pub use hopf::{hopf_analyze, HopfDatum, HopfReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiTorusError {
    #[error("direction (0, 0) does not define a one-parameter subgroup")]
    ZeroDirection,
    #[error("not a Hopf datum: |{which}|² = {modulus} is not greater than 1")]
    NotHopf { which: &'static str, modulus: String },
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    LogToric(#[from] LogToricError),
}

/// Reads a list of complex vectors of length `n`.
pub(crate) fn complex_vectors(v: &Value, n: usize, radicand: u32, what: &str) -> Result<Vec<Vec<ExactComplex>>, SemiTorusError> {
    let items = v
        .as_array()
        .ok_or_else(|| SemiTorusError::Invalid(format!("{what} must be a list of vectors")))?;
    items
        .iter()
        .map(|g| {
            let g = g
                .as_array()
                .ok_or_else(|| SemiTorusError::Invalid(format!("{what}: each entry must be a vector")))?;
            if g.len() != n {
                return Err(NumError::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                }
                .into());
            }
            g.iter()
                .map(|c| ExactComplex::from_json(c, radicand).map_err(SemiTorusError::from))
                .collect()
        })
        .collect()
}

pub(crate) fn radicand_of(v: &Value) -> Result<u32, SemiTorusError> {
    match v.get("radicand") {
        None => Ok(2),
        Some(r) => r
            .as_u64()
            .and_then(|r| u32::try_from(r).ok())
            .ok_or_else(|| SemiTorusError::Invalid("radicand must be a small positive integer".into())),
    }
}

pub(crate) fn reject_unknown(v: &Value, allowed: &[&str]) -> Result<(), SemiTorusError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SemiTorusError::Invalid("expected a JSON object".into()))?;
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(SemiTorusError::Invalid(format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

/// Lattice generators of a candidate semi-torus `ℂⁿ/Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiTorusData {
    pub n: usize,
    pub generators: Vec<Vec<ExactComplex>>,
}

impl SemiTorusData {
    pub fn new(n: usize, generators: Vec<Vec<ExactComplex>>) -> Result<Self, SemiTorusError> {
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(NumError::DimensionMismatch {
                expected: n,
                found: g.len(),
            }
            .into());
        }
        Ok(SemiTorusData { n, generators })
    }

    pub fn from_json(v: &Value) -> Result<Self, SemiTorusError> {
        reject_unknown(v, &["n", "generators", "radicand"])?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| SemiTorusError::Invalid("missing dimension `n`".into()))? as usize;
        let radicand = radicand_of(v)?;
        let gens = complex_vectors(v.get("generators").unwrap_or(&Value::Null), n, radicand, "generators")?;
        SemiTorusData::new(n, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiTorusReport {
    pub n: usize,
    /// Number of generators.
    pub rank: usize,
    pub real_rank: usize,
    pub complex_rank: usize,
    /// Generators are `ℝ`-independent, so they span a discrete subgroup.
    pub is_lattice: bool,
    /// Generators span `ℂⁿ` over `ℂ`.
    pub spans: bool,
    pub is_semi_torus: bool,
    pub is_compact: bool,
}

pub fn check_semi_torus(s: &SemiTorusData) -> Result<SemiTorusReport, SemiTorusError> {
    let rank = s.generators.len();
    let rr = if rank == 0 { 0 } else { real_rank(&s.generators)? };
    let cr = if rank == 0 { 0 } else { complex_rank(&s.generators)? };
    let is_lattice = rr == rank;
    let spans = cr == s.n;
    let is_semi_torus = is_lattice && spans;
    Ok(SemiTorusReport {
        n: s.n,
        rank,
        real_rank: rr,
        complex_rank: cr,
        is_lattice,
        spans,
        is_semi_torus,
        is_compact: is_semi_torus && rank == 2 * s.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    fn gens(v: Vec<ExactComplex>) -> SemiTorusData {
        SemiTorusData::new(1, v.into_iter().map(|c| vec![c]).collect()).unwrap()
    }

    #[test]
    fn gaussian_lattice_is_compact() {
        let r = check_semi_torus(&gens(vec![ExactComplex::from_int(1), ExactComplex::i()])).unwrap();
        assert!(r.is_semi_torus && r.is_compact);
    }

    #[test]
    fn c_star() {
        let r = check_semi_torus(&gens(vec![ExactComplex::from_int(1)])).unwrap();
        assert!(r.is_semi_torus && !r.is_compact);
    }

    #[test]
    fn dependent_generators() {
        let r = check_semi_torus(&gens(vec![ExactComplex::from_int(1), ExactComplex::from_rational(rat(1, 2))])).unwrap();
        assert!(!r.is_lattice && !r.is_semi_torus);
    }

    #[test]
    fn non_spanning_lattice() {
        let s = SemiTorusData::new(2, vec![vec![ExactComplex::from_int(1), ExactComplex::from_int(0)]]).unwrap();
        let r = check_semi_torus(&s).unwrap();
        assert!(r.is_lattice && !r.spans && !r.is_semi_torus);
    }
}
