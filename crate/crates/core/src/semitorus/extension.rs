//! Extensions `1 → (ℂ*)^d → A → T → 1` of a compact torus, compactified
//! fiberwise by a toric variety.

use serde::Serialize;
use serde_json::Value;

use super::{complex_vectors, radicand_of, reject_unknown, SemiTorusError};
use crate::exactnum::{real_rank, ExactComplex, QuadReal};
use crate::fan::{Fan, ProjectivityVerdict};
use crate::logtoric::{betti_numbers, strata_census, StrataCensus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionData {
    pub g: usize,
    pub d: usize,
    /// `2g` vectors in `ℂ^g` generating the lattice of `T`.
    pub periods: Vec<Vec<ExactComplex>>,
    /// Image in `(ℂ*)^d` of each period generator.
    pub rho: Vec<Vec<ExactComplex>>,
}

impl ExtensionData {
    pub fn new(g: usize, d: usize, periods: Vec<Vec<ExactComplex>>, rho: Vec<Vec<ExactComplex>>) -> Result<Self, SemiTorusError> {
        if periods.len() != 2 * g || rho.len() != 2 * g {
            return Err(SemiTorusError::Invalid(format!(
                "expected {} periods and transition values, found {} and {}",
                2 * g,
                periods.len(),
                rho.len()
            )));
        }
        if periods.iter().any(|p| p.len() != g) || rho.iter().any(|r| r.len() != d) {
            return Err(SemiTorusError::Invalid("period or transition vector of the wrong length".into()));
        }
        if g > 0 && real_rank(&periods)? != 2 * g {
            return Err(SemiTorusError::Invalid("periods do not span a lattice of full rank".into()));
        }
        if rho.iter().flatten().any(num_traits::Zero::is_zero) {
            return Err(SemiTorusError::Invalid("transition values must be nonzero".into()));
        }
        Ok(ExtensionData { g, d, periods, rho })
    }

    pub fn from_json(v: &Value) -> Result<Self, SemiTorusError> {
        reject_unknown(v, &["g", "d", "periods", "rho", "radicand"])?;
        let dim = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| SemiTorusError::Invalid(format!("missing `{k}`")))
        };
        let (g, d) = (dim("g")?, dim("d")?);
        let radicand = radicand_of(v)?;
        let empty = Value::Array(Vec::new());
        let periods = complex_vectors(v.get("periods").unwrap_or(&empty), g, radicand, "periods")?;
        let rho = complex_vectors(v.get("rho").unwrap_or(&empty), d, radicand, "rho")?;
        ExtensionData::new(g, d, periods, rho)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceDims {
    /// `(ℂ*)^d`
    pub kernel: usize,
    /// the acting group `G`
    pub group: usize,
    /// `Alb(X̄) = T`
    pub albanese: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub g: usize,
    pub d: usize,
    pub n: usize,
    pub fiber_betti: Vec<usize>,
    pub b1_fiber: usize,
    /// `b₁(T) + b₁(fiber)`.
    pub b1: usize,
    pub d_invariant: usize,
    pub d_invariant_matches_rank: bool,
    pub exact_sequence: ExactSequenceDims,
    pub compact: bool,
    pub boundary_empty: bool,
    /// A projective fiber fan gives a Kähler compactification. A
    /// non-projective fan leaves the question open.
    pub kaehler_sufficient: bool,
    pub fan_projectivity: Option<ProjectivityVerdict>,
    /// `|ρ(γ)_j|²` per period generator.
    pub modulus_vector: Vec<Vec<QuadReal>>,
    pub rho_unitary: bool,
    pub census: StrataCensus,
}

pub fn fiber_product_analyze(e: &ExtensionData, fan: &Fan) -> Result<ExtensionReport, SemiTorusError> {
    if fan.n() != e.d {
        return Err(SemiTorusError::PreconditionFailed(format!(
            "fan has dimension {} but the extension has rank {}",
            fan.n(),
            e.d
        )));
    }
    // checks validity, smoothness and completeness
    let betti = betti_numbers(fan)?;
    let fiber_betti: Vec<usize> = betti
        .iter()
        .map(|b| usize::try_from(b).expect("Betti numbers of small fans fit"))
        .collect();
    let b1_fiber = fiber_betti.get(1).copied().unwrap_or(0);
    let n = e.g + e.d;
    let b1 = 2 * e.g + b1_fiber;
    let d_invariant = n - b1 / 2;
    let fan_projectivity = if e.d == 0 {
        None
    } else {
        Some(fan.is_projective()?.verdict)
    };
    let modulus_vector: Vec<Vec<QuadReal>> = e
        .rho
        .iter()
        .map(|r| r.iter().map(ExactComplex::norm_sqr).collect())
        .collect();
    let rho_unitary = modulus_vector.iter().flatten().all(num_traits::One::is_one);
    Ok(ExtensionReport {
        g: e.g,
        d: e.d,
        n,
        b1_fiber,
        fiber_betti,
        b1,
        d_invariant,
        d_invariant_matches_rank: d_invariant == e.d,
        exact_sequence: ExactSequenceDims {
            kernel: e.d,
            group: n,
            albanese: e.g,
        },
        compact: e.d == 0,
        boundary_empty: e.d == 0,
        kaehler_sufficient: fan_projectivity.is_none_or(|v| v == ProjectivityVerdict::Feasible),
        fan_projectivity,
        modulus_vector,
        rho_unitary,
        census: strata_census(fan),
    })
}
