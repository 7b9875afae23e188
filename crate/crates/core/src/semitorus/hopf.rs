//! Diagonal Hopf surfaces `(ℂ²∖{0})/⟨(z₁,z₂) ↦ (αz₁, βz₂)⟩` as
//! compactifications of `T = (ℂ*)²/⟨(α,β)⟩`.

use serde::Serialize;
use serde_json::Value;

use super::{radicand_of, reject_unknown, SemiTorusError};
use crate::exactnum::{ExactComplex, QuadReal};

/// Topological input not derived from the datum: the surface is
/// diffeomorphic to `S¹×S³`, so `b₁ = 1`.
pub const AXIOM_HOPF_TOPOLOGY: &str = "axiom: hopf-surface-diffeomorphic-to-S1xS3";
/// The implication from semi-torus isotropy to a trivial log tangent
/// bundle does not use a Kähler hypothesis.
pub const AXIOM_REVERSE_IMPLICATION: &str = "axiom: reverse-implication-without-kaehler";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfDatum {
    pub alpha: ExactComplex,
    pub beta: ExactComplex,
}

impl HopfDatum {
    pub fn from_json(v: &Value) -> Result<Self, SemiTorusError> {
        reject_unknown(v, &["alpha", "beta", "radicand"])?;
        let r = radicand_of(v)?;
        let get = |k: &str| -> Result<ExactComplex, SemiTorusError> {
            let x = v
                .get(k)
                .ok_or_else(|| SemiTorusError::Invalid(format!("missing `{k}`")))?;
            Ok(ExactComplex::from_json(x, r)?)
        };
        Ok(HopfDatum {
            alpha: get("alpha")?,
            beta: get("beta")?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulusCertificate {
    pub which: &'static str,
    pub modulus_squared: QuadReal,
    /// `|·|² > 1`, so the generated group is discrete and acts freely
    /// and properly.
    pub exceeds_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfOrbit {
    /// 1-based coordinates vanishing on the orbit.
    pub vanishing: Vec<usize>,
    pub dimension: usize,
    /// Connected isotropy `(ℂ*)^k`, modulo the cyclic group.
    pub isotropy_dim: usize,
    pub isotropy_type: String,
    pub isotropy_is_semi_torus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub datum: HopfDatum,
    pub moduli: [ModulusCertificate; 2],
    pub group: String,
    /// `T = ℂ²/Γ` with `Γ = ⟨2πi·e₁, 2πi·e₂, (log α, log β)⟩`: the first two
    /// already span `ℂ²`, and `Re log α = log|α| ≠ 0` makes the third
    /// `ℝ`-independent of them.
    pub semi_torus_well_defined: bool,
    pub orbit_count: usize,
    pub orbits: Vec<HopfOrbit>,
    pub isotropy_dims: Vec<usize>,
    pub b1: Tagged<usize>,
    pub kaehler: Tagged<bool>,
    pub isotropy_condition_holds: bool,
    pub log_tangent_trivial: Tagged<bool>,
    /// Global frame of `T(−log D)`; both fields commute with the diagonal
    /// action and so descend.
    pub frame: Vec<String>,
}

fn modulus(which: &'static str, c: &ExactComplex) -> ModulusCertificate {
    let m = c.norm_sqr();
    ModulusCertificate {
        which,
        exceeds_one: m > QuadReal::from_int(1),
        modulus_squared: m,
    }
}

pub fn hopf_analyze(h: &HopfDatum) -> Result<HopfReport, SemiTorusError> {
    let moduli = [modulus("alpha", &h.alpha), modulus("beta", &h.beta)];
    if let Some(bad) = moduli.iter().find(|m| !m.exceeds_one) {
        return Err(SemiTorusError::NotHopf {
            which: bad.which,
            modulus: bad.modulus_squared.to_string(),
        });
    }
    // Orbits of (ℂ*)² on ℂ²∖{0} are indexed by the proper subsets of
    // coordinates that vanish. At a point with vanishing set S, (t₁,t₂)
    // fixes the class iff t_j ∈ {α^k, β^k}_j for j ∉ S with a common k, and
    // t_i is free for i ∈ S. Modulo ⟨(α,β)⟩ that is (ℂ*)^|S|.
    let orbits: Vec<HopfOrbit> = [vec![], vec![1], vec![2]]
        .into_iter()
        .map(|s: Vec<usize>| {
            let k = s.len();
            HopfOrbit {
                dimension: 2 - k,
                isotropy_dim: k,
                isotropy_type: match k {
                    0 => "trivial".into(),
                    1 => "C*".into(),
                    _ => format!("(C*)^{k}"),
                },
                isotropy_is_semi_torus: true,
                vanishing: s,
            }
        })
        .collect();
    let b1 = 1;
    let condition = orbits.iter().all(|o| o.isotropy_is_semi_torus);
    Ok(HopfReport {
        datum: h.clone(),
        moduli,
        group: "(C*)^2/<(alpha, beta)>".into(),
        semi_torus_well_defined: true,
        orbit_count: orbits.len(),
        isotropy_dims: orbits.iter().map(|o| o.isotropy_dim).collect(),
        orbits,
        b1: Tagged {
            value: b1,
            source: AXIOM_HOPF_TOPOLOGY,
        },
        kaehler: Tagged {
            value: b1 % 2 == 0,
            source: "computed: odd b1",
        },
        isotropy_condition_holds: condition,
        log_tangent_trivial: Tagged {
            value: condition,
            source: AXIOM_REVERSE_IMPLICATION,
        },
        frame: vec!["z1∂/∂z1".into(), "z2∂/∂z2".into()],
    })
}
