//! Closure of `t ↦ (e^{at}, e^{bt})` in `(ℂ*)²`.
//!
//! Write `(ℂ*)² = ℂ²/Γ` with `Γ = 2πi·ℤ²`; the factor `2πi` is a common
//! scale and is dropped throughout. The subgroup is the image of the line
//! `H = ℂ·(a,b)`, and it is closed iff `H + Γ` is closed, iff the image of
//! `Γ` under `ℓ(z) = b·z₁ − a·z₂` (which kills `H`) is discrete in `ℂ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SemiTorusError;
use crate::exactnum::{real_rank, ExactComplex, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureVerdict {
    Closed,
    DenseInPositiveDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Quotient {
    /// `ℂ/(ℤω₁ + ℤω₂)`.
    CompactTorus { lattice: [ExactComplex; 2] },
    /// `ℂ/ℤω ≅ ℂ*`.
    CStarType { generator: ExactComplex },
    /// The subgroup is not closed, so the quotient is not Hausdorff.
    NotHausdorff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClosureReport {
    pub direction: [ExactComplex; 2],
    /// `ℓ(e₁), ℓ(e₂)`: generators of the image of `Γ` in `ℂ²/H`.
    pub projections: [ExactComplex; 2],
    pub projected_real_rank: usize,
    /// `ℓ(e₁)/ℓ(e₂)` (or its inverse) when the projections are `ℝ`-dependent.
    pub real_ratio: Option<ExactComplex>,
    pub verdict: ClosureVerdict,
    pub quotient: Quotient,
    /// Primitive generator of `Γ ∩ H`, when nonzero.
    #[serde(serialize_with = "serialize_opt_pair")]
    pub lattice_in_line: Option<[BigInt; 2]>,
    pub subgroup_is_semi_torus: bool,
}

fn serialize_opt_pair<S: serde::Serializer>(v: &Option<[BigInt; 2]>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(p) => crate::exactnum::intmat::serialize_bigints(p, s),
    }
}

fn rational_of(c: &ExactComplex) -> Option<Rational> {
    if c.im.is_zero() {
        c.re.as_rational().cloned()
    } else {
        None
    }
}

/// Primitive integer vector on the real line through `(a, b)`, if any.
fn lattice_direction(a: &ExactComplex, b: &ExactComplex) -> Option<[BigInt; 2]> {
    if a.is_zero() {
        return Some([BigInt::zero(), BigInt::one()]);
    }
    if b.is_zero() {
        return Some([BigInt::one(), BigInt::zero()]);
    }
    let r = rational_of(&(b / a))?;
    Some([r.denom().clone(), r.numer().clone()])
}

pub fn one_parameter_closure(a: &ExactComplex, b: &ExactComplex) -> Result<SubgroupClosureReport, SemiTorusError> {
    if a.is_zero() && b.is_zero() {
        return Err(SemiTorusError::ZeroDirection);
    }
    let p1 = b.clone();
    let p2 = -a;
    let rr = real_rank(&[vec![p1.clone()], vec![p2.clone()]])?;
    let (verdict, quotient, real_ratio) = if rr == 2 {
        (
            ClosureVerdict::Closed,
            Quotient::CompactTorus {
                lattice: [p1.clone(), p2.clone()],
            },
            None,
        )
    } else if p1.is_zero() || p2.is_zero() {
        let g = if p1.is_zero() { p2.clone() } else { p1.clone() };
        (ClosureVerdict::Closed, Quotient::CStarType { generator: g }, None)
    } else {
        let ratio = &p1 / &p2;
        match rational_of(&ratio) {
            Some(r) => {
                // ℤp₁ + ℤp₂ = ℤ·p₂/q for p₁/p₂ = p/q in lowest terms
                let q = ExactComplex::from_rational(Rational::from_integer(r.denom().clone()));
                debug_assert!(r.numer().gcd(r.denom()).is_one() && r.denom().is_positive());
                (
                    ClosureVerdict::Closed,
                    Quotient::CStarType { generator: &p2 / &q },
                    Some(ratio),
                )
            }
            None => (ClosureVerdict::DenseInPositiveDim, Quotient::NotHausdorff, Some(ratio)),
        }
    };
    let lattice_in_line = lattice_direction(a, b);
    Ok(SubgroupClosureReport {
        direction: [a.clone(), b.clone()],
        projections: [p1, p2],
        projected_real_rank: rr,
        real_ratio,
        verdict,
        quotient,
        subgroup_is_semi_torus: lattice_in_line.is_some(),
        lattice_in_line,
    })
}
