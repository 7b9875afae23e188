//! Vector fields in the ordinary and logarithmic frames, and their
//! transport through monomial chart changes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::{ChartCalcError, LaurentPoly};
use crate::exactnum::intmat::bigint_to_json;
use crate::exactnum::{ExactComplex, IntMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Coefficients of `∂/∂z_i`.
    Ordinary,
    /// Coefficients of `z_i∂/∂z_i` for divisor coordinates and of `∂/∂z_i`
    /// for the others.
    Log,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartVectorField {
    pub frame: Frame,
    pub coefficients: Vec<LaurentPoly>,
    pub divisor: BTreeSet<usize>,
}

impl ChartVectorField {
    pub fn new(frame: Frame, coefficients: Vec<LaurentPoly>, divisor: BTreeSet<usize>) -> Result<Self, ChartCalcError> {
        let n = coefficients.len();
        if let Some(c) = coefficients.iter().find(|c| c.n() != n) {
            return Err(ChartCalcError::DimensionMismatch {
                expected: n,
                found: c.n(),
            });
        }
        if let Some(&i) = divisor.iter().find(|&&i| i >= n) {
            return Err(ChartCalcError::NotDivisorIndex { index: i });
        }
        Ok(ChartVectorField {
            frame,
            coefficients,
            divisor,
        })
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(LaurentPoly::is_zero)
    }

    /// Divides the divisor coefficients by `z_i`. Requires each of them to
    /// have every `z_i`-exponent at least 1.
    pub fn to_log_frame(&self) -> Result<ChartVectorField, ChartCalcError> {
        if self.frame == Frame::Log {
            return Ok(self.clone());
        }
        let mut out = self.coefficients.clone();
        for &i in &self.divisor {
            match self.coefficients[i].min_exponent(i) {
                Some(e) if e < BigInt::one() => return Err(ChartCalcError::NotLogarithmic { index: i }),
                _ => out[i] = self.coefficients[i].shift_var(i, -1),
            }
        }
        Ok(ChartVectorField {
            frame: Frame::Log,
            coefficients: out,
            divisor: self.divisor.clone(),
        })
    }

    pub fn from_log_frame(&self) -> ChartVectorField {
        if self.frame == Frame::Ordinary {
            return self.clone();
        }
        let mut out = self.coefficients.clone();
        for &i in &self.divisor {
            out[i] = self.coefficients[i].shift_var(i, 1);
        }
        ChartVectorField {
            frame: Frame::Ordinary,
            coefficients: out,
            divisor: self.divisor.clone(),
        }
    }

    pub fn in_frame(&self, frame: Frame) -> Result<ChartVectorField, ChartCalcError> {
        match frame {
            Frame::Log => self.to_log_frame(),
            Frame::Ordinary => Ok(self.from_log_frame()),
        }
    }

    /// Coefficients against `z_i∂/∂z_i` for every `i`.
    pub fn torus_coefficients(&self) -> Vec<LaurentPoly> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.frame == Frame::Log && self.divisor.contains(&i) {
                    c.clone()
                } else {
                    c.shift_var(i, -1)
                }
            })
            .collect()
    }

    /// Inverse of [`torus_coefficients`](Self::torus_coefficients).
    pub fn from_torus_coefficients(t: Vec<LaurentPoly>, frame: Frame, divisor: BTreeSet<usize>) -> Result<Self, ChartCalcError> {
        let coefficients = t
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if frame == Frame::Log && divisor.contains(&i) {
                    c
                } else {
                    c.shift_var(i, 1)
                }
            })
            .collect();
        ChartVectorField::new(frame, coefficients, divisor)
    }

    /// Reads `{"frame", "divisor" (1-based), "coefficients", "radicand"?}`.
    pub fn from_json(v: &Value) -> Result<Self, ChartCalcError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ChartCalcError::Parse("vector field must be an object".into()))?;
        let radicand = document_radicand(v)?;
        let frame: Frame = serde_json::from_value(obj.get("frame").cloned().unwrap_or(Value::Null))
            .map_err(|e| ChartCalcError::Parse(format!("frame: {e}")))?;
        let coeffs = obj
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| ChartCalcError::Parse("missing coefficients".into()))?;
        let n = coeffs.len();
        let coefficients = coeffs
            .iter()
            .map(|c| LaurentPoly::from_json(c, n, radicand))
            .collect::<Result<Vec<_>, _>>()?;
        let divisor = parse_divisor(obj.get("divisor"), n)?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "frame" | "coefficients" | "divisor" | "radicand") {
                return Err(ChartCalcError::Parse(format!("unknown field `{key}`")));
            }
        }
        ChartVectorField::new(frame, coefficients, divisor)
    }

    /// Human-readable sum of coefficient times frame vector.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let basis = if self.frame == Frame::Log && self.divisor.contains(&i) {
                    format!("z{0}∂/∂z{0}", i + 1)
                } else {
                    format!("∂/∂z{}", i + 1)
                };
                format!("({c})·{basis}")
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn document_radicand(v: &Value) -> Result<u32, ChartCalcError> {
    match v.get("radicand") {
        None => Ok(2),
        Some(r) => r
            .as_u64()
            .and_then(|r| u32::try_from(r).ok())
            .ok_or_else(|| ChartCalcError::Parse("radicand must be a small positive integer".into())),
    }
}

pub(crate) fn parse_divisor(v: Option<&Value>, n: usize) -> Result<BTreeSet<usize>, ChartCalcError> {
    let Some(v) = v else {
        return Ok(BTreeSet::new());
    };
    let items = v
        .as_array()
        .ok_or_else(|| ChartCalcError::Parse("divisor must be a list of coordinates".into()))?;
    items
        .iter()
        .map(|x| match x.as_u64() {
            Some(i) if i >= 1 && (i as usize) <= n => Ok(i as usize - 1),
            _ => Err(ChartCalcError::Parse(format!("divisor coordinate {x} outside 1..={n}"))),
        })
        .collect()
}

pub(crate) fn divisor_one_based(d: &BTreeSet<usize>) -> Vec<usize> {
    d.iter().map(|i| i + 1).collect()
}

impl Serialize for ChartVectorField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("frame", &self.frame)?;
        m.serialize_entry("divisor", &divisor_one_based(&self.divisor))?;
        m.serialize_entry("coefficients", &self.coefficients)?;
        let r = self.coefficients.iter().map(LaurentPoly::radicand).max().unwrap_or(0);
        if r > 0 {
            m.serialize_entry("radicand", &r)?;
        }
        m.end()
    }
}

/// The chart change `z_j = Π_k w_k^{A_jk}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    a: IntMatrix,
}

impl MonomialMap {
    pub fn new(a: IntMatrix) -> Result<Self, ChartCalcError> {
        if !a.is_square() {
            return Err(ChartCalcError::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let det = a.det()?;
        if det != BigInt::one() && det != -BigInt::one() {
            return Err(ChartCalcError::NonUnimodularMap { det });
        }
        Ok(MonomialMap { a })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap { a: IntMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Map of the composite change: first `self` (`z` in terms of `w`),
    /// then `inner` (`w` in terms of `u`). Exponent matrix `A_self · A_inner`.
    pub fn then(&self, inner: &MonomialMap) -> MonomialMap {
        MonomialMap { a: &self.a * &inner.a }
    }

    pub fn from_json(v: &Value) -> Result<Self, ChartCalcError> {
        let m = v.get("matrix").unwrap_or(v);
        MonomialMap::new(IntMatrix::from_json(m)?)
    }
}

/// Rewrites `v` in the coordinates `w` of the chart change `φ`, with the
/// divisor of the new chart given by `target` (defaults to `v`'s own).
///
/// Torus coefficients transform by `t′(w) = A⁻¹·t(φ(w))`, since
/// `w_k∂/∂w_k = Σ_j A_jk z_j∂/∂z_j`. The output uses `v`'s frame.
pub fn pushforward(
    v: &ChartVectorField,
    phi: &MonomialMap,
    target: Option<&BTreeSet<usize>>,
) -> Result<ChartVectorField, ChartCalcError> {
    let n = v.n();
    if phi.n() != n {
        return Err(ChartCalcError::DimensionMismatch {
            expected: n,
            found: phi.n(),
        });
    }
    let a_inv = phi.a.invert_unimodular()?;
    let t: Vec<LaurentPoly> = v
        .torus_coefficients()
        .iter()
        .map(|c| c.substitute_monomial(&phi.a))
        .collect();
    let moved: Vec<LaurentPoly> = (0..n)
        .map(|k| {
            (0..n).fold(LaurentPoly::zero(n), |acc, j| {
                let coeff = &a_inv[(k, j)];
                if coeff.is_zero() {
                    acc
                } else {
                    let s = ExactComplex::from_rational(Rational::from_integer(coeff.clone()));
                    &acc + &t[j].scale(&s)
                }
            })
        })
        .collect();
    let divisor = target.cloned().unwrap_or_else(|| v.divisor.clone());
    ChartVectorField::from_torus_coefficients(moved, v.frame, divisor)
}

/// Order of vanishing along `{z_i = 0}`; the zero field vanishes to all orders.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => bigint_to_json(k).serialize(s),
            Order::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Least `z_i`-exponent over all coefficients of `v` written in `frame`.
pub fn vanishing_order(v: &ChartVectorField, i: usize, frame: Frame) -> Result<Order, ChartCalcError> {
    if !v.divisor.contains(&i) {
        return Err(ChartCalcError::NotDivisorIndex { index: i });
    }
    let w = v.in_frame(frame)?;
    Ok(w
        .coefficients
        .iter()
        .filter_map(|c| c.min_exponent(i))
        .min()
        .map_or(Order::Infinite, Order::Finite))
}
