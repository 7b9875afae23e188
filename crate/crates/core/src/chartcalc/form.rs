//! Logarithmic one-forms `Σ f_i dz_i/z_i + Σ g_i dz_i`.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::field::{divisor_one_based, document_radicand, parse_divisor};
use super::{ChartCalcError, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogOneForm {
    /// `f_i`, the coefficient of `dz_i/z_i`; zero off the divisor.
    pub log_parts: Vec<LaurentPoly>,
    /// `g_i`, the coefficient of `dz_i`.
    pub regular_parts: Vec<LaurentPoly>,
    pub divisor: BTreeSet<usize>,
}

impl LogOneForm {
    /// Checks the shape and that no coefficient has a pole along the
    /// divisor beyond the one carried by `dz_i/z_i`.
    pub fn new(log_parts: Vec<LaurentPoly>, regular_parts: Vec<LaurentPoly>, divisor: BTreeSet<usize>) -> Result<Self, ChartCalcError> {
        let n = log_parts.len();
        if regular_parts.len() != n {
            return Err(ChartCalcError::DimensionMismatch {
                expected: n,
                found: regular_parts.len(),
            });
        }
        if let Some(p) = log_parts.iter().chain(&regular_parts).find(|p| p.n() != n) {
            return Err(ChartCalcError::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        if let Some(&i) = divisor.iter().find(|&&i| i >= n) {
            return Err(ChartCalcError::NotDivisorIndex { index: i });
        }
        for (i, f) in log_parts.iter().enumerate() {
            if !divisor.contains(&i) && !f.is_zero() {
                return Err(ChartCalcError::InvalidForm(format!(
                    "dz{0}/z{0} term off the divisor",
                    i + 1
                )));
            }
        }
        for &d in &divisor {
            for p in log_parts.iter().chain(&regular_parts) {
                if p.min_exponent(d).is_some_and(|e| e.is_negative()) {
                    return Err(ChartCalcError::InvalidForm(format!(
                        "coefficient {p} has a pole along z{} = 0",
                        d + 1
                    )));
                }
            }
        }
        Ok(LogOneForm {
            log_parts,
            regular_parts,
            divisor,
        })
    }

    /// `Σ c_i dz_i/z_i` over the divisor plus `Σ c_j dz_j` off it, with
    /// constant coefficients.
    pub fn invariant(coeffs: &[crate::exactnum::ExactComplex], divisor: BTreeSet<usize>) -> Result<Self, ChartCalcError> {
        let n = coeffs.len();
        let mut log_parts = vec![LaurentPoly::zero(n); n];
        let mut regular_parts = vec![LaurentPoly::zero(n); n];
        for (i, c) in coeffs.iter().enumerate() {
            let p = LaurentPoly::constant(n, c.clone());
            if divisor.contains(&i) {
                log_parts[i] = p;
            } else {
                regular_parts[i] = p;
            }
        }
        LogOneForm::new(log_parts, regular_parts, divisor)
    }

    pub fn n(&self) -> usize {
        self.log_parts.len()
    }

    /// Coefficient of `dz_i`: `f_i/z_i + g_i`.
    fn plain_coefficient(&self, i: usize) -> LaurentPoly {
        &self.log_parts[i].shift_var(i, -1) + &self.regular_parts[i]
    }

    fn basis_label(&self, i: usize) -> String {
        if self.divisor.contains(&i) {
            format!("dz{0}/z{0}", i + 1)
        } else {
            format!("dz{}", i + 1)
        }
    }

    /// Reads `{"divisor", "log_parts", "regular_parts", "radicand"?}`;
    /// a missing part list means zero.
    pub fn from_json(v: &Value) -> Result<Self, ChartCalcError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ChartCalcError::Parse("form must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "n" | "divisor" | "log_parts" | "regular_parts" | "radicand") {
                return Err(ChartCalcError::Parse(format!("unknown field `{key}`")));
            }
        }
        let radicand = document_radicand(v)?;
        let list = |k: &str| obj.get(k).and_then(Value::as_array);
        let n = match obj.get("n").and_then(Value::as_u64) {
            Some(n) => n as usize,
            None => list("log_parts")
                .or(list("regular_parts"))
                .map(|a| a.len())
                .ok_or_else(|| ChartCalcError::Parse("cannot determine the number of variables".into()))?,
        };
        let parts = |k: &str| -> Result<Vec<LaurentPoly>, ChartCalcError> {
            match obj.get(k) {
                None => Ok(vec![LaurentPoly::zero(n); n]),
                Some(a) => {
                    let a = a
                        .as_array()
                        .ok_or_else(|| ChartCalcError::Parse(format!("{k} must be a list")))?;
                    if a.len() != n {
                        return Err(ChartCalcError::DimensionMismatch {
                            expected: n,
                            found: a.len(),
                        });
                    }
                    a.iter().map(|p| LaurentPoly::from_json(p, n, radicand)).collect()
                }
            }
        };
        let divisor = parse_divisor(obj.get("divisor"), n)?;
        LogOneForm::new(parts("log_parts")?, parts("regular_parts")?, divisor)
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.n() {
            if !self.log_parts[i].is_zero() {
                parts.push(format!("({})·dz{}/z{}", self.log_parts[i], i + 1, i + 1));
            }
            if !self.regular_parts[i].is_zero() {
                parts.push(format!("({})·dz{}", self.regular_parts[i], i + 1));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Serialize for LogOneForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("n", &self.n())?;
        m.serialize_entry("divisor", &divisor_one_based(&self.divisor))?;
        m.serialize_entry("log_parts", &self.log_parts)?;
        m.serialize_entry("regular_parts", &self.regular_parts)?;
        let r = self
            .log_parts
            .iter()
            .chain(&self.regular_parts)
            .map(LaurentPoly::radicand)
            .max()
            .unwrap_or(0);
        if r > 0 {
            m.serialize_entry("radicand", &r)?;
        }
        m.end()
    }
}

/// One nonzero coefficient of `dω` against `e_i ∧ e_j`, where `e_i` is
/// `dz_i/z_i` on the divisor and `dz_i` off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeTerm {
    /// 1-based coordinate indices, `i < j`.
    pub i: usize,
    pub j: usize,
    pub basis: String,
    pub coefficient: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosednessReport {
    pub closed: bool,
    pub obstruction: Vec<WedgeTerm>,
}

/// Computes `dω`. With `ω = Σ h_i dz_i`, the `dz_i∧dz_j` coefficient is
/// `∂_i h_j − ∂_j h_i`; it is then rescaled to the log wedge basis.
pub fn d_closed(w: &LogOneForm) -> ClosednessReport {
    let n = w.n();
    let h: Vec<LaurentPoly> = (0..n).map(|i| w.plain_coefficient(i)).collect();
    let mut obstruction = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut c = &h[j].derivative(i) - &h[i].derivative(j);
            if c.is_zero() {
                continue;
            }
            if w.divisor.contains(&i) {
                c = c.shift_var(i, 1);
            }
            if w.divisor.contains(&j) {
                c = c.shift_var(j, 1);
            }
            obstruction.push(WedgeTerm {
                i: i + 1,
                j: j + 1,
                basis: format!("{}^{}", w.basis_label(i), w.basis_label(j)),
                coefficient: c,
            });
        }
    }
    ClosednessReport {
        closed: obstruction.is_empty(),
        obstruction,
    }
}

/// Residue along `{z_i = 0}` in units of `2πi`: `f_i` restricted to the
/// divisor, as a polynomial in the remaining variables.
pub fn residue(w: &LogOneForm, i: usize) -> Result<LaurentPoly, ChartCalcError> {
    if !w.divisor.contains(&i) {
        return Err(ChartCalcError::NotDivisorIndex { index: i });
    }
    Ok(w.log_parts[i].restrict_zero(i))
}
