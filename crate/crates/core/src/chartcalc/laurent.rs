//! Laurent polynomials with exact complex coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::Value;

use super::ChartCalcError;
use crate::exactnum::intmat::{bigint_to_json, json_to_bigint};
use crate::exactnum::{ExactComplex, IntMatrix, QuadReal};

/// Finite sum of `c·z^e` over integer exponent vectors `e`. Zero
/// coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<BigInt>, ExactComplex>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: ExactComplex) -> Self {
        Self::monomial(vec![BigInt::zero(); n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ExactComplex::one())
    }

    pub fn monomial(exponent: Vec<BigInt>, c: ExactComplex) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    /// `c·z^e` with machine-size exponents.
    pub fn term(exponent: &[i64], c: ExactComplex) -> Self {
        Self::monomial(exponent.iter().map(|&e| BigInt::from(e)).collect(), c)
    }

    /// The coordinate `z_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        Self::monomial(e, ExactComplex::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<BigInt>, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(Zero::is_zero))
    }

    fn add_term(&mut self, exponent: Vec<BigInt>, c: ExactComplex) {
        assert_eq!(exponent.len(), self.n, "exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = Self::zero(self.n);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: &[BigInt]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `z_i^k`.
    pub fn shift_var(&self, i: usize, k: i64) -> Self {
        let mut s = vec![BigInt::zero(); self.n];
        s[i] = BigInt::from(k);
        self.shift(&s)
    }

    /// Formal `∂/∂z_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i].is_zero() {
                continue;
            }
            let mut f = e.clone();
            let k = ExactComplex::from_rational(crate::exactnum::Rational::from_integer(e[i].clone()));
            f[i] -= 1;
            out.add_term(f, c * &k);
        }
        out
    }

    /// Least exponent of `z_i` over the terms; `None` for the zero polynomial.
    pub fn min_exponent(&self, i: usize) -> Option<BigInt> {
        self.terms.keys().map(|e| e[i].clone()).min()
    }

    /// Terms with `z_i`-exponent zero: the restriction to `z_i = 0` when no
    /// negative powers of `z_i` occur.
    pub fn restrict_zero(&self, i: usize) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i].is_zero())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `z_j = Π_k w_k^{A_jk}`: the term `z^e` becomes `w^{Aᵀe}`.
    pub fn substitute_monomial(&self, a: &IntMatrix) -> Self {
        assert_eq!(a.rows(), self.n);
        let m = a.cols();
        let at = a.transpose();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            out.add_term(at.mul_vec(e).expect("shape checked"), c.clone());
        }
        out
    }

    /// Radicand shared by the coefficients, 0 if all are in `ℚ(i)`.
    pub fn radicand(&self) -> u32 {
        self.terms.values().map(|c| c.radicand()).max().unwrap_or(0)
    }

    /// Reads a list of `[exponent, coefficient]` pairs.
    pub fn from_json(v: &Value, n: usize, radicand: u32) -> Result<Self, ChartCalcError> {
        let bad = |m: &str| ChartCalcError::Parse(format!("Laurent polynomial: {m}"));
        let items = v.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut p = Self::zero(n);
        for item in items {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [exponent, coefficient]"))?;
            let exps = pair[0].as_array().ok_or_else(|| bad("exponent must be a list"))?;
            if exps.len() != n {
                return Err(ChartCalcError::DimensionMismatch {
                    expected: n,
                    found: exps.len(),
                });
            }
            let e = exps
                .iter()
                .map(json_to_bigint)
                .collect::<Result<Vec<_>, _>>()?;
            let c = ExactComplex::from_json(&pair[1], radicand)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn pow_i64(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Integer power; negative powers only for monomials.
    pub fn pow(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            return Some(self.pow_i64(k as u32));
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv = LaurentPoly::monomial(e.iter().map(|x| -x).collect(), c.inv());
        Some(inv.pow_i64((-k) as u32))
    }
}

fn format_coeff(c: &ExactComplex) -> String {
    if c.im.is_zero() {
        format!("{}", c.re)
    } else if c.re.is_zero() {
        if c.im == QuadReal::one() {
            "i".into()
        } else {
            format!("({})i", c.im)
        }
    } else {
        format!("({} + ({})i)", c.re, c.im)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // print in descending order so the leading term comes first
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    if x.is_one() {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{}", i + 1, x)
                    }
                })
                .collect();
            let neg = c.im.is_zero() && c.re.signum() < 0;
            let mag = if neg { -c.clone() } else { c.clone() };
            let sep = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            if vars.is_empty() {
                write!(f, "{}", format_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_coeff(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Term<'a>(&'a [BigInt], &'a ExactComplex);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e: Vec<Value> = self.0.iter().map(bigint_to_json).collect();
        (e, self.1).serialize(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = LaurentPoly::zero(self.n);
        for (e, a) in &self.terms {
            for (f, b) in &rhs.terms {
                out.add_term(e.iter().zip(f).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

crate::exactnum::quad::owned_binops!(LaurentPoly; Add add, Sub sub, Mul mul);

/// Small exponents as machine integers, for display and tests.
pub fn exponent_i64(e: &[BigInt]) -> Option<Vec<i64>> {
    e.iter().map(|x| x.to_i64()).collect()
}
