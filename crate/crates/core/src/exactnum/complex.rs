//! Exact complex numbers `re + i·im` over `ℚ(√d)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeTuple, Serializer};
use serde_json::Value;

use super::quad::{owned_binops, QuadReal};
use super::rational::Rational;
use super::NumError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: QuadReal,
    pub im: QuadReal,
}

impl ExactComplex {
    pub fn new(re: QuadReal, im: QuadReal) -> Self {
        Self { re, im }
    }

    pub fn real(re: QuadReal) -> Self {
        Self::new(re, QuadReal::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::real(QuadReal::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(QuadReal::from_int(n))
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::new(QuadReal::from_rational(re), QuadReal::from_rational(im))
    }

    pub fn i() -> Self {
        Self::new(QuadReal::zero(), QuadReal::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`, exact.
    pub fn norm_sqr(&self) -> QuadReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr().inv();
        Self::new(&self.re * &n, -(&self.im * &n))
    }

    /// Gaussian rational, i.e. both parts in `ℚ`.
    pub fn is_gaussian_rational(&self) -> bool {
        self.re.is_rational() && self.im.is_rational()
    }

    pub fn radicand(&self) -> u32 {
        self.re.radicand().max(self.im.radicand())
    }

    /// Reads the pair form `[re, im]`; a bare scalar is read as a real number.
    pub fn from_json(v: &Value, radicand: u32) -> Result<Self, NumError> {
        match v {
            Value::Array(parts) if parts.len() == 2 => Ok(Self::new(
                QuadReal::from_json(&parts[0], radicand)?,
                QuadReal::from_json(&parts[1], radicand)?,
            )),
            Value::String(_) => Ok(Self::real(QuadReal::from_json(v, radicand)?)),
            other => Err(NumError::Parse(format!("expected complex pair [re, im], got {other}"))),
        }
    }

    /// Command-line form: `re` or `re,im`, each part as in [`QuadReal::parse_cli`].
    pub fn parse_cli(s: &str, radicand: u32) -> Result<Self, NumError> {
        match s.split_once(',') {
            Some((re, im)) => Ok(Self::new(
                QuadReal::parse_cli(re, radicand)?,
                QuadReal::parse_cli(im, radicand)?,
            )),
            None => Ok(Self::real(QuadReal::parse_cli(s, radicand)?)),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        self * &rhs.inv()
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -self.clone()
    }
}

owned_binops!(ExactComplex; Add add, Sub sub, Mul mul, Div div);

impl Zero for ExactComplex {
    fn zero() -> Self {
        Self::real(QuadReal::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplex {
    fn one() -> Self {
        Self::real(QuadReal::one())
    }
}

impl From<Rational> for ExactComplex {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.re)?;
        t.serialize_element(&self.im)?;
        t.end()
    }
}
