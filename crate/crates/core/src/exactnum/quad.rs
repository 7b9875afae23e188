//! Elements `a + b·√d` of a real quadratic field, with `a`, `b` rational.
//!
//! An element with `b = 0` is a plain rational and carries radicand `0`.
//! Combining two irrational elements over different radicands panics: a
//! computation lives in one configured field `ℚ(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value;

use super::rational::{format_rational, parse_rational, signum, Rational};
use super::NumError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    d: u32,
}

pub fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= d as u64 {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn join_radicands(d1: u32, d2: u32) -> u32 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic extensions: sqrt({x}) and sqrt({y})"),
    }
}

impl QuadReal {
    /// `a + b·√d`. `d` must be square-free and at least 2 unless `b = 0`.
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self, NumError> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if !is_squarefree(d) {
            return Err(NumError::BadRadicand(d));
        }
        Ok(Self { a, b, d })
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn sqrt(d: u32) -> Result<Self, NumError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    fn normalized(a: Rational, b: Rational, d: u32) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand of the field this element needs; 0 for rationals.
    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a − b·√d`.
    pub fn conj(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - d * &self.b * &self.b
    }

    /// Exact sign of the real number `a + b·√d`.
    pub fn signum(&self) -> i32 {
        let sa = signum(&self.a);
        let sb = signum(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        match signum(&self.norm()) {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        let c = self.conj();
        Self::normalized(&c.a / &n, &c.b / &n, self.d)
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√{}", self.a, self.b, self.d)
        }
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<Rational> for QuadReal {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        let d = join_radicands(self.d, rhs.d);
        QuadReal::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        let d = join_radicands(self.d, rhs.d);
        QuadReal::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        let d = join_radicands(self.d, rhs.d);
        let dq = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dq * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadReal::normalized(a, b, d)
    }
}

impl<'a> Div<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn div(self, rhs: &QuadReal) -> QuadReal {
        self * &rhs.inv()
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::normalized(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -self.clone()
    }
}

macro_rules! owned_binops {
    ($t:ty; $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use owned_binops;

owned_binops!(QuadReal; Add add, Sub sub, Mul mul, Div div);

impl Zero for QuadReal {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadReal {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Serialize for QuadReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_rational() {
            s.serialize_str(&format_rational(&self.a))
        } else {
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(&format_rational(&self.a))?;
            seq.serialize_element(&format_rational(&self.b))?;
            seq.end()
        }
    }
}

impl QuadReal {
    /// Reads `"p/q"` or `["p/q", "r/s"]` (the latter meaning `p/q + r/s·√radicand`).
    pub fn from_json(v: &Value, radicand: u32) -> Result<Self, NumError> {
        match v {
            Value::String(s) => Ok(Self::from_rational(parse_rational(s)?)),
            Value::Array(parts) if parts.len() == 2 => {
                let get = |p: &Value| match p {
                    Value::String(s) => parse_rational(s),
                    other => Err(NumError::Parse(format!("expected \"p/q\" string, got {other}"))),
                };
                Self::new(get(&parts[0])?, get(&parts[1])?, radicand)
            }
            other => Err(NumError::Parse(format!(
                "expected \"p/q\" or [\"p/q\",\"r/s\"], got {other}"
            ))),
        }
    }

    /// Command-line form: `p/q` or `p/q:r/s` for `p/q + r/s·√radicand`.
    pub fn parse_cli(s: &str, radicand: u32) -> Result<Self, NumError> {
        match s.split_once(':') {
            Some((a, b)) => Self::new(parse_rational(a)?, parse_rational(b)?, radicand),
            None => Ok(Self::from_rational(parse_rational(s)?)),
        }
    }
}
