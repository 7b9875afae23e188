//! Dense integer matrices with Smith normal form and unimodular inversion.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value;

use super::NumError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `u · a · v = s` with `s` diagonal, `s₁ | s₂ | …`, and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `s`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Product of the invariant factors.
    pub fn torsion_index(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, with `rows` rows.
    pub fn from_columns<T: Into<BigInt> + Clone>(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>, NumError> {
        if x.len() != self.cols {
            return Err(NumError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &x[j]).sum())
            .collect())
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, NumError> {
        if self.cols != rhs.rows {
            return Err(NumError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, NumError> {
        if !self.is_square() {
            return Err(NumError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Exact integer inverse of a matrix with determinant ±1.
    pub fn invert_unimodular(&self) -> Result<IntMatrix, NumError> {
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(NumError::NotUnimodular { det });
        }
        // For unimodular A the Smith form is the identity: U·A·V = I, so A⁻¹ = V·U.
        let snf = self.smith_normal_form();
        let inv = snf.v.checked_mul(&snf.u)?;
        debug_assert!(self.checked_mul(&inv)?.is_identity());
        Ok(inv)
    }

    /// Smith normal form with transformation matrices.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut s = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);

        for t in 0..m.min(n) {
            // pick the nonzero entry of least magnitude in the trailing block
            loop {
                let pivot = (t..m)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !s[(i, j)].is_zero())
                    .min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()));
                let Some((pi, pj)) = pivot else {
                    return Self::finish(u, s, v);
                };
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let mut dirty = false;
                for i in t + 1..m {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = s[(i, t)].div_floor(&s[(t, t)]);
                    s.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                    dirty |= !s[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = s[(t, j)].div_floor(&s[(t, t)]);
                    s.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                    dirty |= !s[(t, j)].is_zero();
                }
                if dirty {
                    continue;
                }
                // enforce divisibility of the rest of the block
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
                match bad {
                    Some((i, _)) => {
                        s.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if s[(t, t)].is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
        }
        Self::finish(u, s, v)
    }

    fn finish(u: IntMatrix, s: IntMatrix, v: IntMatrix) -> SmithForm {
        SmithForm { u, s, v }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let x = &self[(src, j)] * k;
            self[(dst, j)] += x;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let x = &self[(i, src)] * k;
            self[(i, dst)] += x;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = -&self[(r, j)];
            self[(r, j)] = x;
        }
    }

    /// Reads a JSON array of integer rows. Integers may be JSON numbers or decimal strings.
    pub fn from_json(v: &Value) -> Result<IntMatrix, NumError> {
        let rows = v
            .as_array()
            .ok_or_else(|| NumError::Parse("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| NumError::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(json_to_bigint)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != cols) {
            return Err(NumError::Parse("ragged matrix".into()));
        }
        Ok(IntMatrix::from_rows(&parsed))
    }
}

pub fn json_to_bigint(v: &Value) -> Result<BigInt, NumError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| NumError::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| NumError::Parse(format!("not an integer: {s:?}"))),
        other => Err(NumError::Parse(format!("not an integer: {other}"))),
    }
}

/// Integers that fit `i64` serialize as JSON numbers, larger ones as decimal strings.
pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(n) => Value::from(n),
        None => Value::String(x.to_string()),
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Serde adapter for a vector of big integers.
pub fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&JsonInt(x))?;
    }
    seq.end()
}

/// Serde adapter for a single big integer.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    JsonInt(x).serialize(s)
}

/// Serde adapter for a list of integer vectors.
pub fn serialize_bigint_rows<S: Serializer>(xs: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&JsonRow(x))?;
    }
    seq.end()
}

struct JsonRow<'a>(&'a [BigInt]);

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigints(self.0, s)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&JsonRow(&self.data[i * self.cols..(i + 1) * self.cols]))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        IntMatrix::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter reading a vector of big integers (numbers or decimal strings).
pub fn deserialize_bigints<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    use serde::Deserialize;
    Vec::<Value>::deserialize(d)?
        .iter()
        .map(|v| json_to_bigint(v).map_err(serde::de::Error::custom))
        .collect()
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
