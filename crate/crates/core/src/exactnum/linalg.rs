//! Gaussian elimination over exact fields, and the real/complex rank tests
//! used for lattice and span questions.

use std::ops::{Div, Mul, Sub};

use num_traits::{One, Zero};

use super::complex::ExactComplex;
use super::quad::QuadReal;
use super::NumError;

/// An exact field element usable by the generic elimination routines.
pub trait FieldElem:
    Clone + PartialEq + Zero + One + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> FieldElem for T where
    T: Clone + PartialEq + Zero + One + Sub<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

/// Reduces `rows` to row echelon form in place and returns the pivot columns.
pub fn row_echelon<F: FieldElem>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let k = rows[i][c].clone();
            for j in c..ncols {
                let v = rows[i][j].clone() - k.clone() * rows[r][j].clone();
                rows[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElem>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Solves the square system `a · x = b`; `None` when `a` is singular.
pub fn solve_square<F: FieldElem>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

fn check_lengths(vectors: &[Vec<ExactComplex>]) -> Result<usize, NumError> {
    let n = vectors.first().map_or(0, Vec::len);
    for v in vectors {
        if v.len() != n {
            return Err(NumError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(n)
}

/// Rank over ℝ of complex n-vectors viewed as real 2n-vectors.
///
/// Elimination runs in the real field `ℚ(√d)` containing every entry, so the
/// answer is the rank over ℝ.
pub fn real_rank(vectors: &[Vec<ExactComplex>]) -> Result<usize, NumError> {
    check_lengths(vectors)?;
    let rows: Vec<Vec<QuadReal>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .flat_map(|z| [z.re.clone(), z.im.clone()])
                .collect()
        })
        .collect();
    Ok(rank(&rows))
}

/// Rank over ℂ of complex n-vectors.
pub fn complex_rank(vectors: &[Vec<ExactComplex>]) -> Result<usize, NumError> {
    check_lengths(vectors)?;
    Ok(rank(vectors))
}
