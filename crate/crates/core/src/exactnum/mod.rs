//! Exact arithmetic: rationals, real quadratic fields, exact complex
//! numbers, integer matrices with Smith normal form, and elimination.

pub mod complex;
pub mod intmat;
pub mod linalg;
pub mod quad;
pub mod rational;

use num_bigint::BigInt;
use thiserror::Error;

pub use complex::ExactComplex;
pub use intmat::{IntMatrix, SmithForm};
pub use linalg::{complex_rank, rank, real_rank, FieldElem};
pub use quad::QuadReal;
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("radicand {0} is not a square-free integer >= 2")]
    BadRadicand(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
