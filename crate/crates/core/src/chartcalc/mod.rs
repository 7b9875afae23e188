//! Vector fields and logarithmic one-forms on a single chart `ℂⁿ` whose
//! boundary is a union of coordinate hyperplanes `{z_i = 0}`.
//!
//! Coordinates are 0-based internally and named `z1 … zn` in text output;
//! JSON documents list divisor coordinates 1-based, matching those names.

pub mod field;
pub mod form;
pub mod laurent;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactnum::NumError;

pub use field::{vanishing_order, ChartVectorField, Frame, MonomialMap, Order};
pub use form::{ClosednessReport, LogOneForm, WedgeTerm};
pub use laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartCalcError {
    #[error("coefficient {index} is not divisible by z{}: not a section of the log tangent sheaf", index + 1)]
    NotLogarithmic { index: usize },
    #[error("monomial map is not unimodular (det {det})")]
    NonUnimodularMap { det: BigInt },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate z{} is not a divisor coordinate", index + 1)]
    NotDivisorIndex { index: usize },
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Num(#[from] NumError),
}
