//! Exact decision procedures for triviality of the logarithmic tangent
//! bundle `T(−log D)` of toric and semi-torus compactifications.
//!
//! Everything is computed with exact integers, rationals and quadratic
//! field elements; no floating point enters a decision.

pub mod chartcalc;
pub mod exactnum;
pub mod fan;
pub mod logtoric;
pub mod semitorus;
