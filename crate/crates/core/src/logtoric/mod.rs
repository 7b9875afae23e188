//! Charts, logarithmic frames and transition data of smooth toric fans.
//!
//! In the chart of a smooth cone σ with ray matrix `R_σ` (columns = ray
//! generators, completed to a basis of `N`), the local coordinates are the
//! characters of the dual basis (rows of `R_σ⁻¹`). The boundary is cut out
//! by `z₁⋯z_k` with `k = dim σ`, and the fundamental vector field of a
//! one-parameter subgroup `a ∈ N` is `Σ cᵢ zᵢ∂/∂zᵢ` with `c = R_σ⁻¹·a`.

pub mod certificate;
pub mod invariants;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{IntMatrix, NumError};
use crate::fan::{Cone, Fan, FanError};

pub use certificate::{frame_coherent, ChartFrame, TrivialityCertificate, TrivialityVerdict};
pub use invariants::{
    all_isotropy, betti_numbers, d_invariant, d_invariant_report, isotropy, snc_certificate, strata_census,
    DInvariantReport, IsotropyReport, SncCertificate, SncChart, StrataCensus,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogToricError {
    #[error("cone {cone} is not smooth (invariant factors {invariant_factors:?})")]
    NonSmoothCone { cone: Cone, invariant_factors: Vec<BigInt> },
    #[error("boundary is not simple normal crossings at cone {cone} (invariant factors {invariant_factors:?})")]
    NotSnc { cone: Cone, invariant_factors: Vec<BigInt> },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub cone: Cone,
    /// Columns: the cone's ray generators, then the completion columns.
    pub ray_matrix: IntMatrix,
    /// Number of completion columns appended to reach a basis.
    pub completion: usize,
    /// `R_σ⁻¹`; its rows are the dual basis.
    pub inverse: IntMatrix,
    /// Coordinates cutting the boundary: `0..dim σ`.
    pub divisor_indices: Vec<usize>,
}

impl Chart {
    pub fn new(fan: &Fan, cone: &Cone) -> Result<Chart, LogToricError> {
        let n = fan.n();
        let k = cone.dim();
        let m = fan.ray_matrix(cone);
        let snf = m.smith_normal_form();
        let factors = snf.invariant_factors();
        if factors.len() != k || factors.iter().any(|f| f != &BigInt::from(1)) {
            return Err(LogToricError::NonSmoothCone {
                cone: cone.clone(),
                invariant_factors: factors,
            });
        }
        let ray_matrix = if k == n {
            m
        } else {
            // U·M·V = [I; 0] puts the generators in the span of the first k
            // columns of U⁻¹; the remaining columns of U⁻¹ complete them.
            let u_inv = snf.u.invert_unimodular()?;
            let mut r = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    r[(i, j)] = if j < k { m[(i, j)].clone() } else { u_inv[(i, j)].clone() };
                }
            }
            r
        };
        let inverse = ray_matrix.invert_unimodular()?;
        Ok(Chart {
            cone: cone.clone(),
            ray_matrix,
            completion: n - k,
            inverse,
            divisor_indices: (0..k).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.ray_matrix.rows()
    }

    pub fn dual_basis(&self) -> Vec<Vec<BigInt>> {
        self.inverse.to_rows()
    }

    /// Log-frame coefficients `R_σ⁻¹·a` of the fundamental field of `a ∈ N`.
    pub fn fundamental_field(&self, a: &[BigInt]) -> Result<Vec<BigInt>, LogToricError> {
        Ok(self.inverse.mul_vec(a)?)
    }

    /// Local boundary equation, e.g. `z1*z2`; `1` for the open chart.
    pub fn local_equation(&self) -> String {
        if self.divisor_indices.is_empty() {
            return "1".into();
        }
        self.divisor_indices
            .iter()
            .map(|i| format!("z{}", i + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Residues in units of 2πi: entry `(i, j) = ⟨m_j, v_i⟩` over the chart's rays `v_i`.
    pub fn residue_matrix(&self, characters: &[Vec<BigInt>]) -> Result<IntMatrix, LogToricError> {
        let n = self.n();
        let k = self.cone.dim();
        let mut out = IntMatrix::zeros(k, characters.len());
        for (j, m) in characters.iter().enumerate() {
            if m.len() != n {
                return Err(NumError::DimensionMismatch {
                    expected: n,
                    found: m.len(),
                }
                .into());
            }
            for i in 0..k {
                out[(i, j)] = (0..n).map(|r| &m[r] * &self.ray_matrix[(r, i)]).sum();
            }
        }
        Ok(out)
    }
}

/// `T = R_σ⁻¹ · R_σ′`: log-frame coefficients in chart σ of the frame of chart σ′.
pub fn log_transition(from: &Chart, to: &Chart) -> IntMatrix {
    &from.inverse * &to.ray_matrix
}

pub fn triviality_certificate(fan: &Fan) -> TrivialityCertificate {
    TrivialityCertificate::build(fan)
}

/// Charts of all maximal cones, in cone order.
pub fn charts(fan: &Fan) -> Result<Vec<Chart>, LogToricError> {
    fan.max_cones().iter().map(|c| Chart::new(fan, c)).collect()
}
