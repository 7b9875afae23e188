//! Isotropy, strata, Betti numbers and the local boundary equations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::LogToricError;
use crate::exactnum::IntMatrix;
use crate::fan::{Cone, Fan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub cone: Cone,
    pub rank: usize,
    /// Basis of `N ∩ span(σ)`, one vector per entry.
    #[serde(serialize_with = "crate::exactnum::intmat::serialize_bigint_rows")]
    pub sublattice_basis: Vec<Vec<BigInt>>,
    /// Index of the ray-generated sublattice in its saturation.
    #[serde(serialize_with = "crate::exactnum::intmat::serialize_bigint")]
    pub saturation_index: BigInt,
    pub is_semi_torus: bool,
}

/// Lattice data of the isotropy group of the orbit of σ.
///
/// With `U·M·V = S` the columns of `U⁻¹` adapted to the ray matrix `M`, the
/// first `rank` of them span `N ∩ span(σ)`, and the product of the invariant
/// factors is the index of `ℤ⟨rays⟩` in that lattice.
pub fn isotropy(fan: &Fan, cone: &Cone) -> IsotropyReport {
    let n = fan.n();
    if cone.dim() == 0 {
        return IsotropyReport {
            cone: cone.clone(),
            rank: 0,
            sublattice_basis: Vec::new(),
            saturation_index: BigInt::one(),
            is_semi_torus: true,
        };
    }
    let snf = fan.ray_matrix(cone).smith_normal_form();
    let factors = snf.invariant_factors();
    let rank = factors.len();
    let u_inv = snf
        .u
        .invert_unimodular()
        .expect("SNF transform is unimodular");
    let sublattice_basis = (0..rank).map(|j| u_inv.column(j)).collect();
    let saturation_index: BigInt = factors.iter().product();
    debug_assert!(n >= rank);
    IsotropyReport {
        cone: cone.clone(),
        rank,
        sublattice_basis,
        is_semi_torus: saturation_index.is_one(),
        saturation_index,
    }
}

/// Isotropy reports for every cone of the fan, by dimension then index order.
pub fn all_isotropy(fan: &Fan) -> Vec<IsotropyReport> {
    (0..=fan.dim())
        .flat_map(|k| fan.cones_of_dim(k))
        .map(|c| isotropy(fan, &c))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataCensus {
    /// Codimension `k` ↦ number of codimension-`k` orbits.
    pub counts: BTreeMap<usize, usize>,
    pub closed_stratum_dim: usize,
}

pub fn strata_census(fan: &Fan) -> StrataCensus {
    let top = fan.dim();
    let counts = (0..=top).map(|k| (k, fan.cones_of_dim(k).len())).collect();
    StrataCensus {
        counts,
        closed_stratum_dim: top,
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn require_smooth_complete(fan: &Fan) -> Result<(), LogToricError> {
    if !fan.is_valid() {
        return Err(LogToricError::PreconditionFailed("fan is not valid".into()));
    }
    if !fan.is_smooth() {
        return Err(LogToricError::PreconditionFailed("fan is not smooth".into()));
    }
    if !fan.is_complete()?.complete {
        return Err(LogToricError::PreconditionFailed("fan is not complete".into()));
    }
    Ok(())
}

/// `b₀ … b_{2n}` of the smooth complete toric variety.
pub fn betti_numbers(fan: &Fan) -> Result<Vec<BigInt>, LogToricError> {
    require_smooth_complete(fan)?;
    let n = fan.n();
    let d: Vec<usize> = (0..=n).map(|j| fan.cones_of_dim(j).len()).collect();
    let mut out = vec![BigInt::zero(); 2 * n + 1];
    for k in 0..=n {
        let mut b = BigInt::zero();
        for i in k..=n {
            let term = binomial(i, k) * BigInt::from(d[n - i]);
            if (i - k) % 2 == 0 {
                b += term;
            } else {
                b -= term;
            }
        }
        out[2 * k] = b;
    }
    Ok(out)
}

/// `n − b₁(X̄)/2`.
pub fn d_invariant(fan: &Fan) -> Result<usize, LogToricError> {
    Ok(d_invariant_report(fan)?.d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DInvariantReport {
    pub d: usize,
    pub n: usize,
    /// `b₁` of the compactification, the value `d` is computed from.
    pub b1_compactification: usize,
    /// `b₁` of the open orbit `(ℂ*)ⁿ`.
    pub b1_open_part: usize,
    /// `n − b₁/2` with the open part's `b₁`, as `"p/q"`. Differs from `d`
    /// whenever `n > 0`.
    pub d_from_open_part: String,
}

pub fn d_invariant_report(fan: &Fan) -> Result<DInvariantReport, LogToricError> {
    let b = betti_numbers(fan)?;
    let n = fan.n();
    let b1: usize = if n == 0 {
        0
    } else {
        usize::try_from(&b[1]).expect("b1 is small")
    };
    let open = crate::exactnum::rational::rat(n as i64, 1) - crate::exactnum::rational::rat(n as i64, 2);
    Ok(DInvariantReport {
        d: n - b1 / 2,
        n,
        b1_compactification: b1,
        b1_open_part: n,
        d_from_open_part: crate::exactnum::format_rational(&open),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncChart {
    pub cone: Cone,
    pub divisor_rays: Vec<usize>,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncCertificate {
    pub charts: Vec<SncChart>,
}

fn submatrix_rows(m: &IntMatrix, rows: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zeros(rows.len(), m.cols());
    for (a, &r) in rows.iter().enumerate() {
        for j in 0..m.cols() {
            out[(a, j)] = m[(r, j)].clone();
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of the maximal minors of an `n × k` matrix; 1 iff the columns extend
/// to a lattice basis.
pub fn maximal_minor_gcd(m: &IntMatrix) -> BigInt {
    let k = m.cols();
    if k == 0 {
        return BigInt::one();
    }
    combinations(m.rows(), k)
        .iter()
        .fold(BigInt::zero(), |g, rows| g.gcd(&submatrix_rows(m, rows).det().expect("square minor").abs()))
}

/// Local equations `z₁⋯z_k` of the boundary in each maximal chart. Fails at
/// the first cone whose generators do not extend to a lattice basis; there
/// the boundary is not a coordinate-hyperplane arrangement.
pub fn snc_certificate(fan: &Fan) -> Result<SncCertificate, LogToricError> {
    let mut charts = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let m = fan.ray_matrix(cone);
        if !maximal_minor_gcd(&m).is_one() {
            return Err(LogToricError::NotSnc {
                cone: cone.clone(),
                invariant_factors: m.smith_normal_form().invariant_factors(),
            });
        }
        let k = cone.dim();
        let equation = if k == 0 {
            "1".to_string()
        } else {
            (1..=k).map(|i| format!("z{i}")).collect::<Vec<_>>().join("*")
        };
        charts.push(SncChart {
            cone: cone.clone(),
            divisor_rays: cone.rays().to_vec(),
            equation,
        });
    }
    Ok(SncCertificate { charts })
}
