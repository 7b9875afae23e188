//! Projectivity of smooth complete fans via strictly convex support functions.
//!
//! Unknowns are one linear form `m_σ ∈ ℚⁿ` per maximal cone. Across each wall
//! `τ = σ ∩ σ′` (σ before σ′ in cone order) the forms agree on the rays of τ and
//! `⟨m_σ, v′⟩ > ⟨m_σ′, v′⟩` for the ray `v′` of σ′ off the wall. The system is
//! homogeneous, so strict feasibility is equivalent to feasibility with every
//! strict gap at least 1.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{Feasibility, FarkasWitness, LinearSystem, Relation, VarKind};
use super::{Cone, Fan, FanError};
use crate::exactnum::rational::{serde_rat, serde_rat_mat};
use crate::exactnum::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Equality,
    Strict,
}

/// Which wall condition a constraint row encodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallConstraint {
    pub wall: Cone,
    pub cone: usize,
    pub neighbor: usize,
    pub ray: usize,
    pub kind: ConstraintKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasEntry {
    #[serde(flatten)]
    pub constraint: WallConstraint,
    #[serde(with = "serde_rat")]
    pub multiplier: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectivityVerdict {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivityCertificate {
    pub verdict: ProjectivityVerdict,
    /// `m_σ` per maximal cone when feasible.
    #[serde(with = "serde_rat_mat", default, skip_serializing_if = "Vec::is_empty")]
    pub support: Vec<Vec<Rational>>,
    /// Nonzero Farkas multipliers when infeasible; combining the listed rows
    /// yields `0 ≥ 1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub farkas: Vec<FarkasEntry>,
}

/// The wall-condition rows in canonical order, with labels.
pub fn support_function_system(fan: &Fan) -> Result<(LinearSystem, Vec<WallConstraint>), FanError> {
    let n = fan.n();
    let nvars = n * fan.max_cones().len();
    let mut sys = LinearSystem::new(vec![VarKind::Free; nvars]);
    let mut labels = Vec::new();
    for wall in fan.walls()? {
        let [a, b] = wall.incident[..] else {
            return Err(FanError::PreconditionFailed(format!(
                "wall {} is not shared by exactly two maximal cones",
                wall.cone
            )));
        };
        let mut push = |ray: usize, kind: ConstraintKind| {
            let mut row = vec![Rational::zero(); nvars];
            for (k, &x) in fan.ray(ray).0.iter().enumerate() {
                row[a * n + k] = Rational::from_integer(x.into());
                row[b * n + k] = -Rational::from_integer(x.into());
            }
            let (rel, rhs) = match kind {
                ConstraintKind::Equality => (Relation::Eq, Rational::zero()),
                ConstraintKind::Strict => (Relation::Ge, Rational::from_integer(1.into())),
            };
            sys.push(row, rel, rhs);
            labels.push(WallConstraint {
                wall: wall.cone.clone(),
                cone: a,
                neighbor: b,
                ray,
                kind,
            });
        };
        for &r in wall.cone.rays() {
            push(r, ConstraintKind::Equality);
        }
        let off = fan.max_cones()[b]
            .rays()
            .iter()
            .copied()
            .find(|r| !wall.cone.contains_ray(*r))
            .expect("a maximal cone has one ray off each of its walls");
        push(off, ConstraintKind::Strict);
    }
    Ok((sys, labels))
}

impl Fan {
    /// Decides projectivity of a valid, smooth, complete fan.
    pub fn is_projective(&self) -> Result<ProjectivityCertificate, FanError> {
        if !self.is_valid() {
            return Err(FanError::PreconditionFailed("fan is not valid".into()));
        }
        if !self.is_smooth() {
            return Err(FanError::PreconditionFailed("fan is not smooth".into()));
        }
        if !self.is_complete()?.complete {
            return Err(FanError::PreconditionFailed("fan is not complete".into()));
        }
        let (sys, labels) = support_function_system(self)?;
        let n = self.n();
        Ok(match sys.solve() {
            Feasibility::Feasible(x) => ProjectivityCertificate {
                verdict: ProjectivityVerdict::Feasible,
                support: if n == 0 {
                    vec![Vec::new(); self.max_cones().len()]
                } else {
                    x.chunks(n).map(<[_]>::to_vec).collect()
                },
                farkas: Vec::new(),
            },
            Feasibility::Infeasible(w) => ProjectivityCertificate {
                verdict: ProjectivityVerdict::Infeasible,
                support: Vec::new(),
                farkas: labels
                    .into_iter()
                    .zip(w.multipliers)
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(constraint, multiplier)| FarkasEntry { constraint, multiplier })
                    .collect(),
            },
        })
    }
}

impl ProjectivityCertificate {
    /// Re-checks the certificate against the fan without running the solver.
    pub fn verify(&self, fan: &Fan) -> bool {
        match self.verdict {
            ProjectivityVerdict::Feasible => self.farkas.is_empty() && verify_support(fan, &self.support),
            ProjectivityVerdict::Infeasible => self.support.is_empty() && self.verify_farkas(fan),
        }
    }

    fn verify_farkas(&self, fan: &Fan) -> bool {
        let Ok((sys, labels)) = support_function_system(fan) else {
            return false;
        };
        let mut multipliers = vec![Rational::zero(); labels.len()];
        for entry in &self.farkas {
            match labels.iter().position(|l| *l == entry.constraint) {
                Some(i) if multipliers[i].is_zero() => multipliers[i] = entry.multiplier.clone(),
                _ => return false,
            }
        }
        FarkasWitness { multipliers }.verify(&sys)
    }
}

fn pair(m: &[Rational], v: &[i64]) -> Rational {
    m.iter().zip(v).map(|(a, &b)| a * Rational::from_integer(b.into())).sum()
}

/// Direct evaluation of every wall condition with a strict inequality.
fn verify_support(fan: &Fan, support: &[Vec<Rational>]) -> bool {
    if support.len() != fan.max_cones().len() || support.iter().any(|m| m.len() != fan.n()) {
        return false;
    }
    let Ok(walls) = fan.walls() else {
        return false;
    };
    walls.iter().all(|w| {
        let [a, b] = w.incident[..] else {
            return false;
        };
        let agree = w
            .cone
            .rays()
            .iter()
            .all(|&r| pair(&support[a], &fan.ray(r).0) == pair(&support[b], &fan.ray(r).0));
        let strict = fan.max_cones()[b]
            .rays()
            .iter()
            .filter(|r| !w.cone.contains_ray(**r))
            .all(|&r| (pair(&support[a], &fan.ray(r).0) - pair(&support[b], &fan.ray(r).0)).is_positive());
        agree && strict
    })
}
