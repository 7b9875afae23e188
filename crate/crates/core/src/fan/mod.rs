//! Simplicial rational fans over `ℤⁿ`: the combinatorial model of a toric
//! compactification of `(ℂ*)ⁿ`.

pub mod complete;
pub mod lp;
pub mod projective;
pub mod standard;
pub mod validate;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{IntMatrix, Rational};

pub use complete::{CompletenessReport, Wall};
pub use projective::{ProjectivityCertificate, ProjectivityVerdict};
pub use standard::StandardFan;
pub use validate::{ValidationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("ray {ray} has length {found}, expected lattice rank {expected}")]
    RayDimension { ray: usize, expected: usize, found: usize },
    #[error("cone {cone} refers to ray index {index}, but the fan has {rays} rays")]
    DanglingIndex { cone: usize, index: usize, rays: usize },
    #[error("cone {cone} lists ray index {index} twice")]
    RepeatedIndex { cone: usize, index: usize },
    #[error("fan is not pure: maximal cone {cone} has dimension {dim} < {n}")]
    NotPure { cone: usize, dim: usize, n: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// A primitive nonzero lattice vector spanning a ray.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray(pub Vec<i64>);

impl Ray {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }
}

/// A cone given by a sorted set of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    /// Number of generators; equals the dimension for simplicial cones.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|r| other.contains_ray(*r)).collect())
    }

    /// All faces with exactly `k` rays, in lexicographic order.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Cone> {
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        subsets(&self.0, k, 0, &mut pick, &mut out);
        out
    }
}

fn subsets(items: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Cone>) {
    if pick.len() == k {
        out.push(Cone(pick.clone()));
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - pick.len() {
            break;
        }
        pick.push(items[i]);
        subsets(items, k, i + 1, pick, out);
        pick.pop();
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Fan file contents: `{ "n": …, "rays": [[…]], "max_cones": [[…]] }` with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanData {
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    rays: Vec<Ray>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Structural construction; geometric conditions are checked by [`Fan::validate`].
    pub fn new(n: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::RayDimension {
                    ray: i,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, idx) in max_cones.into_iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &i in &idx {
                if i >= rays.len() {
                    return Err(FanError::DanglingIndex {
                        cone: c,
                        index: i,
                        rays: rays.len(),
                    });
                }
                if !seen.insert(i) {
                    return Err(FanError::RepeatedIndex { cone: c, index: i });
                }
            }
            cones.push(Cone::new(idx));
        }
        Ok(Fan {
            n,
            rays: rays.into_iter().map(Ray).collect(),
            max_cones: cones,
        })
    }

    pub fn from_data(data: FanData) -> Result<Fan, FanError> {
        Fan::new(data.n, data.rays, data.max_cones)
    }

    /// Canonical file form (ray indices in each cone ascending).
    pub fn to_data(&self) -> FanData {
        FanData {
            n: self.n,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.0.clone()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// `n × k` matrix whose columns are the cone's ray generators.
    pub fn ray_matrix(&self, cone: &Cone) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cone.rays().iter().map(|&r| self.rays[r].to_bigints()).collect();
        IntMatrix::from_columns(self.n, &cols)
    }

    /// Whether every maximal cone has dimension `n`.
    pub fn check_pure(&self) -> Result<(), FanError> {
        match self.max_cones.iter().position(|c| c.dim() != self.n) {
            Some(i) => Err(FanError::NotPure {
                cone: i,
                dim: self.max_cones[i].dim(),
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// All distinct `k`-dimensional faces of maximal cones, sorted.
    pub fn cones_of_dim(&self, k: usize) -> Vec<Cone> {
        let set: BTreeSet<Cone> = self.max_cones.iter().flat_map(|c| c.faces_of_dim(k)).collect();
        set.into_iter().collect()
    }

    /// Largest maximal-cone dimension.
    pub fn dim(&self) -> usize {
        self.max_cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    /// Smoothness per maximal cone: a cone is smooth iff its generators extend
    /// to a basis of `ℤⁿ`, i.e. its ray matrix has full column rank and all
    /// invariant factors equal to one.
    pub fn smoothness(&self) -> SmoothnessReport {
        let failures = self
            .max_cones
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let factors = self.cone_invariant_factors(c);
                let ok = factors.len() == c.dim() && factors.iter().all(|f| f == &BigInt::from(1));
                (!ok).then(|| NonSmoothCone {
                    index: i,
                    cone: c.clone(),
                    invariant_factors: factors,
                })
            })
            .collect::<Vec<_>>();
        SmoothnessReport {
            smooth: failures.is_empty(),
            failures,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().smooth
    }

    pub fn is_cone_smooth(&self, cone: &Cone) -> bool {
        let f = self.cone_invariant_factors(cone);
        f.len() == cone.dim() && f.iter().all(|x| x == &BigInt::from(1))
    }

    fn cone_invariant_factors(&self, cone: &Cone) -> Vec<BigInt> {
        if cone.dim() == 0 {
            return Vec::new();
        }
        self.ray_matrix(cone).smith_normal_form().invariant_factors()
    }

    /// Star subdivision along `cone`: adds the ray `Σ v_i` over the cone's rays
    /// and replaces each maximal cone containing `cone` by the cones obtained
    /// by swapping one ray of `cone` for the new ray.
    pub fn star_subdivide(&self, cone: &Cone) -> Result<Fan, FanError> {
        if cone.dim() < 2 {
            return Err(FanError::PreconditionFailed(
                "star subdivision needs a cone of dimension at least 2".into(),
            ));
        }
        let mut w = vec![0i64; self.n];
        for &r in cone.rays() {
            for (x, y) in w.iter_mut().zip(&self.rays[r].0) {
                *x += *y;
            }
        }
        let g = Ray(w.clone()).content();
        if g != 1 {
            return Err(FanError::PreconditionFailed(format!(
                "sum of generators of {cone} is not primitive"
            )));
        }
        let new_index = self.rays.len();
        let mut rays: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        rays.push(w);
        let mut cones = Vec::new();
        for mc in &self.max_cones {
            if !cone.is_face_of(mc) {
                cones.push(mc.0.clone());
                continue;
            }
            for &drop in cone.rays() {
                let mut c: Vec<usize> = mc.0.iter().copied().filter(|&r| r != drop).collect();
                c.push(new_index);
                c.sort_unstable();
                cones.push(c);
            }
        }
        Fan::new(self.n, rays, cones)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSmoothCone {
    pub index: usize,
    pub cone: Cone,
    #[serde(
        serialize_with = "crate::exactnum::intmat::serialize_bigints",
        deserialize_with = "crate::exactnum::intmat::deserialize_bigints"
    )]
    pub invariant_factors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub failures: Vec<NonSmoothCone>,
}
