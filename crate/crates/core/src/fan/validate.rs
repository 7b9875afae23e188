//! Fan validation: primitivity, strong convexity, simpliciality, and the
//! face-intersection property, each failure reported with its location.

use num_traits::{One, Zero};
use serde::Serialize;

use super::lp::{Feasibility, LinearSystem, Relation, VarKind};
use super::{Cone, Fan};
use crate::exactnum::{rank, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRay { ray: usize },
    NonPrimitive { ray: usize, content: i64 },
    DuplicateRay { first: usize, second: usize },
    /// The cone contains a line.
    NotStronglyConvex { cone: usize },
    /// Strongly convex but with linearly dependent generators.
    NonSimplicial { cone: usize },
    DuplicateCone { first: usize, second: usize },
    /// A listed maximal cone is a face of another listed cone.
    NotMaximal { cone: usize, contained_in: usize },
    /// The two cones meet in more than their common face.
    BadIntersection { first: usize, second: usize, common_face: Cone },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl Fan {
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        for (i, r) in self.rays().iter().enumerate() {
            if r.is_zero() {
                v.push(Violation::ZeroRay { ray: i });
            } else if !r.is_primitive() {
                v.push(Violation::NonPrimitive {
                    ray: i,
                    content: r.content(),
                });
            }
        }
        for i in 0..self.rays().len() {
            for j in i + 1..self.rays().len() {
                if self.rays()[i] == self.rays()[j] {
                    v.push(Violation::DuplicateRay { first: i, second: j });
                }
            }
        }

        let mut simplicial = vec![true; self.max_cones().len()];
        for (c, cone) in self.max_cones().iter().enumerate() {
            if self.generator_rank(cone) == cone.dim() {
                continue;
            }
            simplicial[c] = false;
            if self.contains_line(cone) {
                v.push(Violation::NotStronglyConvex { cone: c });
            } else {
                v.push(Violation::NonSimplicial { cone: c });
            }
        }

        let cones = self.max_cones();
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if cones[a] == cones[b] {
                    v.push(Violation::DuplicateCone { first: a, second: b });
                    continue;
                }
                if cones[a].is_face_of(&cones[b]) {
                    v.push(Violation::NotMaximal {
                        cone: a,
                        contained_in: b,
                    });
                    continue;
                }
                if cones[b].is_face_of(&cones[a]) {
                    v.push(Violation::NotMaximal {
                        cone: b,
                        contained_in: a,
                    });
                    continue;
                }
                if simplicial[a] && simplicial[b] && !self.meets_in_common_face(&cones[a], &cones[b]) {
                    v.push(Violation::BadIntersection {
                        first: a,
                        second: b,
                        common_face: cones[a].intersection(&cones[b]),
                    });
                }
            }
        }
        ValidationReport {
            valid: v.is_empty(),
            violations: v,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    fn generator_rank(&self, cone: &Cone) -> usize {
        let rows: Vec<Vec<Rational>> = cone.rays().iter().map(|&r| self.ray(r).to_rationals()).collect();
        rank(&rows)
    }

    /// Whether some nonnegative, not-all-zero combination of the generators vanishes.
    fn contains_line(&self, cone: &Cone) -> bool {
        let k = cone.dim();
        let mut sys = LinearSystem::new(vec![VarKind::NonNeg; k]);
        for coord in 0..self.n() {
            let row = cone
                .rays()
                .iter()
                .map(|&r| Rational::from_integer(self.ray(r).0[coord].into()))
                .collect();
            sys.push(row, Relation::Eq, Rational::zero());
        }
        sys.push(vec![Rational::one(); k], Relation::Eq, Rational::one());
        matches!(sys.solve(), Feasibility::Feasible(_))
    }

    /// For simplicial cones σ, σ′ with common face τ: decides whether
    /// `σ ∩ σ′ = τ` by asking for a common point that puts positive weight on
    /// a generator outside τ.
    fn meets_in_common_face(&self, a: &Cone, b: &Cone) -> bool {
        let common = a.intersection(b);
        let (ka, kb) = (a.dim(), b.dim());
        let mut sys = LinearSystem::new(vec![VarKind::NonNeg; ka + kb]);
        for coord in 0..self.n() {
            let mut row = Vec::with_capacity(ka + kb);
            row.extend(a.rays().iter().map(|&r| Rational::from_integer(self.ray(r).0[coord].into())));
            row.extend(b.rays().iter().map(|&r| -Rational::from_integer(self.ray(r).0[coord].into())));
            sys.push(row, Relation::Eq, Rational::zero());
        }
        let mut outside = Vec::with_capacity(ka + kb);
        outside.extend(a.rays().iter().map(|r| one_if(!common.contains_ray(*r))));
        outside.extend(b.rays().iter().map(|r| one_if(!common.contains_ray(*r))));
        sys.push(outside, Relation::Eq, Rational::one());
        matches!(sys.solve(), Feasibility::Infeasible(_))
    }
}

fn one_if(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}
