//! Exact rational feasibility for linear systems with Farkas certificates.
//!
//! Phase-one simplex on a dense tableau with Bland's rule. When the system is
//! infeasible, the theorem-of-the-alternative system is solved with the same
//! routine, and the resulting multipliers are returned as a witness that can
//! be checked without the solver.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactnum::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Free,
    NonNeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `a·x = b`
    Eq,
    /// `a·x ≥ b`
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub vars: Vec<VarKind>,
    pub constraints: Vec<Constraint>,
}

/// Multipliers, one per constraint, proving that no solution exists:
/// the combined row is `0` on free and `≤ 0` on nonnegative variables while
/// the combined right-hand side is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct FarkasWitness {
    pub multipliers: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasWitness),
}

impl LinearSystem {
    pub fn new(vars: Vec<VarKind>) -> Self {
        Self {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.vars.len(), "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.vars.len() {
            return false;
        }
        let signs_ok = self
            .vars
            .iter()
            .zip(x)
            .all(|(k, v)| *k == VarKind::Free || !v.is_negative());
        signs_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn solve(&self) -> Feasibility {
        if let Some(x) = phase_one(self) {
            debug_assert!(self.is_satisfied_by(&x));
            return Feasibility::Feasible(x);
        }
        let alt = self.alternative();
        let y = phase_one(&alt).expect("theorem of the alternative: dual system must be feasible");
        let w = FarkasWitness { multipliers: y };
        debug_assert!(w.verify(self));
        Feasibility::Infeasible(w)
    }

    /// The alternative system whose solutions are exactly the Farkas witnesses
    /// normalized to combined right-hand side 1.
    fn alternative(&self) -> LinearSystem {
        let kinds = self
            .constraints
            .iter()
            .map(|c| match c.relation {
                Relation::Eq => VarKind::Free,
                Relation::Ge => VarKind::NonNeg,
            })
            .collect();
        let mut alt = LinearSystem::new(kinds);
        for (j, kind) in self.vars.iter().enumerate() {
            let col: Vec<Rational> = self.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
            match kind {
                VarKind::Free => alt.push(col, Relation::Eq, Rational::zero()),
                VarKind::NonNeg => alt.push(col.into_iter().map(|a| -a).collect(), Relation::Ge, Rational::zero()),
            }
        }
        alt.push(
            self.constraints.iter().map(|c| c.rhs.clone()).collect(),
            Relation::Eq,
            Rational::one(),
        );
        alt
    }
}

impl FarkasWitness {
    /// Checks the witness against the system directly.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.multipliers.len() != sys.constraints.len() {
            return false;
        }
        let sign_ok = sys
            .constraints
            .iter()
            .zip(&self.multipliers)
            .all(|(c, y)| c.relation == Relation::Eq || !y.is_negative());
        if !sign_ok {
            return false;
        }
        let combined_ok = sys.vars.iter().enumerate().all(|(j, kind)| {
            let cj: Rational = sys
                .constraints
                .iter()
                .zip(&self.multipliers)
                .map(|(c, y)| &c.coeffs[j] * y)
                .sum();
            match kind {
                VarKind::Free => cj.is_zero(),
                VarKind::NonNeg => !cj.is_positive(),
            }
        });
        let rhs: Rational = sys
            .constraints
            .iter()
            .zip(&self.multipliers)
            .map(|(c, y)| &c.rhs * y)
            .sum();
        combined_ok && rhs.is_positive()
    }
}

/// Finds a point of `sys` or returns `None` when it is empty.
fn phase_one(sys: &LinearSystem) -> Option<Vec<Rational>> {
    // Standard form columns: each free var splits into (+, −); each ≥ row gets a surplus.
    let mut col_of_var = Vec::with_capacity(sys.vars.len());
    let mut ncols = 0usize;
    for kind in &sys.vars {
        col_of_var.push(ncols);
        ncols += if *kind == VarKind::Free { 2 } else { 1 };
    }
    let surplus_start = ncols;
    let n_ge = sys.constraints.iter().filter(|c| c.relation == Relation::Ge).count();
    ncols += n_ge;
    let m = sys.constraints.len();
    let art_start = ncols;
    let width = ncols + m + 1; // + artificials + rhs

    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    let mut surplus = surplus_start;
    for (i, c) in sys.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for (j, kind) in sys.vars.iter().enumerate() {
            let a = &c.coeffs[j];
            if a.is_zero() {
                continue;
            }
            row[col_of_var[j]] = a.clone();
            if *kind == VarKind::Free {
                row[col_of_var[j] + 1] = -a.clone();
            }
        }
        if c.relation == Relation::Ge {
            row[surplus] = -Rational::one();
            surplus += 1;
        }
        row[width - 1] = c.rhs.clone();
        if row[width - 1].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[art_start + i] = Rational::one();
        t.push(row);
    }
    // objective row: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..width {
            if j < art_start || j == width - 1 {
                obj[j] -= &row[j];
            }
        }
    }
    t.push(obj);
    let mut basis: Vec<usize> = (art_start..art_start + m).collect();

    loop {
        let Some(enter) = (0..width - 1).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur for a bounded-below phase-one objective
            unreachable!("phase-one objective is bounded below by zero");
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut std_x = vec![Rational::zero(); ncols];
    for (i, &b) in basis.iter().enumerate() {
        if b < ncols {
            std_x[b] = t[i][width - 1].clone();
        }
    }
    Some(
        sys.vars
            .iter()
            .enumerate()
            .map(|(j, kind)| {
                let c = col_of_var[j];
                match kind {
                    VarKind::Free => &std_x[c] - &std_x[c + 1],
                    VarKind::NonNeg => std_x[c].clone(),
                }
            })
            .collect(),
    )
}

fn pivot(t: &mut [Vec<Rational>], r: usize, c: usize) {
    let inv = Rational::one() / &t[r][c];
    for x in t[r].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let pivot_row = t[r].clone();
    let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let k = row[c].clone();
        for &j in &nz {
            let delta = &k * &pivot_row[j];
            row[j] -= delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    fn row(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn feasible_free_system() {
        // x + y = 3, x - y >= 1
        let mut s = LinearSystem::new(vec![VarKind::Free, VarKind::Free]);
        s.push(row(&[1, 1]), Relation::Eq, int(3));
        s.push(row(&[1, -1]), Relation::Ge, int(1));
        match s.solve() {
            Feasibility::Feasible(x) => assert!(s.is_satisfied_by(&x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_witness() {
        // x >= 1, -x >= 0
        let mut s = LinearSystem::new(vec![VarKind::Free]);
        s.push(row(&[1]), Relation::Ge, int(1));
        s.push(row(&[-1]), Relation::Ge, int(0));
        match s.solve() {
            Feasibility::Infeasible(w) => {
                assert!(w.verify(&s));
                let mut bad = w.clone();
                bad.multipliers[0] = int(0);
                assert!(!bad.verify(&s));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonnegative_variables() {
        // x, y >= 0, x + y = -1 is empty
        let mut s = LinearSystem::new(vec![VarKind::NonNeg, VarKind::NonNeg]);
        s.push(row(&[1, 1]), Relation::Eq, int(-1));
        assert!(matches!(s.solve(), Feasibility::Infeasible(w) if w.verify(&s)));
        // x, y >= 0, x - 2y = 4
        let mut s = LinearSystem::new(vec![VarKind::NonNeg, VarKind::NonNeg]);
        s.push(row(&[1, -2]), Relation::Eq, int(4));
        assert!(matches!(s.solve(), Feasibility::Feasible(x) if s.is_satisfied_by(&x)));
    }

    #[test]
    fn degenerate_cycling_prone_system_terminates() {
        // Beale-style degenerate rows; Bland's rule must terminate.
        let mut s = LinearSystem::new(vec![VarKind::NonNeg; 4]);
        s.push(row(&[1, -4, -2, 9]), Relation::Ge, int(0));
        s.push(row(&[1, -1, -1, 1]), Relation::Ge, int(0));
        s.push(row(&[1, 1, 1, 1]), Relation::Eq, int(1));
        assert!(matches!(s.solve(), Feasibility::Feasible(x) if s.is_satisfied_by(&x)));
    }
}
