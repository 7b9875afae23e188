//! Reference computations written independently of the library's
//! algorithms, plus the shared test corpus.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub mod random;

use logframe::fan::standard::corner_cut_corpus;
use logframe::fan::{Fan, StandardFan};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub const CORPUS_SEED: u64 = 0xc0_57a1;

/// ℙⁿ and (ℙ¹)ⁿ for n ≤ 4, and F_a for a ≤ 3.
pub fn standard_fans() -> Vec<(String, Fan)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("P^{n}"), Fan::standard(StandardFan::ProjectiveSpace(n))));
    }
    for n in 1..=4 {
        out.push((format!("(P^1)^{n}"), Fan::standard(StandardFan::ProductP1(n))));
    }
    for a in 0..=3 {
        out.push((format!("F_{a}"), Fan::standard(StandardFan::Hirzebruch(a))));
    }
    out
}

pub fn corner_cut_fans() -> Vec<Fan> {
    corner_cut_corpus(CORPUS_SEED, 20)
}

pub fn nonprojective_3fan() -> Fan {
    let cones = [
        [3, 1, 0],
        [3, 2, 1],
        [3, 0, 2],
        [0, 1, 5],
        [0, 5, 4],
        [1, 2, 6],
        [1, 6, 5],
        [2, 0, 4],
        [2, 4, 6],
        [4, 5, 7],
        [5, 6, 7],
        [6, 4, 7],
    ];
    Fan::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, -1, -1],
            vec![2, 1, 1],
            vec![1, 2, 1],
            vec![1, 1, 2],
            vec![1, 1, 1],
        ],
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .unwrap()
}

/// Valid fans with exactly one non-smooth maximal cone each.
pub fn nonsmooth_fans() -> Vec<(String, Fan)> {
    let f = |n, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>| Fan::new(n, rays, cones).unwrap();
    vec![
        (
            "index-two cone completed".into(),
            f(2, vec![vec![1, 1], vec![1, -1], vec![-1, 0]], vec![vec![0, 1], vec![0, 2], vec![1, 2]]),
        ),
        ("lone index-two cone".into(), f(2, vec![vec![1, 1], vec![1, -1]], vec![vec![0, 1]])),
        (
            "weighted plane".into(),
            f(2, vec![vec![0, 1], vec![-1, 0], vec![1, -2]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        ),
        (
            "lone index-two 3-cone".into(),
            f(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]], vec![vec![0, 1, 2]]),
        ),
        (
            "weighted 3-space".into(),
            f(
                3,
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -2]],
                vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            ),
        ),
    ]
}

/// Solves `M x = b` for square invertible `M` (columns given) by
/// Gauss–Jordan elimination.
pub fn solve_columns(cols: &[Vec<i64>], b: &[i64]) -> Option<Vec<Q>> {
    let n = b.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| q(c[i])).collect();
            row.push(q(b[i]));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// One strict convexity row in ray-value coordinates `h_ρ`.
#[derive(Clone, Debug)]
pub struct WallRow {
    pub wall: BTreeSet<usize>,
    pub cone: usize,
    pub neighbor: usize,
    pub off_ray: usize,
    pub row: Vec<Q>,
}

/// Walls by brute force over pairs of maximal cones sharing `n − 1` rays;
/// the lower-index cone's linear extension must exceed `h` at the other
/// cone's off-wall ray.
pub fn wall_rows(fan: &Fan) -> Vec<WallRow> {
    let n = fan.n();
    let cones: Vec<BTreeSet<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| c.rays().iter().copied().collect())
        .collect();
    let mut out = Vec::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let common: BTreeSet<usize> = cones[a].intersection(&cones[b]).copied().collect();
            if common.len() + 1 != n {
                continue;
            }
            let off = *cones[b].difference(&common).next().unwrap();
            let ra: Vec<usize> = cones[a].iter().copied().collect();
            let cols: Vec<Vec<i64>> = ra.iter().map(|&r| fan.ray(r).0.clone()).collect();
            let c = solve_columns(&cols, &fan.ray(off).0).expect("simplicial full cone");
            let mut row = vec![Q::zero(); fan.rays().len()];
            for (k, &r) in ra.iter().enumerate() {
                row[r] += &c[k];
            }
            row[off] -= Q::one();
            out.push(WallRow {
                wall: common,
                cone: a,
                neighbor: b,
                off_ray: off,
                row,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum FmOutcome {
    Feasible,
    /// Nonnegative, nonzero multipliers (one per wall row) whose
    /// combination of the rows vanishes.
    Infeasible(Vec<Q>),
}

fn normalize(coeffs: &mut [Q], mult: &mut [Q]) {
    if let Some(s) = coeffs.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in coeffs.iter_mut() {
            *x = &*x / &s;
        }
        for x in mult.iter_mut() {
            *x = &*x / &s;
        }
    }
}

/// Fourier–Motzkin elimination on the homogeneous strict system
/// `row · h > 0`, with ray values on the first maximal cone fixed to 0.
pub fn fm_projective(fan: &Fan) -> FmOutcome {
    let rows = wall_rows(fan);
    let m = rows.len();
    let gauge: BTreeSet<usize> = fan.max_cones()[0].rays().iter().copied().collect();
    let free: Vec<usize> = (0..fan.rays().len()).filter(|r| !gauge.contains(r)).collect();
    let mut sys: Vec<(Vec<Q>, Vec<Q>)> = rows
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let mut mult = vec![Q::zero(); m];
            mult[k] = Q::one();
            (free.iter().map(|&r| w.row[r].clone()).collect(), mult)
        })
        .collect();
    for var in 0..free.len() {
        if let Some((_, mult)) = sys.iter().find(|(c, _)| c.iter().all(Zero::is_zero)) {
            return FmOutcome::Infeasible(mult.clone());
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (c, mu) in sys {
            if c[var].is_positive() {
                pos.push((c, mu));
            } else if c[var].is_negative() {
                neg.push((c, mu));
            } else {
                rest.push((c, mu));
            }
        }
        let mut seen: BTreeMap<Vec<Q>, ()> = rest.iter().map(|(c, _)| (c.clone(), ())).collect();
        for (pc, pm) in &pos {
            for (nc, nm) in &neg {
                let sp = pc[var].recip();
                let sn = -nc[var].recip();
                let mut c: Vec<Q> = pc.iter().zip(nc).map(|(x, y)| x * &sp + y * &sn).collect();
                let mut mu: Vec<Q> = pm.iter().zip(nm).map(|(x, y)| x * &sp + y * &sn).collect();
                normalize(&mut c, &mut mu);
                if seen.insert(c.clone(), ()).is_none() {
                    rest.push((c, mu));
                }
            }
        }
        sys = rest;
    }
    match sys.iter().find(|(c, _)| c.iter().all(Zero::is_zero)) {
        Some((_, mult)) => FmOutcome::Infeasible(mult.clone()),
        None => FmOutcome::Feasible,
    }
}

/// Σ_k y_k · row_k over all ray coordinates.
pub fn combine(rows: &[WallRow], y: &[Q]) -> Vec<Q> {
    let len = rows.first().map_or(0, |r| r.row.len());
    let mut acc = vec![Q::zero(); len];
    for (w, c) in rows.iter().zip(y) {
        for (a, x) in acc.iter_mut().zip(&w.row) {
            *a += c * x;
        }
    }
    acc
}

/// Betti numbers from `Σ_σ (t² − 1)^{n − dim σ}` over every cone, with the
/// faces enumerated directly as subsets of maximal cones.
pub fn poincare_betti(fan: &Fan) -> Vec<BigInt> {
    let n = fan.n();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in fan.max_cones() {
        let rays = c.rays();
        for mask in 0u32..(1 << rays.len()) {
            faces.insert((0..rays.len()).filter(|i| mask >> i & 1 == 1).map(|i| rays[i]).collect());
        }
    }
    let mut poly = vec![BigInt::zero(); 2 * n + 1];
    for f in &faces {
        let e = n - f.len();
        // (t² − 1)^e = Σ_j C(e, j) t^{2j} (−1)^{e−j}
        let mut binom = BigInt::one();
        for j in 0..=e {
            let term = if (e - j) % 2 == 0 { binom.clone() } else { -binom.clone() };
            poly[2 * j] += term;
            binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
        }
    }
    poly
}
