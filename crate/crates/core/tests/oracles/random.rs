//! Seeded generators for chart-calculus instances.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use logframe::chartcalc::{ChartVectorField, Frame, LaurentPoly, LogOneForm, MonomialMap};
use logframe::exactnum::{ExactComplex, IntMatrix};
use logframe::exactnum::rational::rat;

pub fn gaussian(rng: &mut ChaCha8Rng) -> ExactComplex {
    ExactComplex::gaussian(rat(rng.gen_range(-3..=3), 1), rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
}

/// Up to `terms` monomials with exponents in `lo..=hi` per variable, with
/// `nonneg` variables restricted to `0..=hi`.
pub fn laurent(rng: &mut ChaCha8Rng, n: usize, terms: usize, lo: i64, hi: i64, nonneg: &BTreeSet<usize>) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let e: Vec<i64> = (0..n)
            .map(|i| rng.gen_range(if nonneg.contains(&i) { 0 } else { lo }..=hi))
            .collect();
        p = &p + &LaurentPoly::term(&e, gaussian(rng));
    }
    p
}

pub fn divisor(rng: &mut ChaCha8Rng, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Product of random elementary integer operations.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                let src = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(&src) {
                    *a += k * b;
                }
            }
            1 => rows.swap(i, j),
            _ => rows[i].iter_mut().for_each(|a| *a = -*a),
        }
    }
    IntMatrix::from_rows(&rows)
}

pub fn monomial_map(rng: &mut ChaCha8Rng, n: usize) -> MonomialMap {
    MonomialMap::new(unimodular(rng, n, 4)).expect("elementary products are unimodular")
}

/// A field in the log frame, hence tangent to the divisor.
pub fn log_field(rng: &mut ChaCha8Rng) -> ChartVectorField {
    let n = rng.gen_range(1..=3);
    let d = divisor(rng, n);
    let coeffs = (0..n).map(|_| laurent(rng, n, 3, -2, 2, &d)).collect();
    ChartVectorField::new(Frame::Log, coeffs, d).unwrap()
}

/// `Σ_{i∈D} c_i dz_i/z_i + dF` with `F` regular along the divisor, the
/// `dz_i` part of `dF` over divisor indices folded into the log coefficient.
pub fn closed_form(rng: &mut ChaCha8Rng) -> LogOneForm {
    let n = rng.gen_range(1..=3);
    let mut d = divisor(rng, n);
    if d.is_empty() {
        d.insert(rng.gen_range(0..n));
    }
    let f = laurent(rng, n, 4, -2, 3, &d);
    let mut log_parts = vec![LaurentPoly::zero(n); n];
    let mut regular_parts = vec![LaurentPoly::zero(n); n];
    for i in 0..n {
        let di = f.derivative(i);
        if d.contains(&i) {
            log_parts[i] = &di.shift_var(i, 1) + &LaurentPoly::constant(n, gaussian(rng));
        } else {
            regular_parts[i] = di;
        }
    }
    LogOneForm::new(log_parts, regular_parts, d).unwrap()
}
