//! Textbook fans and the seeded corner-cut generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Cone, Fan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "param")]
pub enum StandardFan {
    /// `ℙⁿ`: rays `e₁…eₙ, −Σeᵢ`, maximal cones all n-subsets.
    ProjectiveSpace(usize),
    /// `(ℙ¹)ⁿ`: rays `e₁, −e₁, e₂, −e₂, …`, one cone per sign pattern.
    ProductP1(usize),
    /// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)`.
    Hirzebruch(u32),
    /// `ℂⁿ`: the positive orthant.
    AffineSpace(usize),
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = sign;
    v
}

impl Fan {
    pub fn standard(kind: StandardFan) -> Fan {
        let (n, rays, cones) = match kind {
            StandardFan::ProjectiveSpace(n) => {
                let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 1)).collect();
                rays.push(vec![-1; n]);
                let all = Cone::new((0..=n).collect());
                let cones = all.faces_of_dim(n).into_iter().map(|c| c.rays().to_vec()).collect();
                (n, rays, cones)
            }
            StandardFan::ProductP1(n) => {
                let rays: Vec<Vec<i64>> = (0..n).flat_map(|i| [unit(n, i, 1), unit(n, i, -1)]).collect();
                let cones = (0..1usize << n)
                    .map(|mask| (0..n).map(|i| 2 * i + ((mask >> i) & 1)).collect())
                    .collect();
                (n, rays, cones)
            }
            StandardFan::Hirzebruch(a) => (
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, a as i64], vec![0, -1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            ),
            StandardFan::AffineSpace(n) => ((n), (0..n).map(|i| unit(n, i, 1)).collect(), vec![(0..n).collect()]),
        };
        Fan::new(n, rays, cones).expect("standard fans are well formed")
    }

    /// A smooth complete surface fan obtained from `ℙ²` by `cuts` star
    /// subdivisions of randomly chosen maximal cones.
    pub fn random_corner_cut(seed: u64, cuts: usize) -> Fan {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut fan = Fan::standard(StandardFan::ProjectiveSpace(2));
        for _ in 0..cuts {
            let i = rng.gen_range(0..fan.max_cones().len());
            let cone = fan.max_cones()[i].clone();
            fan = fan
                .star_subdivide(&cone)
                .expect("smooth 2-cones subdivide to smooth cones");
        }
        fan
    }
}

/// The corner-cut corpus: `count` fans with seeds `base_seed + k` and `1 + k % 6` cuts.
pub fn corner_cut_corpus(base_seed: u64, count: usize) -> Vec<Fan> {
    (0..count)
        .map(|k| Fan::random_corner_cut(base_seed.wrapping_add(k as u64), 1 + k % 6))
        .collect()
}
