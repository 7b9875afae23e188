//! Walls and completeness of pure simplicial fans.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Cone, Fan, FanError};
use crate::exactnum::linalg::solve_square;
use crate::exactnum::Rational;

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;
pub const DEFAULT_SAMPLES: usize = 64;
const SAMPLE_RANGE: i64 = 1000;

/// A codimension-one face of a maximal cone with its incident maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub cone: Cone,
    pub incident: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    pub walls_paired: bool,
    pub unpaired_walls: Vec<Cone>,
    pub seed: u64,
    pub samples: usize,
    pub uncovered_samples: Vec<Vec<i64>>,
}

impl Fan {
    /// Every wall once, sorted, with its incident maximal cones.
    pub fn walls(&self) -> Result<Vec<Wall>, FanError> {
        self.check_pure()?;
        if self.n() == 0 {
            return Ok(Vec::new());
        }
        let mut map: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.max_cones().iter().enumerate() {
            for face in c.faces_of_dim(self.n() - 1) {
                map.entry(face).or_default().push(i);
            }
        }
        Ok(map
            .into_iter()
            .map(|(cone, incident)| Wall { cone, incident })
            .collect())
    }

    pub fn is_complete(&self) -> Result<CompletenessReport, FanError> {
        self.completeness(DEFAULT_SEED, DEFAULT_SAMPLES)
    }

    /// Wall-pairing test plus exact point location of seeded random lattice points.
    pub fn completeness(&self, seed: u64, samples: usize) -> Result<CompletenessReport, FanError> {
        let walls = self.walls()?;
        let unpaired_walls: Vec<Cone> = walls
            .iter()
            .filter(|w| w.incident.len() != 2)
            .map(|w| w.cone.clone())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut uncovered = Vec::new();
        for _ in 0..samples {
            let p = loop {
                let p: Vec<i64> = (0..self.n()).map(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)).collect();
                if self.n() == 0 || p.iter().any(|&x| x != 0) {
                    break p;
                }
            };
            if self.locate(&p).is_none() {
                uncovered.push(p);
            }
        }
        let walls_paired = unpaired_walls.is_empty();
        Ok(CompletenessReport {
            complete: walls_paired && uncovered.is_empty(),
            walls_paired,
            unpaired_walls,
            seed,
            samples,
            uncovered_samples: uncovered,
        })
    }

    /// Index of the first full-dimensional maximal cone containing the point.
    pub fn locate(&self, point: &[i64]) -> Option<usize> {
        let x: Vec<Rational> = point.iter().map(|&v| Rational::from_integer(v.into())).collect();
        self.max_cones().iter().position(|c| {
            if c.dim() != self.n() {
                return false;
            }
            let a: Vec<Vec<Rational>> = (0..self.n())
                .map(|i| c.rays().iter().map(|&r| Rational::from_integer(self.ray(r).0[i].into())).collect())
                .collect();
            match solve_square(&a, &x) {
                Some(lambda) => lambda.iter().all(|l| *l >= Rational::from_integer(0.into())),
                None => false,
            }
        })
    }
}
