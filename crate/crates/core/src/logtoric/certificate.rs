//! Global frame certificates for `T(−log D)` on toric varieties.
//!
//! A lattice basis `F` of `N` gives global sections of `T(−log D)` (the
//! fundamental fields of the torus action). In the chart of σ their
//! log-frame coefficients are the columns of `C_σ = R_σ⁻¹·F`; the bundle is
//! trivialized by them iff every `C_σ` is unimodular.

use serde::{Deserialize, Serialize};

use super::{charts, log_transition, Chart};
use crate::exactnum::IntMatrix;
use crate::fan::{Cone, Fan, FanData, NonSmoothCone};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialityVerdict {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFrame {
    pub cone: Cone,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivialityCertificate {
    pub schema_version: u32,
    pub verdict: TrivialityVerdict,
    pub fan: FanData,
    pub frame: IntMatrix,
    /// One entry per smooth maximal cone, in cone order.
    pub charts: Vec<ChartFrame>,
    /// First non-smooth maximal cone, when the verdict is nontrivial.
    pub failure: Option<NonSmoothCone>,
}

impl TrivialityCertificate {
    /// Builds the certificate for the standard frame `e₁…eₙ`.
    pub fn build(fan: &Fan) -> TrivialityCertificate {
        let frame = IntMatrix::identity(fan.n());
        let smooth = fan.smoothness();
        let charts = fan
            .max_cones()
            .iter()
            .filter_map(|c| Chart::new(fan, c).ok())
            .map(|ch| ChartFrame {
                matrix: &ch.inverse * &frame,
                cone: ch.cone,
            })
            .collect();
        TrivialityCertificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            verdict: if smooth.smooth {
                TrivialityVerdict::Trivial
            } else {
                TrivialityVerdict::Nontrivial
            },
            fan: fan.to_data(),
            frame,
            charts,
            failure: smooth.failures.into_iter().next(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.verdict == TrivialityVerdict::Trivial
    }

    /// Independent re-check of every claim in the certificate. Returns the
    /// first reason for rejection.
    pub fn verify(&self) -> Result<(), String> {
        if self.schema_version != CERTIFICATE_SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", self.schema_version));
        }
        let fan = Fan::from_data(self.fan.clone()).map_err(|e| format!("fan: {e}"))?;
        let report = fan.validate();
        if !report.valid {
            return Err(format!("fan is not valid: {:?}", report.violations));
        }
        let n = fan.n();
        if self.frame.rows() != n || self.frame.cols() != n || !self.frame.is_unimodular() {
            return Err("frame is not a lattice basis".into());
        }

        // which maximal cones must carry a chart, and where the first failure is
        let mut expected = Vec::new();
        let mut first_failure = None;
        for (i, c) in fan.max_cones().iter().enumerate() {
            if fan.is_cone_smooth(c) {
                expected.push(c.clone());
            } else if first_failure.is_none() {
                first_failure = Some(i);
            }
        }
        let listed: Vec<Cone> = self.charts.iter().map(|c| c.cone.clone()).collect();
        if listed != expected {
            return Err("chart list does not match the smooth maximal cones".into());
        }

        match (self.verdict, &self.failure, first_failure) {
            (TrivialityVerdict::Trivial, None, None) => {}
            (TrivialityVerdict::Nontrivial, Some(f), Some(i)) => {
                let cone = &fan.max_cones()[i];
                if f.index != i || &f.cone != cone {
                    return Err("failure site is not the first non-smooth cone".into());
                }
                let factors = fan.ray_matrix(cone).smith_normal_form().invariant_factors();
                if factors != f.invariant_factors {
                    return Err("failure invariant factors do not match".into());
                }
            }
            _ => return Err("verdict inconsistent with the smoothness of the fan".into()),
        }

        let frame_inv = self.frame.invert_unimodular().map_err(|e| e.to_string())?;
        let mut rebuilt = Vec::with_capacity(self.charts.len());
        for ch in &self.charts {
            if ch.matrix.rows() != n || ch.matrix.cols() != n {
                return Err(format!("chart {} has the wrong shape", ch.cone));
            }
            let c_inv = ch
                .matrix
                .invert_unimodular()
                .map_err(|_| format!("chart {} matrix is not unimodular", ch.cone))?;
            // R_σ = F·C_σ⁻¹ must start with the cone's generators
            let r = &self.frame * &c_inv;
            for (j, &ray) in ch.cone.rays().iter().enumerate() {
                if r.column(j) != fan.ray(ray).to_bigints() {
                    return Err(format!("chart {} does not frame the cone's rays", ch.cone));
                }
            }
            rebuilt.push((r, c_inv));
        }
        // coherence C_σ = T_{σσ′}·C_σ′ with T = R_σ⁻¹R_σ′
        for a in 0..self.charts.len() {
            for b in 0..self.charts.len() {
                let r_a_inv = &self.charts[a].matrix * &frame_inv;
                let t = &r_a_inv * &rebuilt[b].0;
                if &t * &self.charts[b].matrix != self.charts[a].matrix {
                    return Err(format!(
                        "frame incoherent between {} and {}",
                        self.charts[a].cone, self.charts[b].cone
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Whether `C_σ = T_{σσ′}·C_σ′` for every pair of charts of a smooth fan.
pub fn frame_coherent(fan: &Fan) -> bool {
    let Ok(cs) = charts(fan) else {
        return false;
    };
    cs.iter().all(|a| {
        cs.iter()
            .all(|b| &log_transition(a, b) * &b.inverse == a.inverse)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::StandardFan;

    #[test]
    fn p2_certificate() {
        let f = Fan::standard(StandardFan::ProjectiveSpace(2));
        let cert = TrivialityCertificate::build(&f);
        assert!(cert.is_trivial());
        assert_eq!(cert.charts.len(), 3);
        assert!(cert.charts.iter().all(|c| c.matrix.is_unimodular()));
        cert.verify().unwrap();
    }

    #[test]
    fn non_smooth_certificate() {
        let f = Fan::new(2, vec![vec![1, 1], vec![1, -1], vec![-1, 0]], vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(f.is_valid());
        let cert = TrivialityCertificate::build(&f);
        assert_eq!(cert.verdict, TrivialityVerdict::Nontrivial);
        assert_eq!(cert.failure.as_ref().unwrap().cone, Cone::new(vec![0, 1]));
        cert.verify().unwrap();
    }

    #[test]
    fn affine_space_is_trivial() {
        let f = Fan::standard(StandardFan::AffineSpace(3));
        let cert = TrivialityCertificate::build(&f);
        assert!(cert.is_trivial());
        assert!(cert.charts[0].matrix.is_identity());
        cert.verify().unwrap();
    }

    #[test]
    fn tampering_is_detected() {
        let f = Fan::standard(StandardFan::ProjectiveSpace(2));
        let mut cert = TrivialityCertificate::build(&f);
        cert.charts[1].matrix[(0, 1)] += 1;
        assert!(cert.verify().is_err());
        let mut cert = TrivialityCertificate::build(&f);
        cert.verdict = TrivialityVerdict::Nontrivial;
        assert!(cert.verify().is_err());
    }

    #[test]
    fn coherence_on_hirzebruch() {
        assert!(frame_coherent(&Fan::standard(StandardFan::Hirzebruch(2))));
    }
}
