mod oracles;

use std::collections::BTreeSet;

use logframe::exactnum::IntMatrix;
use logframe::fan::{Fan, StandardFan};
use logframe::logtoric::{
    all_isotropy, charts, frame_coherent, log_transition, snc_certificate, strata_census, triviality_certificate,
    Chart, TrivialityVerdict,
};
use num_bigint::BigInt;

/// Every fan in the test corpus, smooth or not.
fn corpus() -> Vec<(String, Fan)> {
    let mut out = oracles::standard_fans();
    out.extend(
        oracles::corner_cut_fans()
            .into_iter()
            .enumerate()
            .map(|(k, f)| (format!("corner cut {k}"), f)),
    );
    out.push(("non-projective 3-fan".into(), oracles::nonprojective_3fan()));
    out.push(("C^3".into(), Fan::standard(StandardFan::AffineSpace(3))));
    out.extend(oracles::nonsmooth_fans());
    out
}

fn smooth_charts(fan: &Fan) -> Vec<Chart> {
    fan.max_cones().iter().filter_map(|c| Chart::new(fan, c).ok()).collect()
}

#[test]
fn transition_cocycle_on_all_triples() {
    for (name, fan) in corpus() {
        let cs = smooth_charts(&fan);
        for a in &cs {
            assert!(log_transition(a, a).is_identity(), "{name}");
            for b in &cs {
                let ab = log_transition(a, b);
                assert!(ab.is_unimodular(), "{name}");
                for c in &cs {
                    assert_eq!(log_transition(a, c), &ab * &log_transition(b, c), "{name}");
                }
            }
        }
    }
}

#[test]
fn frame_coherence_on_all_pairs() {
    for (name, fan) in corpus() {
        let cert = triviality_certificate(&fan);
        let cs = smooth_charts(&fan);
        assert_eq!(cert.charts.len(), cs.len());
        for (a, fa) in cs.iter().zip(&cert.charts) {
            for (b, fb) in cs.iter().zip(&cert.charts) {
                assert_eq!(fa.matrix, &log_transition(a, b) * &fb.matrix, "{name}");
            }
        }
        assert_eq!(frame_coherent(&fan), fan.is_smooth(), "{name}");
        assert_eq!(cert.verify(), Ok(()), "{name}");
    }
}

#[test]
fn dual_basis_residues_are_the_identity() {
    for (name, fan) in corpus() {
        for ch in smooth_charts(&fan) {
            let k = ch.cone.dim();
            let dual = ch.dual_basis();
            let r = ch.residue_matrix(&dual[..k]).unwrap();
            assert!(r.is_identity(), "{name}: {:?}", ch.cone);
            // characters off the cone have no residue along its divisors
            let rest = ch.residue_matrix(&dual[k..]).unwrap();
            assert!(rest.to_rows().iter().flatten().all(|x| x == &BigInt::from(0)), "{name}");
        }
    }
}

#[test]
fn four_detectors_agree() {
    for (name, fan) in corpus() {
        let smooth = fan.is_smooth();
        let snc = snc_certificate(&fan).is_ok();
        let cert = triviality_certificate(&fan);
        assert_eq!(cert.verify(), Ok(()), "{name}");
        let trivial = cert.verdict == TrivialityVerdict::Trivial;
        let isotropy = all_isotropy(&fan).iter().all(|r| r.is_semi_torus);
        assert_eq!([snc, trivial, isotropy], [smooth; 3], "{name}");
    }
    for (name, fan) in oracles::nonsmooth_fans() {
        assert!(!fan.is_smooth(), "{name}");
        assert_eq!(fan.smoothness().failures.len(), 1, "{name}");
    }
}

#[test]
fn failure_cone_is_the_nonsmooth_one() {
    for (name, fan) in oracles::nonsmooth_fans() {
        let cert = triviality_certificate(&fan);
        let failure = cert.failure.expect("nontrivial certificates name a cone");
        assert!(!fan.is_cone_smooth(&failure.cone), "{name}");
        let bad = all_isotropy(&fan).into_iter().find(|r| !r.is_semi_torus).unwrap();
        assert!(bad.saturation_index > BigInt::from(1), "{name}");
    }
}

#[test]
fn census_counts_faces() {
    for (name, fan) in corpus() {
        let census = strata_census(&fan);
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in fan.max_cones() {
            let r = c.rays();
            for mask in 0u32..(1 << r.len()) {
                faces.insert((0..r.len()).filter(|i| mask >> i & 1 == 1).map(|i| r[i]).collect());
            }
        }
        for (k, count) in &census.counts {
            assert_eq!(*count, faces.iter().filter(|f| f.len() == *k).count(), "{name}");
        }
        assert_eq!(census.counts.values().sum::<usize>(), faces.len(), "{name}");
    }
    let p3 = strata_census(&Fan::standard(StandardFan::ProjectiveSpace(3)));
    assert_eq!(p3.counts.values().copied().collect::<Vec<_>>(), vec![1, 4, 6, 4]);
}

#[test]
fn standard_fans_pass_every_check() {
    for (name, fan) in oracles::standard_fans() {
        assert!(fan.is_smooth() && fan.is_complete().unwrap().complete, "{name}");
        assert!(triviality_certificate(&fan).is_trivial(), "{name}");
        let snc = snc_certificate(&fan).unwrap();
        assert!(snc.charts.iter().all(|c| c.equation.matches('z').count() == fan.n()));
        assert!(all_isotropy(&fan).iter().all(|r| r.is_semi_torus), "{name}");
        for ch in charts(&fan).unwrap() {
            assert_eq!(&ch.ray_matrix * &ch.inverse, IntMatrix::identity(fan.n()));
        }
    }
}
