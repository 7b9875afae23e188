//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use logframe::chartcalc::field::pushforward;
use logframe::chartcalc::form::{d_closed, residue};
use logframe::chartcalc::{vanishing_order, ChartVectorField, Frame, LaurentPoly, MonomialMap, Order};
use logframe::exactnum::{ExactComplex, IntMatrix};
use logframe::fan::projective::ConstraintKind;
use logframe::fan::{Fan, ProjectivityVerdict, StandardFan};
use logframe::logtoric::{
    all_isotropy, betti_numbers, d_invariant, log_transition, snc_certificate, triviality_certificate, Chart,
    TrivialityVerdict,
};
use logframe::semitorus::hopf::AXIOM_REVERSE_IMPLICATION;
use logframe::semitorus::{fiber_product_analyze, hopf_analyze, one_parameter_closure, ClosureVerdict, ExtensionData, HopfDatum, Quotient};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn smooth_charts(fan: &Fan) -> Vec<Chart> {
    fan.max_cones().iter().filter_map(|c| Chart::new(fan, c).ok()).collect()
}

/// Standard fans, corner cuts and the non-projective 3-fan.
fn smooth_complete_corpus() -> Vec<(String, Fan)> {
    let mut out = oracles::standard_fans();
    out.extend(
        oracles::corner_cut_fans()
            .into_iter()
            .enumerate()
            .map(|(k, f)| (format!("corner cut {k}"), f)),
    );
    out.push(("non-projective 3-fan".into(), oracles::nonprojective_3fan()));
    out
}

fn full_corpus() -> Vec<(String, Fan)> {
    let mut out = smooth_complete_corpus();
    out.extend(oracles::nonsmooth_fans());
    out
}

fn toric_triviality() -> Outcome {
    let fans = oracles::standard_fans();
    for (name, fan) in &fans {
        ensure(fan.is_smooth(), format!("{name}: not smooth"))?;
        ensure(fan.is_complete().map_err(|e| e.to_string())?.complete, format!("{name}: not complete"))?;
        let proj = fan.is_projective().map_err(|e| e.to_string())?;
        ensure(proj.verdict == ProjectivityVerdict::Feasible && proj.verify(fan), format!("{name}: projectivity"))?;
        let cert = triviality_certificate(fan);
        ensure(cert.is_trivial() && cert.verify().is_ok(), format!("{name}: frame certificate"))?;
        snc_certificate(fan).map_err(|e| format!("{name}: {e}"))?;
        ensure(all_isotropy(fan).iter().all(|r| r.is_semi_torus), format!("{name}: isotropy"))?;
    }
    Ok(format!("{} fans", fans.len()))
}

fn detector_equivalence() -> Outcome {
    let mut fans: Vec<(String, Fan)> = oracles::corner_cut_fans()
        .into_iter()
        .enumerate()
        .map(|(k, f)| (format!("corner cut {k}"), f))
        .collect();
    fans.extend(oracles::nonsmooth_fans());
    let mut smooth_count = 0;
    for (name, fan) in &fans {
        let smooth = fan.is_smooth();
        let snc = snc_certificate(fan).is_ok();
        let trivial = triviality_certificate(fan).verdict == TrivialityVerdict::Trivial;
        let isotropy = all_isotropy(fan).iter().all(|r| r.is_semi_torus);
        ensure(
            [snc, trivial, isotropy] == [smooth; 3],
            format!("{name}: smooth={smooth} snc={snc} trivial={trivial} isotropy={isotropy}"),
        )?;
        smooth_count += usize::from(smooth);
    }
    ensure(smooth_count == 20, "expected 20 smooth and 5 non-smooth fans")?;
    Ok(format!("{} fans, {} smooth", fans.len(), smooth_count))
}

fn inversion_and_gaussian_closure() -> Outcome {
    let v = ChartVectorField::new(Frame::Ordinary, vec![LaurentPoly::one(1)], BTreeSet::new()).map_err(|e| e.to_string())?;
    let inversion = MonomialMap::new(IntMatrix::from_rows(&[vec![-1]])).map_err(|e| e.to_string())?;
    let w = pushforward(&v, &inversion, Some(&[0].into())).map_err(|e| e.to_string())?;
    let ord = vanishing_order(&w, 0, Frame::Ordinary).map_err(|e| e.to_string())?;
    let log = vanishing_order(&w, 0, Frame::Log).map_err(|e| e.to_string())?;
    ensure(ord == Order::Finite(2.into()) && log == Order::Finite(1.into()), format!("orders {ord}, {log}"))?;

    let r = one_parameter_closure(&ExactComplex::from_int(1), &ExactComplex::i()).map_err(|e| e.to_string())?;
    ensure(r.verdict == ClosureVerdict::Closed, "(1, i) is not closed")?;
    ensure(!r.subgroup_is_semi_torus, "(1, i) reported as semi-torus")?;
    let Quotient::CompactTorus { lattice } = &r.quotient else {
        return Err("quotient is not a compact torus".into());
    };
    // ℤω₁ + ℤω₂ = ℤ[i] iff both are Gaussian integers with determinant ±1
    let parts: Option<Vec<BigInt>> = lattice
        .iter()
        .flat_map(|z| [&z.re, &z.im])
        .map(|x| x.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer()))
        .collect();
    let p = parts.ok_or("lattice generators are not Gaussian integers")?;
    let det = &p[0] * &p[3] - &p[1] * &p[2];
    ensure(det.abs() == BigInt::from(1), "lattice is not Z[i]")?;
    Ok(format!("orders (2, 1); quotient lattice generated by {}, {}", lattice[0], lattice[1]))
}

fn hopf() -> Outcome {
    let r = hopf_analyze(&HopfDatum {
        alpha: ExactComplex::from_int(2),
        beta: ExactComplex::from_int(2),
    })
    .map_err(|e| e.to_string())?;
    ensure(r.orbit_count == 3, "orbit count")?;
    let mut dims = r.isotropy_dims.clone();
    dims.sort();
    ensure(dims == [0, 1, 1], format!("isotropy dims {dims:?}"))?;
    let positive: Vec<_> = r.orbits.iter().filter(|o| o.isotropy_dim == 1).collect();
    ensure(positive.iter().all(|o| o.isotropy_type == "C*" && o.isotropy_is_semi_torus), "isotropy type")?;
    ensure(r.b1.value % 2 == 1 && r.b1.source.starts_with("axiom:"), "b1 must be odd and tagged as an axiom")?;
    ensure(!r.kaehler.value, "reported Kähler")?;
    ensure(
        r.isotropy_condition_holds && r.log_tangent_trivial.value && r.log_tangent_trivial.source == AXIOM_REVERSE_IMPLICATION,
        "trivial-frame conclusion",
    )?;
    Ok(format!("3 orbits, isotropy {dims:?}, b1 = {} ({})", r.b1.value, r.b1.source))
}

fn residue_normalization() -> Outcome {
    let mut charts = 0;
    for (name, fan) in full_corpus() {
        for ch in smooth_charts(&fan) {
            let k = ch.cone.dim();
            let r = ch.residue_matrix(&ch.dual_basis()[..k]).map_err(|e| e.to_string())?;
            ensure(r.is_identity(), format!("{name}: chart {}", ch.cone))?;
            charts += 1;
        }
    }
    Ok(format!("{charts} charts"))
}

fn cocycle_and_coherence() -> Outcome {
    let mut triples = 0usize;
    for (name, fan) in full_corpus() {
        let cs = smooth_charts(&fan);
        let cert = triviality_certificate(&fan);
        for (a, ca) in cs.iter().zip(&cert.charts) {
            for (b, cb) in cs.iter().zip(&cert.charts) {
                let ab = log_transition(a, b);
                ensure(ca.matrix == &ab * &cb.matrix, format!("{name}: frame incoherent"))?;
                for c in &cs {
                    ensure(log_transition(a, c) == &ab * &log_transition(b, c), format!("{name}: cocycle"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} chart triples"))
}

fn betti_and_d_invariant() -> Outcome {
    let fans = smooth_complete_corpus();
    for (name, fan) in &fans {
        let b = betti_numbers(fan).map_err(|e| e.to_string())?;
        ensure(b == oracles::poincare_betti(fan), format!("{name}: Betti mismatch"))?;
        ensure(b[1].is_zero(), format!("{name}: b1 = {}", b[1]))?;
        ensure(d_invariant(fan).map_err(|e| e.to_string())? == fan.n(), format!("{name}: d"))?;
    }
    let one = ExactComplex::from_int(1);
    let e = ExtensionData::new(1, 1, vec![vec![one.clone()], vec![ExactComplex::i()]], vec![vec![one.clone()], vec![one]])
        .map_err(|e| e.to_string())?;
    let r = fiber_product_analyze(&e, &Fan::standard(StandardFan::ProjectiveSpace(1))).map_err(|e| e.to_string())?;
    let s = &r.exact_sequence;
    ensure(r.b1 == 2 && r.d_invariant == 1 && r.d_invariant_matches_rank, "E x P^1 invariants")?;
    ensure((s.kernel, s.group, s.albanese) == (1, 2, 1) && s.kernel + s.albanese == s.group, "exact sequence")?;
    Ok(format!("{} fans match the oracle; E x P^1: b1 = 2, d = 1", fans.len()))
}

fn projectivity_lp() -> Outcome {
    let mut feasible: Vec<(String, Fan)> = vec![
        ("P^2".into(), Fan::standard(StandardFan::ProjectiveSpace(2))),
        ("F_1".into(), Fan::standard(StandardFan::Hirzebruch(1))),
    ];
    feasible.extend(
        oracles::corner_cut_fans()
            .into_iter()
            .enumerate()
            .map(|(k, f)| (format!("corner cut {k}"), f)),
    );
    for (name, fan) in &feasible {
        let c = fan.is_projective().map_err(|e| e.to_string())?;
        ensure(c.verdict == ProjectivityVerdict::Feasible && c.verify(fan), name.clone())?;
    }
    let fan = oracles::nonprojective_3fan();
    let c = fan.is_projective().map_err(|e| e.to_string())?;
    ensure(c.verdict == ProjectivityVerdict::Infeasible && c.verify(&fan), "non-projective fan")?;
    ensure(matches!(oracles::fm_projective(&fan), oracles::FmOutcome::Infeasible(_)), "elimination disagrees")?;
    // the witness's strict multipliers must cancel the elimination rows
    let rows = oracles::wall_rows(&fan);
    let mut y = vec![oracles::Q::zero(); rows.len()];
    for e in c.farkas.iter().filter(|e| e.constraint.kind == ConstraintKind::Strict) {
        let k = rows
            .iter()
            .position(|w| w.cone == e.constraint.cone && w.neighbor == e.constraint.neighbor && w.off_ray == e.constraint.ray)
            .ok_or("strict row unknown to the oracle")?;
        ensure(e.multiplier.is_positive(), "negative strict multiplier")?;
        y[k] = e.multiplier.clone();
    }
    ensure(y.iter().any(|x| !x.is_zero()), "no strict rows in the witness")?;
    ensure(oracles::combine(&rows, &y).iter().all(Zero::is_zero), "witness does not cancel")?;
    Ok(format!("{} feasible certificates; infeasible witness with {} entries", feasible.len(), c.farkas.len()))
}

fn chartcalc_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let v = oracles::random::log_field(&mut rng);
        ensure(v.from_log_frame().to_log_frame().ok().as_ref() == Some(&v), format!("round trip, instance {k}"))?;
        let a = oracles::random::monomial_map(&mut rng, v.n());
        let b = oracles::random::monomial_map(&mut rng, v.n());
        let step = pushforward(&v, &a, None).and_then(|w| pushforward(&w, &b, None));
        ensure(step.ok() == pushforward(&v, &a.then(&b), None).ok(), format!("functoriality, instance {k}"))?;
    }
    for k in 0..100 {
        let w = oracles::random::closed_form(&mut rng);
        ensure(d_closed(&w).closed, format!("form {k} not closed"))?;
        for &i in &w.divisor {
            let r = residue(&w, i).map_err(|e| e.to_string())?;
            ensure(r.is_constant(), format!("form {k}: residue {r}"))?;
            ensure(w.divisor.iter().all(|&j| j == i || r.derivative(j).is_zero()), format!("form {k}"))?;
        }
    }
    Ok("200 field instances, 100 closed forms".into())
}

fn binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_logframe"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn family_scan() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut fans: Vec<Fan> = oracles::corner_cut_fans();
    fans.extend(oracles::nonsmooth_fans().into_iter().map(|(_, f)| f));
    let mut members = Vec::new();
    for (k, fan) in fans.iter().enumerate() {
        let file = format!("member{k:02}.fan");
        std::fs::write(dir.path().join(&file), serde_json::to_string(&fan.to_data()).unwrap()).map_err(|e| e.to_string())?;
        members.push(json!({"id": format!("m{k:02}"), "fan": file}));
    }
    ensure(members.len() == 25, "manifest size")?;
    let manifest = dir.path().join("family.json");
    std::fs::write(&manifest, json!({ "members": members }).to_string()).map_err(|e| e.to_string())?;
    let m = manifest.to_str().unwrap();

    let first = binary(&["--format", "structured", "family", "scan", m])?;
    let second = binary(&["--format", "structured", "family", "scan", m])?;
    ensure(first == second, "structured reports differ between runs")?;
    ensure(binary(&["family", "scan", m])? == binary(&["family", "scan", m])?, "text reports differ")?;

    let report: Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let s: Vec<u64> = report["s"].as_array().ok_or("no S")?.iter().filter_map(Value::as_u64).collect();
    let mut expected = Vec::new();
    for k in 0..fans.len() {
        let path = dir.path().join(format!("member{k:02}.fan"));
        let cert: Value = serde_json::from_slice(&binary(&["--format", "structured", "fan", "frame-cert", path.to_str().unwrap()])?)
            .map_err(|e| e.to_string())?;
        if cert["verdict"] == "trivial" {
            expected.push(k as u64);
        }
    }
    ensure(s == expected, format!("S = {s:?}, frame-cert verdicts give {expected:?}"))?;
    Ok(format!("|S| = {} of 25, reports byte-identical", s.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("toric triviality suite", toric_triviality),
        ("detector equivalence", detector_equivalence),
        ("inversion chart and Gaussian closure", inversion_and_gaussian_closure),
        ("diagonal Hopf surface", hopf),
        ("residue normalization", residue_normalization),
        ("cocycle and frame coherence", cocycle_and_coherence),
        ("Betti numbers and d-invariant", betti_and_d_invariant),
        ("projectivity LP", projectivity_lp),
        ("chart calculus properties", chartcalc_properties),
        ("family scan", family_scan),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {reason}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

