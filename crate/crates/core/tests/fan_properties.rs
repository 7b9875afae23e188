mod oracles;

use logframe::fan::validate::Violation;
use logframe::fan::{Fan, FanData, StandardFan};

#[test]
fn serialization_round_trips() {
    let mut fans: Vec<Fan> = oracles::standard_fans().into_iter().map(|(_, f)| f).collect();
    fans.extend(oracles::corner_cut_fans());
    fans.extend(oracles::nonsmooth_fans().into_iter().map(|(_, f)| f));
    for fan in fans {
        let text = serde_json::to_string(&fan.to_data()).unwrap();
        let back: FanData = serde_json::from_str(&text).unwrap();
        assert_eq!(Fan::from_data(back).unwrap(), fan);
    }
}

#[test]
fn walls_in_complete_fans_are_shared_by_two_cones() {
    for (name, fan) in oracles::standard_fans() {
        let walls = fan.walls().unwrap();
        // each maximal cone has n walls, each wall counted twice
        assert_eq!(2 * walls.len(), fan.n() * fan.max_cones().len(), "{name}");
        assert!(walls.iter().all(|w| w.incident.len() == 2));
    }
    let affine = Fan::standard(StandardFan::AffineSpace(2));
    let report = affine.is_complete().unwrap();
    assert!(!report.complete && report.unpaired_walls.len() == 2);
}

#[test]
fn sampled_completeness_agrees_with_wall_pairing() {
    for fan in oracles::corner_cut_fans() {
        let r = fan.completeness(11, 200).unwrap();
        assert!(r.complete && r.uncovered_samples.is_empty());
    }
    for (name, fan) in oracles::nonsmooth_fans() {
        let paired = fan.is_complete().unwrap().complete;
        let sampled = fan.completeness(11, 200).unwrap();
        assert_eq!(paired, sampled.uncovered_samples.is_empty(), "{name}");
    }
}

#[test]
fn validation_reports_each_defect() {
    let check = |rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>| Fan::new(2, rays, cones).unwrap().validate();
    let r = check(vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]);
    assert!(matches!(r.violations[..], [Violation::NonPrimitive { ray: 0, content: 2 }]));
    let r = check(vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]);
    assert!(r.violations.contains(&Violation::NotStronglyConvex { cone: 0 }));
    let r = check(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0]]);
    assert!(r.violations.contains(&Violation::NotMaximal { cone: 1, contained_in: 0 }));
    let r = check(vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::BadIntersection { .. })));
    let r = check(vec![vec![1, 0], vec![0, 1], vec![1, 0]], vec![vec![0, 1]]);
    assert!(r.violations.contains(&Violation::DuplicateRay { first: 0, second: 2 }));
    for (name, fan) in oracles::nonsmooth_fans() {
        assert!(fan.validate().valid, "{name}");
    }
    assert!(oracles::nonprojective_3fan().validate().valid);
}

#[test]
fn star_subdivision_keeps_fans_smooth_and_complete() {
    for (name, fan) in oracles::standard_fans() {
        if fan.n() > 3 {
            continue;
        }
        for cone in fan.cones_of_dim(2) {
            let sub = fan.star_subdivide(&cone).unwrap();
            assert!(sub.is_valid() && sub.is_smooth(), "{name}");
            assert!(sub.is_complete().unwrap().complete, "{name}");
            assert_eq!(sub.rays().len(), fan.rays().len() + 1);
        }
    }
}
