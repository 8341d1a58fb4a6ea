use super::*;
use crate::gluecat::{compile, hom_global, LocalSystem};
use crate::graph::first_betti;
use crate::graph::fixtures::{pants_unit, theta_area, theta_unit};
use crate::scalars::q_pow;

fn cycle12() -> CurveObject {
    CurveObject::closed(vec![Step::through("v1", "h12", "h11"), Step::through("v2", "h21", "h22")])
}
fn cycle23() -> CurveObject {
    CurveObject::closed(vec![Step::through("v1", "h13", "h12"), Step::through("v2", "h22", "h23")])
}
fn commutator() -> CurveObject {
    CurveObject::closed(vec![
        Step::through("v1", "h13", "h11"),
        Step::through("v2", "h21", "h22"),
        Step::through("v1", "h12", "h13"),
        Step::through("v2", "h23", "h21"),
        Step::through("v1", "h11", "h12"),
        Step::through("v2", "h22", "h23"),
    ])
}

fn t2_voltages(g: &DecoratedGraph) -> VoltageAssignment {
    VoltageAssignment::new(g, ["t2".to_string()].into()).unwrap()
}

#[test]
fn radius_zero_window_of_theta() {
    let g = theta_unit();
    let w = build_cover_window(&g, &t2_voltages(&g), 0).unwrap();
    let edges = w.graph.edges();
    assert_eq!(w.graph.vertices().len(), 2);
    assert_eq!(edges.values().filter(|e| e.compact).count(), 1);
    assert_eq!(edges.values().filter(|e| !e.compact).count(), 4);
    assert!(edges["t2@0,0"].compact);
    assert_eq!(first_betti(&w.graph), 0);
}

#[test]
fn window_site_count() {
    let g = theta_unit();
    for n in 1..=2u32 {
        let w = build_cover_window(&g, &t2_voltages(&g), n).unwrap();
        assert_eq!(w.graph.vertices().len(), 2 * (2 * n as usize + 1).pow(2));
    }
}

#[test]
fn deck_translation_moves_window_into_larger_window() {
    let g = theta_unit();
    let small = build_cover_window(&g, &t2_voltages(&g), 1).unwrap();
    let big = build_cover_window(&g, &t2_voltages(&g), 2).unwrap();
    for delta in box_sites(2, 1) {
        for (v, (base, z)) in &small.vertex_site {
            let moved = lift_name(base, &add(z, &delta));
            assert!(big.vertex_site.contains_key(&moved), "{v} moved by {delta:?}");
        }
    }
}

#[test]
fn noncompact_base_is_rejected() {
    let g = pants_unit();
    assert!(matches!(VoltageAssignment::new(&g, BTreeSet::new()), Err(CoverError::NoncompactEdge(_))));
}

#[test]
fn curve_classes() {
    let g = theta_unit();
    let v = t2_voltages(&g);
    assert_eq!(curve_class(&g, &v, &cycle12()).unwrap(), vec![1, 0]);
    assert_eq!(curve_class(&g, &v, &commutator()).unwrap(), vec![0, 0]);
    let sums = partial_sums(&g, &v, &commutator()).unwrap();
    let expect = [[0, 0], [1, 0], [1, 0], [1, 1], [0, 1], [0, 1], [0, 0]];
    assert_eq!(sums, expect.map(|z| z.to_vec()).to_vec());
    // t1 forward twice, t3 backward once
    let back = CurveObject::closed(vec![
        Step::through("v1", "h12", "h11"),
        Step::through("v2", "h21", "h23"),
        Step::through("v1", "h13", "h11"),
        Step::through("v2", "h21", "h22"),
    ]);
    let rev = CurveObject::closed(vec![Step::through("v1", "h11", "h12"), Step::through("v2", "h22", "h21")]);
    assert_eq!(curve_class(&g, &v, &rev).unwrap(), vec![-1, 0]);
    assert_eq!(curve_class(&g, &v, &back).unwrap(), vec![2, -1]);
}

#[test]
fn commutator_lifts_are_compact() {
    let g = theta_unit();
    let v = t2_voltages(&g);
    let lifts = lift_curve(&g, &v, &commutator(), 1).unwrap();
    assert_eq!(lifts.len(), 4);
    let w = build_cover_window(&g, &v, 1).unwrap();
    for l in &lifts {
        assert_eq!(l.curve.kind, CurveKind::Closed);
        l.curve.validate(&w.graph).unwrap();
    }
    let base = lifts.iter().find(|l| l.anchor == vec![0, 0]).unwrap();
    let footprint: BTreeSet<Site> = base.sites.iter().cloned().collect();
    assert_eq!(footprint, [vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]].into());
    let fam = pullback_curve(&g, &v, &commutator(), 1).unwrap();
    let i = fam.lifts.iter().position(|l| l.anchor == vec![-1, -1]).unwrap();
    let j = fam.translate(i, &[1, 1]).unwrap();
    assert_eq!(fam.lifts[j].anchor, vec![0, 0]);
    assert!(fam.fixes(j, &[0, 0]) && !fam.fixes(j, &[1, 0]));
}

#[test]
fn class_e1_lifts_are_arcs_fixed_by_e1() {
    let g = theta_unit();
    let v = t2_voltages(&g);
    let w = build_cover_window(&g, &v, 1).unwrap();
    let fam = pullback_curve(&g, &v, &cycle12(), 1).unwrap();
    assert_eq!(fam.lifts.len(), 3);
    for (i, l) in fam.lifts.iter().enumerate() {
        assert_eq!(l.curve.kind, CurveKind::Arc);
        l.curve.validate(&w.graph).unwrap();
        assert!(fam.fixes(i, &[1, 0]) && fam.fixes(i, &[-2, 0]));
        assert!(!fam.fixes(i, &[0, 1]));
    }
    let levels: BTreeSet<i64> = fam.lifts.iter().map(|l| l.sites[0][1]).collect();
    assert_eq!(levels, [-1, 0, 1].into());
    // e2-translates permute the components
    assert!(fam.translate(0, &[0, 1]).is_some());
}

#[test]
fn empty_and_arc_inputs() {
    let g = theta_unit();
    let v = t2_voltages(&g);
    assert!(lift_curve(&g, &v, &CurveObject::closed(vec![]), 1).unwrap().is_empty());
    let arc = CurveObject::arc(vec![Step::through("v1", "h12", "h11")]);
    assert!(matches!(lift_curve(&g, &v, &arc, 1), Err(CoverError::ArcInput)));
}

#[test]
fn restriction_keeps_inner_lifts_and_composes() {
    let g = theta_unit();
    let v = t2_voltages(&g);
    for c in [commutator(), cycle12()] {
        let big = lift_curve(&g, &v, &c, 2).unwrap();
        let once = window_restrict(&g, &c, &big, 2, 0).unwrap();
        let twice = window_restrict(&g, &c, &window_restrict(&g, &c, &big, 2, 1).unwrap(), 1, 0).unwrap();
        let key = |ls: &[Lift]| -> BTreeSet<(Vec<Site>, Vec<usize>)> {
            ls.iter().map(|l| (l.sites.clone(), l.base_steps.clone())).collect()
        };
        assert_eq!(key(&once), key(&twice));
        let w0 = build_cover_window(&g, &v, 0).unwrap();
        for l in &once {
            l.curve.validate(&w0.graph).unwrap();
        }
    }
    let big = lift_curve(&g, &v, &commutator(), 2).unwrap();
    let inner = window_restrict(&g, &commutator(), &big, 2, 1).unwrap();
    for l in lift_curve(&g, &v, &commutator(), 1).unwrap() {
        assert!(inner.contains(&l));
    }
    assert!(matches!(window_restrict(&g, &commutator(), &big, 1, 1), Err(CoverError::RadiusOrder { .. })));
}

#[test]
fn equivariant_hom_matches_base() {
    let g = theta_area();
    let v = t2_voltages(&g);
    let twisted = cycle12().with_local_system(LocalSystem::scalar(q_pow(1, 2)));
    let curves = [cycle12(), commutator(), twisted];
    for a in &curves {
        for b in &curves {
            let base = hom_global(&g, &compile(&g, a).unwrap(), &compile(&g, b).unwrap(), 6).unwrap();
            let (eq, n0) = stabilized_equivariant_hom(&g, &v, a, b, 6, 3).unwrap();
            assert!(n0 <= 3);
            assert_eq!(eq.stable_dims(), base.stable_dims());
        }
    }
}
