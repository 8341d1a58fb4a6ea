use super::*;
use crate::graph::fixtures::{pants_unit, theta_area, theta_unit};
use crate::graph::{gauge_transform, EdgeOrientation, GaugeChain};
use crate::mfcore::HomReport;
use crate::scalars::{q_pow, NovikovElement};
use rand::SeedableRng;

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

fn dims(r: &HomReport) -> (Vec<usize>, Vec<usize>) {
    r.stable_dims()
}

fn totals(g: &crate::graph::DecoratedGraph, a: &CurveObject, b: &CurveObject, w: u32) -> (usize, usize) {
    let (sa, sb) = (compile(g, a).unwrap(), compile(g, b).unwrap());
    hom_global(g, &sa, &sb, w).unwrap().stable_totals()
}

#[test]
fn compiled_cycle_has_one_summand_per_visit() {
    let g = theta_area();
    let s = compile(&g, &cycle12()).unwrap();
    s.validate(&g).unwrap();
    assert_eq!(s.vertex_objects["v1"].len(), 1);
    assert_eq!(s.vertex_objects["v2"].len(), 1);
    assert_eq!(s.edge_objects["t1"].len(), 1);
    assert_eq!(s.edge_objects["t2"].len(), 1);
    assert!(!s.edge_objects.contains_key("t3"));
    let c = compile(&g, &commutator()).unwrap();
    assert_eq!(c.vertex_objects["v1"].len(), 3);
    assert_eq!(c.edge_objects.values().map(Vec::len).sum::<usize>(), 6);
}

#[test]
fn rank_two_system_doubles_summands() {
    let g = theta_unit();
    let c = cycle12().with_local_system(LocalSystem::identity(2));
    let s = compile(&g, &c).unwrap();
    assert_eq!(s.vertex_objects["v1"].len(), 2);
    assert_eq!(hom_global(&g, &s, &s, 6).unwrap().stable_totals(), (4, 4));
}

#[test]
fn empty_curve_compiles_to_zero() {
    let g = theta_unit();
    let s = compile(&g, &CurveObject::closed(vec![])).unwrap();
    assert!(s.is_zero());
    let t = compile(&g, &cycle12()).unwrap();
    assert_eq!(hom_global(&g, &s, &t, 4).unwrap().stable_totals(), (0, 0));
}

#[test]
fn non_adjacent_step_is_rejected() {
    let g = theta_unit();
    let bad = CurveObject::closed(vec![Step::through("v1", "h12", "h11"), Step::through("v2", "h23", "h22")]);
    assert!(matches!(compile(&g, &bad), Err(GlueError::InvalidCurve(_))));
}

#[test]
fn embedded_cycles_have_circle_endomorphisms() {
    for g in [theta_unit(), theta_area()] {
        for c in [cycle12(), cycle23()] {
            let s = compile(&g, &c).unwrap();
            let a = hom_global(&g, &s, &s, 6).unwrap();
            let b = hom_global(&g, &s, &s, 8).unwrap();
            assert_eq!(a.stable_totals(), (1, 1));
            assert_eq!(dims(&a).0, dims(&b).0[..a.stable_up_to as usize + 1]);
        }
    }
}

#[test]
fn distinct_holonomies_are_orthogonal() {
    let g = theta_area();
    let a = cycle12().with_local_system(LocalSystem::scalar(q_pow(1, 2)));
    let b = cycle12().with_local_system(LocalSystem::scalar(q_pow(-1, 2)));
    assert_eq!(totals(&g, &a, &b, 6), (0, 0));
    assert_eq!(totals(&g, &a, &cycle12(), 6), (0, 0));
    assert_eq!(totals(&g, &a, &a, 6), (1, 1));
}

#[test]
fn shift_swaps_parities() {
    let g = theta_area();
    let s = compile(&g, &cycle12()).unwrap();
    let c = compile(&g, &cycle23()).unwrap();
    let plain = hom_global(&g, &s, &c, 6).unwrap();
    let shifted = hom_global(&g, &s, &c.shifted(), 6).unwrap();
    assert_eq!(plain.dims_even, shifted.dims_odd);
    assert_eq!(plain.dims_odd, shifted.dims_even);
}

#[test]
fn direct_sum_is_additive() {
    let g = theta_area();
    let a = compile(&g, &cycle12()).unwrap();
    let b = compile(&g, &cycle23()).unwrap();
    let ab = a.direct_sum(&g, &b);
    ab.validate(&g).unwrap();
    let whole = hom_global(&g, &ab, &ab, 6).unwrap().stable_totals();
    let mut sum = (0, 0);
    for x in [&a, &b] {
        for y in [&a, &b] {
            let t = hom_global(&g, x, y, 6).unwrap().stable_totals();
            sum = (sum.0 + t.0, sum.1 + t.1);
        }
    }
    assert_eq!(whole, sum);
}

#[test]
fn euler_form_vanishes_on_corpus() {
    let g = theta_area();
    let curves = [cycle12(), cycle23(), commutator()];
    for a in &curves {
        for b in &curves {
            let (sa, sb) = (compile(&g, a).unwrap(), compile(&g, b).unwrap());
            assert_eq!(euler_form(&g, &sa, &sb, 6).unwrap(), 0);
        }
    }
}

#[test]
fn window_below_two_is_rejected() {
    let g = theta_unit();
    let s = compile(&g, &cycle12()).unwrap();
    assert_eq!(hom_global(&g, &s, &s, 1).unwrap_err(), GlueError::WindowTooSmall(1));
}

#[test]
fn arcs_on_pants_compile() {
    let g = pants_unit();
    let arc = CurveObject::arc(vec![Step::new("v", Some("h1"), Some("h2"))]);
    let s = compile(&g, &arc).unwrap();
    s.validate(&g).unwrap();
    // no compact edges: Hom is the vertex Hom alone
    let r = hom_global(&g, &s, &s, 4).unwrap();
    assert_eq!(r.dims_even[0], 1);
}

#[test]
fn gauge_preserves_hom() {
    let g = theta_area();
    let curves = [cycle12(), commutator(), cycle12().with_local_system(LocalSystem::scalar(q_pow(-1, 2)))];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let chain = GaugeChain::random(&g, &mut rng);
    let g2 = gauge_transform(&g, &chain).unwrap();
    for a in &curves {
        for b in &curves {
            let (sa, sb) = (compile(&g, a).unwrap(), compile(&g, b).unwrap());
            let r1 = hom_global(&g, &sa, &sb, 6).unwrap();
            let (ta, tb) = (apply_gauge_to_section(&sa, &chain), apply_gauge_to_section(&sb, &chain));
            let r2 = hom_global(&g2, &ta, &tb, 6).unwrap();
            assert_eq!(dims(&r1), dims(&r2));
        }
    }
}

#[test]
fn reframing_preserves_hom() {
    let g = theta_area();
    let f = g.framing();
    let mut variants = vec![];
    let mut f2 = f.clone();
    f2.cyclic_orders.insert("v2".into(), f.cyclic_orders["v2"].reversed());
    variants.push(f2);
    let mut f3 = f.clone();
    f3.orientations.insert("t2".into(), EdgeOrientation::Head("h12".into()));
    variants.push(f3);
    for f2 in variants {
        let p = reframe(&g, &f2).unwrap();
        assert!(!p.is_identity());
        let g2 = g.with_framing(&f2);
        for c in [cycle12(), commutator()] {
            let s = compile(&g, &c).unwrap();
            let t = apply_reframe(&g, &s, &p).unwrap();
            t.validate(&g2).unwrap();
            let r1 = hom_global(&g, &s, &s, 6).unwrap();
            let r2 = hom_global(&g2, &t, &t, 6).unwrap();
            let n = r2.stable_up_to as usize + 1;
            assert_eq!(r1.dims_even[..n], r2.dims_even[..n]);
            assert_eq!(r1.dims_odd[..n], r2.dims_odd[..n]);
        }
    }
}

#[test]
fn reframe_rejects_non_reversal() {
    let g = theta_unit();
    let mut f = g.framing();
    f.orientations.insert("t1".into(), EdgeOrientation::Head("h22".into()));
    assert!(matches!(reframe(&g, &f), Err(GlueError::NotAFraming(_))));
}

#[test]
fn curve_json_round_trip() {
    let c = cycle12().with_local_system(LocalSystem::scalar(NovikovElement::q_pow(1.into())));
    let back = curve_from_json(&curve_to_json(&c)).unwrap();
    assert_eq!(back, c);
}
