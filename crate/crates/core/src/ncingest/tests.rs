use super::standard::*;
use super::*;
use crate::gluecat::{apply_reframe, compile, hom_global, reframe, CurveObject, Step};
use crate::graph::first_betti;
use crate::surface::surface_invariants;

fn genus(g: &DecoratedGraph) -> usize {
    surface_invariants(g).unwrap().genus
}

/// Number of boundary cycles of the ribbon graph given by the cyclic orders.
fn face_count(g: &DecoratedGraph) -> usize {
    let darts: Vec<String> = g.half_edges().keys().cloned().collect();
    let mut seen = BTreeSet::new();
    let mut faces = 0;
    for d in &darts {
        if seen.contains(d) {
            continue;
        }
        faces += 1;
        let mut x = d.clone();
        while seen.insert(x.clone()) {
            let o = g.opposite(&x).unwrap();
            let v = g.vertex_of(o).unwrap();
            x = g.cyclic_order(v).unwrap().next(o).unwrap().to_string();
        }
    }
    faces
}

fn orientation(desc: &NcSurfaceDesc) -> Orientation {
    match check_orientability(desc).unwrap() {
        Orientability::Orientable(o) => o,
        Orientability::NonOrientable { cycle } => panic!("unexpected obstruction {cycle:?}"),
    }
}

#[test]
fn two_sheets_give_a_segment() {
    let g = graph_from_nc(&two_sheets()).unwrap();
    assert_eq!(g.vertices().len(), 2);
    assert!(g.vertices().values().all(|v| v.valency == 1));
    assert_eq!(g.edges().len(), 1);
    assert!(g.edges()["z"].compact);
}

#[test]
fn five_curves_give_two_trivalent_vertices() {
    let g = graph_from_nc(&five_curves()).unwrap();
    assert_eq!(g.vertices().len(), 2);
    assert!(g.vertices().values().all(|v| v.valency == 3));
    assert_eq!(g.edges().values().filter(|e| e.compact).count(), 1);
    assert_eq!(g.edges().values().filter(|e| !e.compact).count(), 4);
    let s = surface_invariants(&g).unwrap();
    assert_eq!((s.genus, s.boundary_circles, s.stops), (0, 4, 0));
}

#[test]
fn banana_gives_theta() {
    let g = graph_from_nc(&banana()).unwrap();
    assert_eq!(g.vertices().len(), 2);
    assert_eq!(g.edges().values().filter(|e| e.compact).count(), 3);
    assert_eq!(genus(&g), 2);
}

#[test]
fn fans() {
    let k4 = graph_from_fan(&p3_fan()).unwrap();
    assert_eq!((k4.vertices().len(), k4.edges().len()), (4, 6));
    assert_eq!(genus(&k4), 3);
    let a3 = graph_from_fan(&a3_fan()).unwrap();
    assert_eq!(a3.vertices().len(), 1);
    assert_eq!(a3.edges().values().filter(|e| !e.compact).count(), 3);
    let cube = graph_from_fan(&cube_fan()).unwrap();
    assert_eq!((cube.vertices().len(), cube.edges().len()), (8, 12));
    assert_eq!(first_betti(&cube), 12 - 8 + 1);
    assert_eq!(genus(&cube), 5);
}

#[test]
fn bad_fans_are_rejected() {
    let mut f = p3_fan();
    f.rays[3] = [-1, -1, -2];
    assert!(matches!(graph_from_fan(&f), Err(NcError::NonSmoothCone(_))));
    let mut f = p3_fan();
    f.max_cones.push([0, 1, 2]);
    f.max_cones.push([0, 1, 2]);
    assert!(matches!(graph_from_fan(&f), Err(NcError::InconsistentFan(_))));
}

#[test]
fn graph_like_violations() {
    let mut d = two_sheets();
    d.curves[0].kind = CurveType::A1;
    assert!(matches!(graph_from_nc(&d), Err(NcError::NotGraphLike(_))));
    let mut d = two_sheets();
    d.curves[0].kind = CurveType::Gm;
    assert!(matches!(graph_from_nc(&d), Err(NcError::GmComponent(_))));
    let mut d = five_curves();
    d.marks.get_mut("a0").unwrap().clear();
    assert!(matches!(graph_from_nc(&d), Err(NcError::NotGraphLike(_))));
}

#[test]
fn nc_json_round_trip() {
    let d = five_curves();
    assert_eq!(NcSurfaceDesc::from_json(&d.to_json()).unwrap(), d);
    let f = ToricFan3::from_json(r#"{"rays":[[1,0,0],[0,1,0],[0,0,1]],"max_cones":[[0,1,2]]}"#).unwrap();
    assert_eq!(f, a3_fan());
}

#[test]
fn sphere_orientation_gives_planar_k4() {
    let desc = nc_from_fan(&p3_fan()).unwrap();
    let o = orientation(&desc);
    let g = graph_from_fan(&p3_fan()).unwrap();
    let f = framing_from_orientation(&g, &o).unwrap();
    let planar = g.with_framing(&f);
    assert_eq!(face_count(&planar), 4);
    // reversing the orientation reverses every cyclic order
    let f2 = framing_from_orientation(&g, &o.reversed()).unwrap();
    for (v, c) in &f.cyclic_orders {
        assert_eq!(f2.cyclic_orders[v], c.reversed());
    }
}

#[test]
fn banana_orientations_are_reframe_equivalent() {
    let desc = banana();
    let o = orientation(&desc);
    let g = graph_from_nc(&desc).unwrap();
    let f1 = framing_from_orientation(&g, &o).unwrap();
    let f2 = framing_from_orientation(&g, &o.reversed()).unwrap();
    let g1 = g.with_framing(&f1);
    assert_eq!(face_count(&g1), 3);
    let p = reframe(&g1, &f2).unwrap();
    assert_eq!(p.vertex_shifts.len(), 2);
    let g2 = g1.with_framing(&f2);
    let c = CurveObject::closed(vec![Step::through("s1", "bc:s1", "ab:s1"), Step::through("s2", "ab:s2", "bc:s2")]);
    let s = compile(&g1, &c).unwrap();
    let t = apply_reframe(&g1, &s, &p).unwrap();
    let a = hom_global(&g1, &s, &s, 6).unwrap();
    let b = hom_global(&g2, &t, &t, 6).unwrap();
    assert_eq!(a.stable_totals(), (1, 1));
    let n = b.stable_up_to as usize + 1;
    assert_eq!(a.dims_even[..n], b.dims_even[..n]);
    assert_eq!(a.dims_odd[..n], b.dims_odd[..n]);
}

#[test]
fn mobius_band_is_rejected_with_a_cycle() {
    let desc = mobius();
    let g = graph_from_nc(&desc).unwrap();
    assert_eq!(g.vertices().len(), 5);
    match check_orientability(&desc).unwrap() {
        Orientability::NonOrientable { cycle } => {
            assert!(cycle.len() >= 2);
            let all: BTreeSet<&str> = desc.triple_points.iter().map(|p| p.name.as_str()).collect();
            assert!(cycle.iter().all(|c| all.contains(c.as_str())));
        }
        Orientability::Orientable(_) => panic!("Möbius band accepted"),
    }
}

#[test]
fn missing_orientation_is_an_error() {
    let g = graph_from_nc(&banana()).unwrap();
    let mut o = orientation(&banana());
    o.cyclic.remove("s2");
    assert!(matches!(framing_from_orientation(&g, &o), Err(NcError::MissingOrientation(_))));
}
