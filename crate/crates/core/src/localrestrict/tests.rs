use super::*;
use crate::graph::fixtures::{pants, pants_unit, segment, theta_area};
use crate::graph::DecoratedGraph;
use crate::mfcore::{differential, hom_complex, mf_hom};
use crate::scalars::q_pow;

fn sg(a: &str, b: &str, shift: u8) -> ShiftedGenerator {
    ShiftedGenerator {
        generator: LocalGenerator::pair(a, b),
        shift,
    }
}

/// Pants with cyclic order (h1, h2, h3) and edge e1 pointing into the vertex.
fn pants_in() -> DecoratedGraph {
    let one = NovikovElement::one;
    DecoratedGraph::builder()
        .trivalent("v", q_pow(1, 2), ["h1", "h2", "h3"])
        .noncompact("e1", "h1", one(), true)
        .noncompact("e2", "h2", one(), false)
        .noncompact("e3", "h3", one(), false)
        .build()
}

#[test]
fn rule_table_examples() {
    let g = pants_in();
    let f12 = LocalGenerator::pair("h1", "h2");
    let f31 = LocalGenerator::pair("h3", "h1");
    let f23 = LocalGenerator::pair("h2", "h3");
    assert_eq!(rule_parity(&g, "v", "h1", &f12).unwrap(), Some(0));
    assert_eq!(rule_parity(&g, "v", "h1", &f31).unwrap(), Some(1));
    assert_eq!(rule_parity(&g, "v", "h1", &f23).unwrap(), None);
}

#[test]
fn restriction_adds_shifts_and_drops_zeros() {
    let g = pants_in();
    let obj = [sg("h1", "h2", 1), sg("h2", "h3", 0), sg("h3", "h1", 0)];
    let e = knorrer_restrict(&g, "v", "h1", &obj).unwrap();
    let parities: Vec<u8> = e.generators.iter().map(|x| x.parity).collect();
    assert_eq!(parities, vec![1, 1]);
    assert!(e.generators.iter().all(|x| x.frame == "h1"));
}

#[test]
fn consistency_identity_for_any_orientation() {
    for inward in [true, false] {
        let one = NovikovElement::one;
        let g = DecoratedGraph::builder()
            .trivalent("v", one(), ["h1", "h2", "h3"])
            .noncompact("e1", "h1", one(), inward)
            .noncompact("e2", "h2", one(), !inward)
            .noncompact("e3", "h3", one(), inward)
            .build();
        for (i, j, k) in [("h1", "h2", "h3"), ("h2", "h3", "h1"), ("h3", "h1", "h2"), ("h1", "h3", "h2")] {
            let a = rule_parity(&g, "v", j, &LocalGenerator::pair(i, j)).unwrap().unwrap();
            let b = rule_parity(&g, "v", j, &LocalGenerator::pair(j, k)).unwrap().unwrap();
            assert_eq!(a, (b + 1) % 2);
        }
    }
}

#[test]
fn model_is_certified_by_matrix_factorizations() {
    // Every model class has a closed representative, the classes of each
    // degree are independent modulo coboundaries, and their number matches
    // the computed cohomology.
    let g = pants(q_pow(-3, 2), [q_pow(1, 1), q_pow(1, 1), q_pow(1, 1)]);
    let gens = [
        LocalGenerator::pair("h1", "h2"),
        LocalGenerator::pair("h2", "h3"),
        LocalGenerator::pair("h1", "h3"),
    ];
    let window = 5;
    for src in &gens {
        for tgt in &gens {
            let f = generator_object(&g, "v", src).unwrap();
            let h = generator_object(&g, "v", tgt).unwrap();
            let cx = hom_complex(&f, &h, window).unwrap();
            let report = mf_hom(&f, &h, window).unwrap();
            let classes = local_classes(src, tgt, report.stable_up_to).unwrap();
            for d in 0..=report.stable_up_to {
                for p in 0..2u8 {
                    let reps: Vec<_> = classes
                        .iter()
                        .filter(|c| c.degree() == d && c.parity() == p)
                        .map(|c| class_representative(&g, "v", src, tgt, c).unwrap())
                        .collect();
                    for r in &reps {
                        assert!(differential(&f, &h, r).is_zero());
                    }
                    let expected = if p == 0 { report.dims_even[d as usize] } else { report.dims_odd[d as usize] };
                    assert_eq!(reps.len(), expected, "{src:?}->{tgt:?} degree {d} parity {p}");
                    assert_eq!(cx.rank_modulo_exact(&reps), expected);
                }
            }
        }
    }
}

#[test]
fn model_composition_matches_chain_composition() {
    let g = pants(q_pow(2, 3), [q_pow(1, 1), q_pow(1, 1), q_pow(1, 1)]);
    let gens = [
        LocalGenerator::pair("h1", "h2"),
        LocalGenerator::pair("h2", "h3"),
        LocalGenerator::pair("h1", "h3"),
    ];
    let window = 6;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let fa = generator_object(&g, "v", a).unwrap();
                let fc = generator_object(&g, "v", c).unwrap();
                let cx = hom_complex(&fa, &fc, window).unwrap();
                for c1 in local_classes(a, b, 2).unwrap() {
                    for c2 in local_classes(b, c, 2).unwrap() {
                        let chain = class_representative(&g, "v", b, c, &c2)
                            .unwrap()
                            .compose(&class_representative(&g, "v", a, b, &c1).unwrap());
                        let mut model = MfMorphism::zero(&fa, &fc, chain.parity);
                        for (k, cl) in compose_classes(&g, "v", a, b, c, &c1, &c2).unwrap() {
                            let r = class_representative(&g, "v", a, c, &cl).unwrap();
                            model = model.add(&r.scale(&crate::mfcore::Poly3::constant(k)));
                        }
                        assert!(cx.is_exact(&chain.add(&model.neg())), "{c1:?} then {c2:?} on {a:?},{b:?},{c:?}");
                    }
                }
            }
        }
    }
}

use crate::mfcore::MfMorphism;

#[test]
fn restriction_respects_composition() {
    let g = pants(q_pow(2, 3), [q_pow(1, 1), q_pow(1, 1), q_pow(1, 1)]);
    let gens = [
        LocalGenerator::pair("h1", "h2"),
        LocalGenerator::pair("h2", "h3"),
        LocalGenerator::pair("h1", "h3"),
    ];
    for x in ["h1", "h2", "h3"] {
        for a in gens.iter().filter(|p| p.contains(x)) {
            for b in gens.iter().filter(|p| p.contains(x)) {
                for c in gens.iter().filter(|p| p.contains(x)) {
                    for c1 in local_classes(a, b, 2).unwrap() {
                        for c2 in local_classes(b, c, 2).unwrap() {
                            let lhs = restrict_class(&g, "v", x, b, c, &c2)
                                .unwrap()
                                .unwrap()
                                .mul(&restrict_class(&g, "v", x, a, b, &c1).unwrap().unwrap());
                            let mut rhs = Laurent::zero();
                            for (k, cl) in compose_classes(&g, "v", a, b, c, &c1, &c2).unwrap() {
                                rhs = rhs.add(&restrict_class(&g, "v", x, a, c, &cl).unwrap().unwrap().scale(&k));
                            }
                            assert_eq!(lhs, rhs, "{x}: {c1:?} then {c2:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn restricting_coordinate_endomorphisms() {
    let g = pants_unit();
    let f12 = LocalGenerator::pair("h1", "h2");
    let x1 = LocalClass::Power { var: "h1".into(), n: 1 };
    let x2 = LocalClass::Power { var: "h2".into(), n: 1 };
    let r1 = restrict_class(&g, "v", "h1", &f12, &f12, &x1).unwrap().unwrap();
    assert_eq!(r1, Laurent::monomial(NovikovElement::one(), 1));
    // x1·x2 = 0 in End(F_12) and x1 is invertible on the edge, so x2 ↦ 0.
    let r2 = restrict_class(&g, "v", "h1", &f12, &f12, &x2).unwrap().unwrap();
    assert!(r2.is_zero());
    let id = restrict_class(&g, "v", "h1", &f12, &f12, &LocalClass::Unit).unwrap().unwrap();
    assert_eq!(id, Laurent::one());
}

#[test]
fn restrict_morphism_drops_vanishing_summands() {
    let g = pants_unit();
    let src = [sg("h1", "h2", 0), sg("h2", "h3", 0)];
    let phi = GeneratorMorphism {
        entries: [
            ((0, 0), vec![(NovikovElement::from_int(2), LocalClass::Power { var: "h1".into(), n: 2 })]),
            ((1, 1), vec![(NovikovElement::one(), LocalClass::Unit)]),
        ]
        .into(),
    };
    let m = restrict_morphism(&g, "v", "h1", &src, &src, &phi).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[&(0, 0)], Laurent::monomial(NovikovElement::from_int(2), 2));
}

#[test]
fn transport_examples() {
    let g = theta_area();
    let beta = g.edge("t1").unwrap().weight.clone();
    let l = Laurent::monomial(NovikovElement::one(), 3);
    let moved = transport_morphism(&g, "t1", &l).unwrap();
    assert_eq!(moved, Laurent::monomial(beta.pow(3), -3));
    assert_eq!(transport_morphism(&g, "t1", &moved).unwrap(), l);
    let unit = crate::graph::fixtures::theta_unit();
    assert_eq!(
        transport_morphism(&unit, "t2", &Laurent::monomial(NovikovElement::one(), 1)).unwrap(),
        Laurent::monomial(NovikovElement::one(), -1)
    );
    let obj = knorrer_restrict(&g, "v1", "h11", &[sg("h11", "h12", 0)]).unwrap();
    let there = edge_transport(&g, &obj).unwrap();
    assert_eq!(there.generators[0].frame, "h21");
    assert_eq!(edge_transport(&g, &there).unwrap(), obj);
    let p = pants_unit();
    let nc = knorrer_restrict(&p, "v", "h1", &[sg("h1", "h2", 0)]).unwrap();
    assert!(matches!(edge_transport(&p, &nc), Err(RestrictError::Noncompact(_))));
}

#[test]
fn univalent_localization() {
    let g = segment();
    let free = one_valent_restrict(&g, "p", &[UnivalentSummand::Free { shift: 0 }]).unwrap();
    assert_eq!(free.generators.len(), 1);
    let at_origin = one_valent_restrict(
        &g,
        "p",
        &[UnivalentSummand::Torsion { root: NovikovElement::zero(), shift: 0 }],
    )
    .unwrap();
    assert!(at_origin.is_zero());
    let at_lambda = one_valent_restrict(
        &g,
        "p",
        &[UnivalentSummand::Torsion { root: q_pow(1, 2), shift: 0 }],
    )
    .unwrap();
    assert_eq!(at_lambda.generators.len(), 2);
    let d = &at_lambda.presentation[&(1, 0)];
    // x − λ: not a unit, vanishing at x = λ
    assert!(!d.is_unit());
    assert_eq!(d.coefficient(0), -q_pow(1, 2));
}
