use super::corpus::*;
use crate::gluecat::compile;
use crate::graph::fixtures::{k4_unit, theta_unit};

#[test]
fn corpus_curves_compile() {
    let g = theta_unit();
    for (name, c) in theta_curves() {
        compile(&g, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let k = k4_unit();
    for (name, c) in k4_curves() {
        compile(&k, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn cheap_criteria_pass() {
    for id in [1, 2, 3, 6, 9] {
        let o = super::run_criterion(id, 7);
        assert!(o.passed, "{}", o.line());
    }
}

#[test]
fn odd_cycle_oracle_rejects_even_chains() {
    use crate::ncingest::standard::{mobius, p3_fan};
    let p3 = super::dual_complex(&crate::ncingest::nc_from_fan(&p3_fan()).unwrap());
    let names: Vec<String> = p3.by_name.keys().cloned().collect();
    // any three faces of a tetrahedron boundary pairwise share an edge
    assert!(!p3.is_odd_cycle(&names[..3]));
    let m = super::dual_complex(&mobius());
    let strip: Vec<String> = (0..5).map(|i| format!("t{i}")).collect();
    assert!(m.is_odd_cycle(&strip));
    assert!(!m.is_odd_cycle(&strip[..2]));
    assert!(!m.is_odd_cycle(&["t0".into(), "nowhere".into()]));
}

#[test]
fn vanishing_oracle_reads_units_after_localizing() {
    use crate::mfcore::make_f;
    use crate::scalars::NovikovElement;
    let f = make_f(&NovikovElement::one(), 1, 2).unwrap();
    assert!(super::restriction_vanishes(&f, 3));
    assert!(!super::restriction_vanishes(&f, 1));
    assert!(!super::restriction_vanishes(&f, 2));
}

#[test]
fn outcome_line_format() {
    let o = super::Outcome {
        id: 4,
        title: "x",
        passed: false,
        elapsed_secs: 1.5,
        budget_secs: 2.0,
        detail: "d".into(),
    };
    assert_eq!(o.line(), "FAIL [ 4] x (1.50 s, budget 2 s): d");
}
