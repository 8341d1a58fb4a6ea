//! Named test curves on the theta graph and on `K₄`.

use crate::gluecat::{CurveObject, LocalSystem, Step};
use crate::scalars::{q_pow, NovikovElement};

pub type NamedCurve = (&'static str, CurveObject);

fn closed(steps: &[(&str, &str, &str)]) -> CurveObject {
    CurveObject::closed(steps.iter().map(|(v, a, b)| Step::through(v, a, b)).collect())
}

/// Cycle through edges `t1` and `t2`.
pub fn cycle12() -> CurveObject {
    closed(&[("v1", "h12", "h11"), ("v2", "h21", "h22")])
}

pub fn cycle23() -> CurveObject {
    closed(&[("v1", "h13", "h12"), ("v2", "h22", "h23")])
}

pub fn cycle13() -> CurveObject {
    closed(&[("v1", "h13", "h11"), ("v2", "h21", "h23")])
}

/// Walk `t1⁺ t2⁻ t3⁺ t1⁻ t2⁺ t3⁻`; null-homologous.
pub fn commutator() -> CurveObject {
    closed(&[
        ("v1", "h13", "h11"),
        ("v2", "h21", "h22"),
        ("v1", "h12", "h13"),
        ("v2", "h23", "h21"),
        ("v1", "h11", "h12"),
        ("v2", "h22", "h23"),
    ])
}

/// Unipotent rank-two local system.
pub fn jordan_block() -> LocalSystem {
    let (one, zero) = (NovikovElement::one, NovikovElement::zero);
    LocalSystem(vec![vec![one(), one()], vec![zero(), one()]])
}

/// Curves on the theta graph: the three embedded cycles, the commutator,
/// holonomy twists `q^{±1/2}` and a rank-two system.
pub fn theta_curves() -> Vec<NamedCurve> {
    vec![
        ("cycle12", cycle12()),
        ("cycle23", cycle23()),
        ("cycle13", cycle13()),
        ("commutator", commutator()),
        ("cycle12+", cycle12().with_local_system(LocalSystem::scalar(q_pow(1, 2)))),
        ("cycle12-", cycle12().with_local_system(LocalSystem::scalar(q_pow(-1, 2)))),
        ("cycle12x2", cycle12().with_local_system(jordan_block())),
    ]
}

/// Embedded cycles with trivial local system.
pub const EMBEDDED: [&str; 3] = ["cycle12", "cycle23", "cycle13"];

/// Pairs of twists of one cycle with distinct monomial holonomy.
pub const DISTINCT_TWISTS: [(&str, &str); 3] = [("cycle12", "cycle12+"), ("cycle12", "cycle12-"), ("cycle12+", "cycle12-")];

/// Triangles of the planar `K₄`.
pub fn k4_curves() -> Vec<NamedCurve> {
    vec![
        ("abc", closed(&[("a", "ac_a", "ab_a"), ("b", "ab_b", "bc_b"), ("c", "bc_c", "ac_c")])),
        ("abd", closed(&[("a", "ad_a", "ab_a"), ("b", "ab_b", "bd_b"), ("d", "bd_d", "ad_d")])),
        ("bcd", closed(&[("b", "bd_b", "bc_b"), ("c", "bc_c", "cd_c"), ("d", "cd_d", "bd_d")])),
    ]
}

pub fn find<'a>(curves: &'a [NamedCurve], name: &str) -> &'a CurveObject {
    &curves.iter().find(|(n, _)| *n == name).expect("corpus curve").1
}
