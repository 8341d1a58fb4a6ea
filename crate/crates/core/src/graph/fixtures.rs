//! Small standard graphs used by tests, the acceptance suite and the CLI.

use super::DecoratedGraph;
use crate::scalars::{q_pow, NovikovElement};

fn one() -> NovikovElement {
    NovikovElement::one()
}

/// Theta graph with the planar framing: `v1` has cyclic order
/// `(h11, h12, h13)`, `v2` has `(h21, h23, h22)`, and every edge `ti` runs
/// from `h1i` at `v1` to `h2i` at `v2`.
pub fn theta(alpha: [NovikovElement; 2], beta: [NovikovElement; 3]) -> DecoratedGraph {
    let [a1, a2] = alpha;
    let [b1, b2, b3] = beta;
    DecoratedGraph::builder()
        .trivalent("v1", a1, ["h11", "h12", "h13"])
        .trivalent("v2", a2, ["h21", "h23", "h22"])
        .compact("t1", "h11", "h21", b1)
        .compact("t2", "h12", "h22", b2)
        .compact("t3", "h13", "h23", b3)
        .build()
}

pub fn theta_unit() -> DecoratedGraph {
    theta([one(), one()], [one(), one(), one()])
}

/// Theta with `α = (q^{-3}, q^{-5/2})` and `β = (q^{1/2}, q, q^{1/3})`.
pub fn theta_area() -> DecoratedGraph {
    theta(
        [q_pow(-3, 1), q_pow(-5, 2)],
        [q_pow(1, 2), q_pow(1, 1), q_pow(1, 3)],
    )
}

/// One trivalent vertex with three outgoing noncompact edges.
pub fn pants(alpha: NovikovElement, beta: [NovikovElement; 3]) -> DecoratedGraph {
    let [b1, b2, b3] = beta;
    DecoratedGraph::builder()
        .trivalent("v", alpha, ["h1", "h2", "h3"])
        .noncompact("e1", "h1", b1, false)
        .noncompact("e2", "h2", b2, false)
        .noncompact("e3", "h3", b3, false)
        .build()
}

pub fn pants_unit() -> DecoratedGraph {
    pants(one(), [one(), one(), one()])
}

pub fn pants_weighted() -> DecoratedGraph {
    pants(q_pow(-2, 1), [q_pow(1, 2), q_pow(1, 1), q_pow(3, 2)])
}

/// Two disjoint copies of the pants graph.
pub fn two_pants() -> DecoratedGraph {
    DecoratedGraph::builder()
        .trivalent("v", one(), ["h1", "h2", "h3"])
        .noncompact("e1", "h1", one(), false)
        .noncompact("e2", "h2", one(), false)
        .noncompact("e3", "h3", one(), false)
        .trivalent("w", one(), ["k1", "k2", "k3"])
        .noncompact("f1", "k1", one(), false)
        .noncompact("f2", "k2", one(), false)
        .noncompact("f3", "k3", one(), false)
        .build()
}

/// Two univalent vertices joined by one compact edge.
pub fn segment() -> DecoratedGraph {
    DecoratedGraph::builder()
        .univalent("p", one(), "hp")
        .univalent("r", one(), "hr")
        .compact("t", "hp", "hr", one())
        .build()
}

/// Complete graph on `a, b, c, d` with a planar framing (`d` in the middle of
/// the triangle `a, b, c`).  Half-edge `xy_x` is the end of edge `xy` at `x`;
/// each edge points from its lexicographically smaller end.
pub fn k4(alpha: [NovikovElement; 4], beta: [NovikovElement; 6]) -> DecoratedGraph {
    let [aa, ab, ac, ad] = alpha;
    let [b0, b1, b2, b3, b4, b5] = beta;
    DecoratedGraph::builder()
        .trivalent("a", aa, ["ab_a", "ad_a", "ac_a"])
        .trivalent("b", ab, ["bc_b", "bd_b", "ab_b"])
        .trivalent("c", ac, ["ac_c", "cd_c", "bc_c"])
        .trivalent("d", ad, ["ad_d", "bd_d", "cd_d"])
        .compact("ab", "ab_a", "ab_b", b0)
        .compact("ac", "ac_a", "ac_c", b1)
        .compact("ad", "ad_a", "ad_d", b2)
        .compact("bc", "bc_b", "bc_c", b3)
        .compact("bd", "bd_b", "bd_d", b4)
        .compact("cd", "cd_c", "cd_d", b5)
        .build()
}

pub fn k4_unit() -> DecoratedGraph {
    k4(
        [one(), one(), one(), one()],
        [one(), one(), one(), one(), one(), one()],
    )
}
