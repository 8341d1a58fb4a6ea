use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{DecoratedGraph, EdgeOrientation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Loop { edge: String },
    Valency { vertex: String, tag: u8, found: usize },
    Weight { element: String },
    EdgeArity { edge: String, compact: bool, found: usize },
    Incidence { half_edge: String, reason: String },
    CyclicOrder { vertex: String, reason: String },
    Orientation { edge: String, reason: String },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Loop { .. } => "loop",
            Violation::Valency { .. } => "valency",
            Violation::Weight { .. } => "weight",
            Violation::EdgeArity { .. } => "edge-arity",
            Violation::Incidence { .. } => "incidence",
            Violation::CyclicOrder { .. } => "cyclic-order",
            Violation::Orientation { .. } => "orientation",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { edge } => write!(f, "loop: edge {edge} joins a vertex to itself"),
            Violation::Valency { vertex, tag, found } => {
                write!(f, "valency: vertex {vertex} tagged {tag} has {found} half-edges")
            }
            Violation::Weight { element } => write!(f, "weight: {element} has a non-invertible weight"),
            Violation::EdgeArity { edge, compact, found } => write!(
                f,
                "edge-arity: {} edge {edge} has {found} half-edges",
                if *compact { "compact" } else { "noncompact" }
            ),
            Violation::Incidence { half_edge, reason } => write!(f, "incidence: {half_edge}: {reason}"),
            Violation::CyclicOrder { vertex, reason } => write!(f, "cyclic-order: {vertex}: {reason}"),
            Violation::Orientation { edge, reason } => write!(f, "orientation: {edge}: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.violations.iter().filter(|v| v.kind() == kind).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every structural rule; never aborts.
pub fn validate(g: &DecoratedGraph) -> ValidationReport {
    let mut out = Vec::new();
    let mut per_vertex: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (h, v) in &g.half_edge_vertex {
        if g.vertices.contains_key(v) {
            per_vertex.entry(v).or_default().insert(h);
        } else {
            out.push(Violation::Incidence {
                half_edge: h.clone(),
                reason: format!("attached to unknown vertex {v}"),
            });
        }
    }

    let mut bad_valency = BTreeSet::new();
    for (v, vert) in &g.vertices {
        let found = per_vertex.get(v.as_str()).map_or(0, |s| s.len());
        if !(vert.valency == 1 || vert.valency == 3) || found != vert.valency as usize {
            bad_valency.insert(v.as_str());
            out.push(Violation::Valency {
                vertex: v.clone(),
                tag: vert.valency,
                found,
            });
        }
        if !vert.weight.is_invertible() {
            out.push(Violation::Weight { element: v.clone() });
        }
    }

    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    for (e, edge) in &g.edges {
        let need = if edge.compact { 2 } else { 1 };
        if edge.half_edges.len() != need {
            out.push(Violation::EdgeArity {
                edge: e.clone(),
                compact: edge.compact,
                found: edge.half_edges.len(),
            });
        }
        for h in &edge.half_edges {
            if let Some(prev) = seen.insert(h, e) {
                out.push(Violation::Incidence {
                    half_edge: h.clone(),
                    reason: format!("shared by edges {prev} and {e}"),
                });
            }
            if !g.half_edge_vertex.contains_key(h) {
                out.push(Violation::Incidence {
                    half_edge: h.clone(),
                    reason: "not attached to any vertex".into(),
                });
            }
        }
        if edge.compact && edge.half_edges.len() == 2 {
            let a = g.half_edge_vertex.get(&edge.half_edges[0]);
            let b = g.half_edge_vertex.get(&edge.half_edges[1]);
            if a.is_some() && a == b {
                out.push(Violation::Loop { edge: e.clone() });
            }
        }
        if !edge.weight.is_invertible() {
            out.push(Violation::Weight { element: e.clone() });
        }
        match (&edge.orientation, edge.compact) {
            (EdgeOrientation::Head(h), true) if edge.half_edges.contains(h) => {}
            (EdgeOrientation::Head(h), true) => out.push(Violation::Orientation {
                edge: e.clone(),
                reason: format!("head {h} is not a half-edge of this edge"),
            }),
            (EdgeOrientation::Head(_), false) => out.push(Violation::Orientation {
                edge: e.clone(),
                reason: "noncompact edges take \"in\" or \"out\"".into(),
            }),
            (_, true) => out.push(Violation::Orientation {
                edge: e.clone(),
                reason: "compact edges take \"head=<half_edge>\"".into(),
            }),
            (_, false) => {}
        }
    }
    for h in g.half_edge_vertex.keys() {
        if !seen.contains_key(h.as_str()) {
            out.push(Violation::Incidence {
                half_edge: h.clone(),
                reason: "belongs to no edge".into(),
            });
        }
    }

    for (v, vert) in &g.vertices {
        if vert.valency != 3 || bad_valency.contains(v.as_str()) {
            continue;
        }
        let Some(order) = g.cyclic_orders.get(v) else {
            out.push(Violation::CyclicOrder {
                vertex: v.clone(),
                reason: "missing".into(),
            });
            continue;
        };
        let listed: BTreeSet<&str> = order.as_slice().iter().map(String::as_str).collect();
        let actual = per_vertex.get(v.as_str()).cloned().unwrap_or_default();
        if order.as_slice().len() != 3 || listed != actual {
            out.push(Violation::CyclicOrder {
                vertex: v.clone(),
                reason: format!("{:?} is not an ordering of the incident half-edges", order.as_slice()),
            });
        }
    }
    for v in g.cyclic_orders.keys() {
        if !g.vertices.contains_key(v) {
            out.push(Violation::CyclicOrder {
                vertex: v.clone(),
                reason: "unknown vertex".into(),
            });
        }
    }
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::theta_unit;
    use super::*;
    use crate::scalars::NovikovElement;

    fn one() -> NovikovElement {
        NovikovElement::one()
    }

    #[test]
    fn theta_is_valid() {
        assert!(validate(&theta_unit()).is_empty());
    }

    #[test]
    fn self_loop_is_one_violation() {
        let g = DecoratedGraph::builder()
            .trivalent("v", one(), ["a", "b", "c"])
            .compact("t", "a", "b", one())
            .noncompact("s", "c", one(), false)
            .build();
        let r = validate(&g);
        assert_eq!(r.violations.len(), 1, "{r}");
        assert_eq!(r.count("loop"), 1);
    }

    #[test]
    fn two_half_edges_is_one_valency_violation() {
        let g = DecoratedGraph::builder()
            .raw_vertex("v", 3, one(), &["a", "b"])
            .noncompact("s", "a", one(), true)
            .noncompact("t", "b", one(), true)
            .build();
        let r = validate(&g);
        assert_eq!(r.violations.len(), 1, "{r}");
        assert_eq!(r.count("valency"), 1);
    }

    #[test]
    fn non_invertible_weight_is_flagged() {
        let two_terms = &one() + &crate::scalars::q_pow(1, 1);
        let g = theta_unit().with_weights([("v1".to_string(), two_terms)].into(), Default::default());
        assert_eq!(validate(&g).count("weight"), 1);
    }
}
