//! Decorated trivalent graphs: weights, framings, the exit-path quiver,
//! validation and the weight-gauge calculus.

mod gauge;
mod io;
mod validate;

pub mod fixtures;

use std::collections::{BTreeMap, BTreeSet};

use crate::scalars::NovikovElement;

pub use gauge::{gauge_fix, gauge_transform, total_weight, GaugeChain};
pub use io::{graph_from_json, graph_to_json, read_graph, GraphFile};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
    #[error("malformed graph file: {0}")]
    Malformed(String),
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("unknown half-edge {0}")]
    UnknownHalfEdge(String),
    #[error("gauge value at {0} is not invertible")]
    NotInvertible(String),
}

/// Orientation of an edge: compact edges name their head half-edge,
/// noncompact edges point into or out of their unique vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeOrientation {
    Head(String),
    In,
    Out,
}

/// A cyclic order on the half-edges at a vertex, stored rotated so the
/// least id comes first; equality is therefore equality of rotation classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicOrder(Vec<String>);

impl CyclicOrder {
    pub fn new<S: Into<String>>(items: impl IntoIterator<Item = S>) -> Self {
        let mut v: Vec<String> = items.into_iter().map(Into::into).collect();
        if let Some(pos) = v.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|p| p.0) {
            v.rotate_left(pos);
        }
        CyclicOrder(v)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    /// The half-edge after `h` in the cyclic order.
    pub fn next(&self, h: &str) -> Option<&str> {
        let pos = self.0.iter().position(|x| x == h)?;
        Some(&self.0[(pos + 1) % self.0.len()])
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        CyclicOrder::new(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub valency: u8,
    pub weight: NovikovElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub half_edges: Vec<String>,
    pub compact: bool,
    pub weight: NovikovElement,
    pub orientation: EdgeOrientation,
}

/// A graph with vertex weights, edge weights and a framing.  Values are
/// immutable; transformations return new graphs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DecoratedGraph {
    vertices: BTreeMap<String, Vertex>,
    half_edge_vertex: BTreeMap<String, String>,
    edges: BTreeMap<String, Edge>,
    cyclic_orders: BTreeMap<String, CyclicOrder>,
    half_edge_edge: BTreeMap<String, String>,
}

impl DecoratedGraph {
    pub fn from_parts(
        vertices: BTreeMap<String, Vertex>,
        half_edge_vertex: BTreeMap<String, String>,
        edges: BTreeMap<String, Edge>,
        cyclic_orders: BTreeMap<String, CyclicOrder>,
    ) -> Self {
        let mut half_edge_edge = BTreeMap::new();
        for (e, edge) in &edges {
            for h in &edge.half_edges {
                half_edge_edge.entry(h.clone()).or_insert_with(|| e.clone());
            }
        }
        DecoratedGraph {
            vertices,
            half_edge_vertex,
            edges,
            cyclic_orders,
            half_edge_edge,
        }
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertices(&self) -> &BTreeMap<String, Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<String, Edge> {
        &self.edges
    }

    pub fn half_edges(&self) -> &BTreeMap<String, String> {
        &self.half_edge_vertex
    }

    pub fn cyclic_orders(&self) -> &BTreeMap<String, CyclicOrder> {
        &self.cyclic_orders
    }

    pub fn vertex(&self, v: &str) -> Option<&Vertex> {
        self.vertices.get(v)
    }

    pub fn edge(&self, e: &str) -> Option<&Edge> {
        self.edges.get(e)
    }

    pub fn vertex_of(&self, h: &str) -> Option<&str> {
        self.half_edge_vertex.get(h).map(String::as_str)
    }

    pub fn edge_of(&self, h: &str) -> Option<&str> {
        self.half_edge_edge.get(h).map(String::as_str)
    }

    pub fn cyclic_order(&self, v: &str) -> Option<&CyclicOrder> {
        self.cyclic_orders.get(v)
    }

    /// Half-edges at `v`, sorted by id.
    pub fn half_edges_at(&self, v: &str) -> Vec<&str> {
        self.half_edge_vertex
            .iter()
            .filter(|(_, w)| w.as_str() == v)
            .map(|(h, _)| h.as_str())
            .collect()
    }

    /// The other half-edge of the edge containing `h`, if compact.
    pub fn opposite(&self, h: &str) -> Option<&str> {
        let e = self.edges.get(self.edge_of(h)?)?;
        if !e.compact {
            return None;
        }
        e.half_edges.iter().find(|x| x.as_str() != h).map(String::as_str)
    }

    /// Whether the edge containing `h` is oriented towards the vertex of `h`.
    pub fn points_into_vertex(&self, h: &str) -> Option<bool> {
        let e = self.edges.get(self.edge_of(h)?)?;
        Some(match &e.orientation {
            EdgeOrientation::Head(x) => x == h,
            EdgeOrientation::In => true,
            EdgeOrientation::Out => false,
        })
    }

    /// Connected components as vertex sets (noncompact edges never connect).
    pub fn components(&self) -> Vec<BTreeSet<String>> {
        let ids: Vec<&String> = self.vertices.keys().collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges.values() {
            if !e.compact || e.half_edges.len() != 2 {
                continue;
            }
            let ends: Vec<usize> = e
                .half_edges
                .iter()
                .filter_map(|h| self.vertex_of(h))
                .filter_map(|v| index.get(v).copied())
                .collect();
            if let [a, b] = ends[..] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for (i, v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert((*v).clone());
        }
        groups.into_values().collect()
    }

    pub(crate) fn with_weights(
        &self,
        vertex_weights: BTreeMap<String, NovikovElement>,
        edge_weights: BTreeMap<String, NovikovElement>,
    ) -> Self {
        let mut g = self.clone();
        for (v, w) in vertex_weights {
            if let Some(x) = g.vertices.get_mut(&v) {
                x.weight = w;
            }
        }
        for (e, w) in edge_weights {
            if let Some(x) = g.edges.get_mut(&e) {
                x.weight = w;
            }
        }
        g
    }

    /// Same graph with a different framing.
    pub fn with_framing(&self, framing: &Framing) -> Self {
        let mut g = self.clone();
        g.cyclic_orders = framing.cyclic_orders.clone();
        for (e, o) in &framing.orientations {
            if let Some(x) = g.edges.get_mut(e) {
                x.orientation = o.clone();
            }
        }
        g
    }

    pub fn framing(&self) -> Framing {
        Framing {
            cyclic_orders: self.cyclic_orders.clone(),
            orientations: self
                .edges
                .iter()
                .map(|(e, x)| (e.clone(), x.orientation.clone()))
                .collect(),
        }
    }

    /// Validated copy, or the violation report.
    pub fn checked(self) -> Result<Self, GraphError> {
        let report = validate(&self);
        if report.is_empty() {
            Ok(self)
        } else {
            Err(GraphError::Invalid(report))
        }
    }
}

/// Cyclic orders at trivalent vertices together with edge orientations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Framing {
    pub cyclic_orders: BTreeMap<String, CyclicOrder>,
    pub orientations: BTreeMap<String, EdgeOrientation>,
}

/// Bipartite exit-path quiver: vertices (black) to edges (white), one arrow
/// per half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExitQuiver {
    pub black: Vec<String>,
    pub white: Vec<String>,
    /// `(half-edge, vertex, edge)`.
    pub arrows: Vec<(String, String, String)>,
}

pub fn build_exit_quiver(g: &DecoratedGraph) -> Result<ExitQuiver, GraphError> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(GraphError::Invalid(report));
    }
    let arrows = g
        .half_edge_vertex
        .iter()
        .map(|(h, v)| (h.clone(), v.clone(), g.half_edge_edge[h].clone()))
        .collect();
    Ok(ExitQuiver {
        black: g.vertices.keys().cloned().collect(),
        white: g.edges.keys().cloned().collect(),
        arrows,
    })
}

/// `#compact edges − #vertices + #components`.
pub fn first_betti(g: &DecoratedGraph) -> usize {
    let compact = g.edges.values().filter(|e| e.compact).count();
    (compact + g.components().len()).saturating_sub(g.vertices.len())
}

/// Incremental construction of graphs, mainly for fixtures and tests.
#[derive(Default)]
pub struct GraphBuilder {
    vertices: BTreeMap<String, Vertex>,
    half_edge_vertex: BTreeMap<String, String>,
    edges: BTreeMap<String, Edge>,
    cyclic_orders: BTreeMap<String, CyclicOrder>,
}

impl GraphBuilder {
    /// A trivalent vertex with its half-edges in cyclic order.
    pub fn trivalent(mut self, v: &str, weight: NovikovElement, cyclic: [&str; 3]) -> Self {
        self.vertices.insert(v.into(), Vertex { valency: 3, weight });
        for h in cyclic {
            self.half_edge_vertex.insert(h.into(), v.into());
        }
        self.cyclic_orders.insert(v.into(), CyclicOrder::new(cyclic));
        self
    }

    pub fn univalent(mut self, v: &str, weight: NovikovElement, h: &str) -> Self {
        self.vertices.insert(v.into(), Vertex { valency: 1, weight });
        self.half_edge_vertex.insert(h.into(), v.into());
        self
    }

    /// Any vertex with explicit incident half-edges and no cyclic order.
    pub fn raw_vertex(mut self, v: &str, valency: u8, weight: NovikovElement, hs: &[&str]) -> Self {
        self.vertices.insert(v.into(), Vertex { valency, weight });
        for h in hs {
            self.half_edge_vertex.insert((*h).into(), v.into());
        }
        self
    }

    /// Compact edge from `tail` to `head`.
    pub fn compact(mut self, e: &str, tail: &str, head: &str, weight: NovikovElement) -> Self {
        self.edges.insert(
            e.into(),
            Edge {
                half_edges: vec![tail.into(), head.into()],
                compact: true,
                weight,
                orientation: EdgeOrientation::Head(head.into()),
            },
        );
        self
    }

    pub fn noncompact(mut self, e: &str, h: &str, weight: NovikovElement, inward: bool) -> Self {
        self.edges.insert(
            e.into(),
            Edge {
                half_edges: vec![h.into()],
                compact: false,
                weight,
                orientation: if inward { EdgeOrientation::In } else { EdgeOrientation::Out },
            },
        );
        self
    }

    pub fn build(self) -> DecoratedGraph {
        DecoratedGraph::from_parts(self.vertices, self.half_edge_vertex, self.edges, self.cyclic_orders)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn quiver_counts() {
        let q = build_exit_quiver(&theta_unit()).unwrap();
        assert_eq!((q.black.len(), q.white.len(), q.arrows.len()), (2, 3, 6));
        let q = build_exit_quiver(&pants_unit()).unwrap();
        assert_eq!((q.black.len(), q.white.len(), q.arrows.len()), (1, 3, 3));
        let q = build_exit_quiver(&segment()).unwrap();
        assert_eq!((q.black.len(), q.white.len(), q.arrows.len()), (2, 1, 2));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(first_betti(&theta_unit()), 2);
        assert_eq!(first_betti(&segment()), 0);
        assert_eq!(first_betti(&pants_unit()), 0);
        assert_eq!(first_betti(&k4_unit()), 3);
    }

    #[test]
    fn cyclic_order_is_rotation_class() {
        let a = CyclicOrder::new(["b", "c", "a"]);
        assert_eq!(a, CyclicOrder::new(["a", "b", "c"]));
        assert_ne!(a, CyclicOrder::new(["a", "c", "b"]));
        assert_eq!(a.next("c"), Some("a"));
        assert_eq!(a.reversed(), CyclicOrder::new(["c", "b", "a"]));
    }
}
