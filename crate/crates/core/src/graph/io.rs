use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{validate, CyclicOrder, DecoratedGraph, Edge, EdgeOrientation, GraphError, Vertex};
use crate::scalars::NovikovElement;

fn one() -> NovikovElement {
    NovikovElement::one()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VertexRecord {
    pub id: String,
    pub valency: u8,
    /// Incident half-edges.  Optional for trivalent vertices, whose cyclic
    /// order already lists them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_edges: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeRecord {
    pub id: String,
    pub half_edges: Vec<String>,
    pub compact: bool,
    #[serde(default = "one")]
    pub weight: NovikovElement,
    pub orientation: String,
}

/// On-disk form of a decorated graph.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub vertex_weights: BTreeMap<String, NovikovElement>,
    #[serde(default)]
    pub cyclic_orders: BTreeMap<String, Vec<String>>,
}

fn parse_orientation(s: &str) -> Result<EdgeOrientation, GraphError> {
    match s {
        "in" => Ok(EdgeOrientation::In),
        "out" => Ok(EdgeOrientation::Out),
        _ => s
            .strip_prefix("head=")
            .map(|h| EdgeOrientation::Head(h.to_string()))
            .ok_or_else(|| GraphError::Malformed(format!("bad orientation {s:?}"))),
    }
}

fn orientation_text(o: &EdgeOrientation) -> String {
    match o {
        EdgeOrientation::In => "in".into(),
        EdgeOrientation::Out => "out".into(),
        EdgeOrientation::Head(h) => format!("head={h}"),
    }
}

impl GraphFile {
    /// Builds the graph without validating it.
    pub fn to_graph(&self) -> Result<DecoratedGraph, GraphError> {
        let mut vertices = BTreeMap::new();
        let mut half_edge_vertex = BTreeMap::new();
        for v in &self.vertices {
            let weight = self.vertex_weights.get(&v.id).cloned().unwrap_or_else(one);
            if vertices
                .insert(v.id.clone(), Vertex { valency: v.valency, weight })
                .is_some()
            {
                return Err(GraphError::Malformed(format!("duplicate vertex {}", v.id)));
            }
            for h in v.half_edges.iter().flatten() {
                half_edge_vertex.insert(h.clone(), v.id.clone());
            }
        }
        for w in self.vertex_weights.keys() {
            if !vertices.contains_key(w) {
                return Err(GraphError::Malformed(format!("weight for unknown vertex {w}")));
            }
        }
        let mut cyclic_orders = BTreeMap::new();
        for (v, hs) in &self.cyclic_orders {
            for h in hs {
                if let Some(prev) = half_edge_vertex.insert(h.clone(), v.clone()) {
                    if &prev != v {
                        return Err(GraphError::Malformed(format!(
                            "half-edge {h} placed at both {prev} and {v}"
                        )));
                    }
                }
            }
            cyclic_orders.insert(v.clone(), CyclicOrder::new(hs.clone()));
        }
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            let edge = Edge {
                half_edges: e.half_edges.clone(),
                compact: e.compact,
                weight: e.weight.clone(),
                orientation: parse_orientation(&e.orientation)?,
            };
            if edges.insert(e.id.clone(), edge).is_some() {
                return Err(GraphError::Malformed(format!("duplicate edge {}", e.id)));
            }
        }
        Ok(DecoratedGraph::from_parts(vertices, half_edge_vertex, edges, cyclic_orders))
    }

    pub fn from_graph(g: &DecoratedGraph) -> Self {
        GraphFile {
            vertices: g
                .vertices()
                .iter()
                .map(|(v, x)| VertexRecord {
                    id: v.clone(),
                    valency: x.valency,
                    half_edges: Some(g.half_edges_at(v).into_iter().map(String::from).collect()),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|(e, x)| EdgeRecord {
                    id: e.clone(),
                    half_edges: x.half_edges.clone(),
                    compact: x.compact,
                    weight: x.weight.clone(),
                    orientation: orientation_text(&x.orientation),
                })
                .collect(),
            vertex_weights: g
                .vertices()
                .iter()
                .map(|(v, x)| (v.clone(), x.weight.clone()))
                .collect(),
            cyclic_orders: g
                .cyclic_orders()
                .iter()
                .map(|(v, c)| (v.clone(), c.as_slice().to_vec()))
                .collect(),
        }
    }
}

/// Parses and validates a graph; invalid graphs are rejected with the full
/// violation report.
pub fn graph_from_json(text: &str) -> Result<DecoratedGraph, GraphError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
    let g = file.to_graph()?;
    let report = validate(&g);
    if report.is_empty() {
        Ok(g)
    } else {
        Err(GraphError::Invalid(report))
    }
}

pub fn graph_to_json(g: &DecoratedGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes")
}

pub fn read_graph(path: &Path) -> Result<DecoratedGraph, GraphError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Malformed(format!("{}: {e}", path.display())))?;
    graph_from_json(&text)
}
