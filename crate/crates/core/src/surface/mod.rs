//! Combinatorial invariants of the surface built from a graph: genus,
//! boundary and stops, homology classes of walk curves and their pairing.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::gluecat::{CurveKind, CurveObject};
use crate::graph::{DecoratedGraph, EdgeOrientation};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("graph has {0} connected components")]
    Disconnected(usize),
    #[error("expected a closed curve, got an arc")]
    ArcInput,
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("curve leaves the graph at {0}")]
    OffGraph(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus: usize,
    pub boundary_circles: usize,
    pub stops: usize,
}

/// Homology class in coordinates dual to a spanning tree: one `a` and one
/// `b` coordinate per compact edge outside the tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Class {
    pub cycle_edges: Vec<String>,
    pub a_coords: Vec<i64>,
    pub b_coords: Vec<i64>,
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.a_coords.iter().chain(&self.b_coords).all(|x| *x == 0)
    }
}

pub fn surface_invariants(g: &DecoratedGraph) -> Result<SurfaceInvariants, SurfaceError> {
    let comps = g.components().len();
    if comps != 1 {
        return Err(SurfaceError::Disconnected(comps));
    }
    let leaves: BTreeSet<&String> = g.vertices().iter().filter(|(_, v)| v.valency == 1).map(|(k, _)| k).collect();
    let inner = g.vertices().len() - leaves.len();
    let mut compact = 0usize;
    let mut boundary = 0;
    for e in g.edges().values() {
        let at_leaf = e
            .half_edges
            .iter()
            .any(|h| g.vertex_of(h).is_some_and(|v| leaves.contains(&v.to_string())));
        if !e.compact {
            // a free end attached to a stop vanishes along with it
            boundary += usize::from(!at_leaf);
        } else if at_leaf {
            let both = e.half_edges.iter().all(|h| g.vertex_of(h).is_some_and(|v| leaves.contains(&v.to_string())));
            boundary += usize::from(!both);
        } else {
            compact += 1;
        }
    }
    let genus = if inner == 0 { 0 } else { (compact + 1).saturating_sub(inner) };
    Ok(SurfaceInvariants { genus, boundary_circles: boundary, stops: leaves.len() })
}

fn endpoints<'a>(g: &'a DecoratedGraph, e: &str) -> Option<(&'a str, &'a str)> {
    let edge = g.edge(e)?;
    if !edge.compact {
        return None;
    }
    let head = match &edge.orientation {
        EdgeOrientation::Head(h) => h.as_str(),
        _ => return None,
    };
    let tail = edge.half_edges.iter().find(|h| *h != head).map(String::as_str).unwrap_or(head);
    Some((g.vertex_of(tail)?, g.vertex_of(head)?))
}

/// Deterministic breadth-first spanning tree of the compact edges.
pub fn spanning_tree(g: &DecoratedGraph) -> BTreeSet<String> {
    let mut tree = BTreeSet::new();
    let Some(root) = g.vertices().keys().next() else { return tree };
    let mut seen: BTreeSet<&str> = [root.as_str()].into();
    let mut queue = std::collections::VecDeque::from([root.as_str()]);
    while let Some(v) = queue.pop_front() {
        for h in g.half_edges_at(v) {
            let Some(w) = g.opposite(h).and_then(|o| g.vertex_of(o)) else { continue };
            if seen.insert(w) {
                tree.insert(g.edge_of(h).unwrap().to_string());
                queue.push_back(w);
            }
        }
    }
    tree
}

/// Checks that `tree` is a spanning tree of the compact edges and returns
/// the sorted compact edges outside it.
pub fn cycle_edges(g: &DecoratedGraph, tree: &BTreeSet<String>) -> Result<Vec<String>, SurfaceError> {
    let ids: BTreeMap<&str, usize> = g.vertices().keys().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in tree {
        let (a, b) = endpoints(g, e).ok_or_else(|| SurfaceError::InvalidTree(format!("{e} is not a compact edge")))?;
        let (ra, rb) = (find(&mut parent, ids[a]), find(&mut parent, ids[b]));
        if ra == rb {
            return Err(SurfaceError::InvalidTree(format!("{e} closes a cycle")));
        }
        parent[ra] = rb;
    }
    if tree.len() + 1 != ids.len() {
        return Err(SurfaceError::InvalidTree("tree does not span the graph".into()));
    }
    Ok(g
        .edges()
        .iter()
        .filter(|(k, e)| e.compact && !tree.contains(*k))
        .map(|(k, _)| k.clone())
        .collect())
}

/// Signed edge traversals of a closed walk: `+1` along the edge orientation.
pub fn signed_traversals(g: &DecoratedGraph, c: &CurveObject) -> Result<Vec<(String, i64)>, SurfaceError> {
    if c.kind == CurveKind::Arc {
        return Err(SurfaceError::ArcInput);
    }
    let mut out = Vec::with_capacity(c.steps.len());
    for s in &c.steps {
        let h = s.out_he.as_deref().ok_or_else(|| SurfaceError::OffGraph(s.vertex.clone()))?;
        let e = g.edge_of(h).ok_or_else(|| SurfaceError::OffGraph(h.to_string()))?;
        let departs_along = !g.points_into_vertex(h).ok_or_else(|| SurfaceError::OffGraph(h.to_string()))?;
        out.push((e.to_string(), if departs_along { 1 } else { -1 }));
    }
    Ok(out)
}

pub fn h1_class(g: &DecoratedGraph, tree: &BTreeSet<String>, c: &CurveObject) -> Result<H1Class, SurfaceError> {
    let edges = cycle_edges(g, tree)?;
    let mut b = vec![0; edges.len()];
    for (e, sign) in signed_traversals(g, c)? {
        if let Ok(i) = edges.binary_search(&e) {
            b[i] += sign;
        }
    }
    Ok(H1Class { a_coords: vec![0; edges.len()], b_coords: b, cycle_edges: edges })
}

/// `⟨a₁, b₂⟩ − ⟨a₂, b₁⟩`; walk curves are pure `b`-classes, so this vanishes
/// on them.
pub fn algebraic_intersection(
    g: &DecoratedGraph,
    tree: &BTreeSet<String>,
    c1: &CurveObject,
    c2: &CurveObject,
) -> Result<i64, SurfaceError> {
    let x = h1_class(g, tree, c1)?;
    let y = h1_class(g, tree, c2)?;
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<i64>();
    Ok(dot(&x.a_coords, &y.b_coords) - dot(&y.a_coords, &x.b_coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluecat::Step;
    use crate::graph::fixtures::{k4_unit, pants_unit, segment, theta_area, theta_unit};
    use crate::scalars::NovikovElement;

    fn t2() -> BTreeSet<String> {
        ["t2".to_string()].into()
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

    fn cycle12() -> CurveObject {
        CurveObject::closed(vec![Step::through("v1", "h12", "h11"), Step::through("v2", "h21", "h22")])
    }

    #[test]
    fn standard_invariants() {
        let s = |g: &DecoratedGraph| {
            let x = surface_invariants(g).unwrap();
            (x.genus, x.boundary_circles, x.stops)
        };
        assert_eq!(s(&theta_unit()), (2, 0, 0));
        assert_eq!(s(&theta_area()), (2, 0, 0));
        assert_eq!(s(&pants_unit()), (0, 3, 0));
        assert_eq!(s(&k4_unit()), (3, 0, 0));
        assert_eq!(s(&segment()), (0, 0, 2));
    }

    #[test]
    fn glued_pants_invariants() {
        let one = NovikovElement::one;
        let g = DecoratedGraph::builder()
            .trivalent("p", one(), ["p1", "p2", "p3"])
            .trivalent("r", one(), ["r1", "r2", "r3"])
            .compact("c", "p1", "r1", one())
            .noncompact("p2e", "p2", one(), false)
            .noncompact("p3e", "p3", one(), false)
            .noncompact("r2e", "r2", one(), false)
            .noncompact("r3e", "r3", one(), false)
            .build();
        let x = surface_invariants(&g).unwrap();
        assert_eq!((x.genus, x.boundary_circles, x.stops), (0, 4, 0));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = crate::graph::fixtures::two_pants();
        if g.components().len() > 1 {
            assert!(matches!(surface_invariants(&g), Err(SurfaceError::Disconnected(_))));
        }
    }

    #[test]
    fn cycle_class_is_dual_to_first_cycle_edge() {
        let g = theta_unit();
        let c = h1_class(&g, &t2(), &cycle12()).unwrap();
        assert_eq!(c.cycle_edges, vec!["t1".to_string(), "t3".to_string()]);
        assert_eq!(c.b_coords, vec![1, 0]);
        assert!(c.a_coords.iter().all(|x| *x == 0));
    }

    #[test]
    fn commutator_is_null_homologous() {
        let g = theta_unit();
        let t = signed_traversals(&g, &commutator()).unwrap();
        let expect = [("t1", 1), ("t2", -1), ("t3", 1), ("t1", -1), ("t2", 1), ("t3", -1)];
        assert_eq!(t, expect.map(|(e, s)| (e.to_string(), s)).to_vec());
        assert!(h1_class(&g, &t2(), &commutator()).unwrap().is_zero());
    }

    #[test]
    fn pairing_vanishes_on_walks() {
        let g = theta_unit();
        let c23 = CurveObject::closed(vec![Step::through("v1", "h13", "h12"), Step::through("v2", "h22", "h23")]);
        for (a, b) in [(&cycle12(), &c23), (&cycle12(), &cycle12()), (&commutator(), &c23)] {
            assert_eq!(algebraic_intersection(&g, &t2(), a, b).unwrap(), 0);
        }
    }

    #[test]
    fn bad_trees_and_arcs_are_rejected() {
        let g = theta_unit();
        let cyc: BTreeSet<String> = ["t1".into(), "t2".into()].into();
        assert!(matches!(cycle_edges(&g, &cyc), Err(SurfaceError::InvalidTree(_))));
        assert!(matches!(cycle_edges(&g, &BTreeSet::new()), Err(SurfaceError::InvalidTree(_))));
        let arc = CurveObject::arc(vec![Step::through("v1", "h12", "h11")]);
        assert_eq!(h1_class(&g, &t2(), &arc).unwrap_err(), SurfaceError::ArcInput);
    }

    #[test]
    fn bfs_tree_spans() {
        for g in [theta_unit(), k4_unit()] {
            let t = spanning_tree(&g);
            let cycles = cycle_edges(&g, &t).unwrap();
            assert_eq!(cycles.len(), crate::graph::first_betti(&g));
        }
    }
}
