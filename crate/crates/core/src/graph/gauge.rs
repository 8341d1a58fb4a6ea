use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;

use super::{validate, DecoratedGraph, GraphError};
use crate::scalars::{random_unit, NovikovElement};

/// Invertible scalar per half-edge; missing entries mean 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaugeChain(pub BTreeMap<String, NovikovElement>);

impl GaugeChain {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn value(&self, h: &str) -> NovikovElement {
        self.0.get(h).cloned().unwrap_or_else(NovikovElement::one)
    }

    /// Pointwise product.
    pub fn compose(&self, other: &GaugeChain) -> GaugeChain {
        let keys: BTreeSet<&String> = self.0.keys().chain(other.0.keys()).collect();
        GaugeChain(
            keys.into_iter()
                .map(|h| (h.clone(), &self.value(h) * &other.value(h)))
                .collect(),
        )
    }

    /// Random monomial chain `±c·q^{e}` on every half-edge of `g`.
    pub fn random<R: Rng>(g: &DecoratedGraph, rng: &mut R) -> GaugeChain {
        GaugeChain(g.half_edges().keys().map(|h| (h.clone(), random_unit(rng))).collect())
    }
}

/// `∏_v α(v) · ∏_t β(t)`.
pub fn total_weight(g: &DecoratedGraph) -> NovikovElement {
    let mut acc = NovikovElement::one();
    for v in g.vertices().values() {
        acc = &acc * &v.weight;
    }
    for e in g.edges().values() {
        acc = &acc * &e.weight;
    }
    acc
}

/// `α(v) ↦ α(v)·∏ λ_x^{-1}` over half-edges at `v`, `β(t) ↦ β(t)·∏ λ_x` over
/// half-edges on `t`.
pub fn gauge_transform(g: &DecoratedGraph, chain: &GaugeChain) -> Result<DecoratedGraph, GraphError> {
    for (h, val) in &chain.0 {
        if !g.half_edges().contains_key(h) {
            return Err(GraphError::UnknownHalfEdge(h.clone()));
        }
        if !val.is_invertible() {
            return Err(GraphError::NotInvertible(h.clone()));
        }
    }
    let mut vw: BTreeMap<String, NovikovElement> =
        g.vertices().iter().map(|(v, x)| (v.clone(), x.weight.clone())).collect();
    let mut ew: BTreeMap<String, NovikovElement> =
        g.edges().iter().map(|(e, x)| (e.clone(), x.weight.clone())).collect();
    for (h, val) in &chain.0 {
        let inv = val.inverse().expect("checked invertible");
        if let Some(v) = g.vertex_of(h) {
            let w = vw.get_mut(v).expect("known vertex");
            *w = &*w * &inv;
        }
        if let Some(e) = g.edge_of(h) {
            let w = ew.get_mut(e).expect("known edge");
            *w = &*w * val;
        }
    }
    Ok(g.with_weights(vw, ew))
}

/// Moves all weight onto one edge (the first noncompact edge, else the first
/// compact edge) by solving the chain equation along a spanning tree of the
/// exit-path quiver.
pub fn gauge_fix(g: &DecoratedGraph) -> Result<(DecoratedGraph, GaugeChain), GraphError> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(GraphError::Invalid(report));
    }
    let comps = g.components().len();
    if comps != 1 {
        return Err(GraphError::Disconnected(comps));
    }
    let root = g
        .edges()
        .iter()
        .find(|(_, e)| !e.compact)
        .or_else(|| g.edges().iter().next())
        .map(|(e, _)| e.clone())
        .ok_or_else(|| GraphError::Malformed("graph has no edges".into()))?;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Node {
        V(String),
        E(String),
    }
    let arrows_at = |n: &Node| -> Vec<(String, Node)> {
        match n {
            Node::V(v) => g
                .half_edges_at(v)
                .into_iter()
                .map(|h| (h.to_string(), Node::E(g.edge_of(h).unwrap().to_string())))
                .collect(),
            Node::E(e) => g.edges()[e]
                .half_edges
                .iter()
                .map(|h| (h.clone(), Node::V(g.vertex_of(h).unwrap().to_string())))
                .collect(),
        }
    };

    // BFS tree; `parent_arrow[n]` is the half-edge joining n to its parent.
    let root_node = Node::E(root.clone());
    let mut parent_arrow: BTreeMap<Node, String> = BTreeMap::new();
    let mut visited: BTreeSet<Node> = [root_node.clone()].into();
    let mut order = vec![];
    let mut queue = VecDeque::from([root_node.clone()]);
    while let Some(n) = queue.pop_front() {
        order.push(n.clone());
        for (h, m) in arrows_at(&n) {
            if visited.insert(m.clone()) {
                parent_arrow.insert(m.clone(), h);
                queue.push_back(m);
            }
        }
    }

    let mut chain: BTreeMap<String, NovikovElement> = BTreeMap::new();
    let val = |c: &BTreeMap<String, NovikovElement>, h: &str| {
        c.get(h).cloned().unwrap_or_else(NovikovElement::one)
    };
    for n in order.iter().rev() {
        let Some(up) = parent_arrow.get(n) else { continue };
        let mut acc = match n {
            Node::V(v) => g.vertices()[v].weight.clone(),
            Node::E(e) => g.edges()[e].weight.clone(),
        };
        for (h, _) in arrows_at(n) {
            if &h == up {
                continue;
            }
            let l = val(&chain, &h);
            acc = match n {
                Node::V(_) => &acc * &l.inverse().expect("invertible"),
                Node::E(_) => &acc * &l,
            };
        }
        let lambda = match n {
            Node::V(_) => acc,
            Node::E(_) => acc.inverse().expect("invertible"),
        };
        chain.insert(up.clone(), lambda);
    }
    let chain = GaugeChain(chain);
    let fixed = gauge_transform(g, &chain)?;
    Ok((fixed, chain))
}
