//! Edge stalks and restriction from vertex stalks: the shift rule table on
//! generators, the morphism-level restriction, transport across an edge and
//! the univalent model.

mod laurent;
mod model;

use std::collections::BTreeMap;

pub use laurent::Laurent;
pub use model::{
    class_representative, compose_classes, generator_object, local_classes, restrict_class, variable_index,
    LocalClass,
};

use crate::graph::DecoratedGraph;
use crate::scalars::{NovikovElement, ScalarError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RestrictError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} is not trivalent")]
    NotTrivalent(String),
    #[error("vertex {0} is not univalent")]
    NotUnivalent(String),
    #[error("half-edge {half_edge} is not at vertex {vertex}")]
    NotAtVertex { half_edge: String, vertex: String },
    #[error("{0} is not a generator at this vertex")]
    NotAGenerator(String),
    #[error("edge {0} is not compact")]
    Noncompact(String),
    #[error("frame {frame} does not belong to edge {edge}")]
    FrameMismatch { frame: String, edge: String },
    #[error("morphism refers to summand {0} which does not exist")]
    BadIndex(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Generating object of a vertex stalk: `F_ab` for two half-edges at a
/// trivalent vertex, or the free rank-one module at a univalent vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalGenerator {
    Pair(String, String),
    Free,
}

impl LocalGenerator {
    /// `F_ab`; the pair is unordered.
    pub fn pair(a: &str, b: &str) -> Self {
        if a <= b {
            LocalGenerator::Pair(a.into(), b.into())
        } else {
            LocalGenerator::Pair(b.into(), a.into())
        }
    }

    pub fn contains(&self, h: &str) -> bool {
        match self {
            LocalGenerator::Pair(a, b) => a == h || b == h,
            LocalGenerator::Free => true,
        }
    }

    /// For a pair containing `h`, the other half-edge.
    pub fn other(&self, h: &str) -> Option<&str> {
        match self {
            LocalGenerator::Pair(a, b) if a == h => Some(b),
            LocalGenerator::Pair(a, b) if b == h => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedGenerator {
    pub generator: LocalGenerator,
    pub shift: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGenerator {
    pub parity: u8,
    pub frame: String,
}

/// Object of an edge stalk: free generators, optionally with a presentation
/// differential (entries `(target, source) → Laurent`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeObject {
    pub edge: String,
    pub generators: Vec<EdgeGenerator>,
    pub relation_scalar: NovikovElement,
    pub presentation: BTreeMap<(usize, usize), Laurent>,
}

impl EdgeObject {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A morphism given by local classes between generator sums:
/// `entries[(target, source)]` is a combination of classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorMorphism {
    pub entries: BTreeMap<(usize, usize), Vec<(NovikovElement, LocalClass)>>,
}

/// Matrix of Laurent polynomials between restricted generators.
pub type EdgeMorphism = BTreeMap<(usize, usize), Laurent>;

pub(crate) fn trivalent_at<'a>(g: &'a DecoratedGraph, v: &str, x: &str) -> Result<&'a crate::graph::CyclicOrder, RestrictError> {
    let vert = g.vertex(v).ok_or_else(|| RestrictError::UnknownVertex(v.into()))?;
    if vert.valency != 3 {
        return Err(RestrictError::NotTrivalent(v.into()));
    }
    if g.vertex_of(x) != Some(v) {
        return Err(RestrictError::NotAtVertex {
            half_edge: x.into(),
            vertex: v.into(),
        });
    }
    g.cyclic_order(v).ok_or_else(|| RestrictError::NotTrivalent(v.into()))
}

fn check_generator(g: &DecoratedGraph, v: &str, gen: &LocalGenerator) -> Result<(), RestrictError> {
    let valency = g.vertex(v).ok_or_else(|| RestrictError::UnknownVertex(v.into()))?.valency;
    match gen {
        LocalGenerator::Free if valency == 1 => Ok(()),
        LocalGenerator::Pair(a, b)
            if valency == 3 && a != b && g.vertex_of(a) == Some(v) && g.vertex_of(b) == Some(v) =>
        {
            Ok(())
        }
        other => Err(RestrictError::NotAGenerator(format!("{other:?}"))),
    }
}

/// Parity of the restriction of an unshifted generator along `x`, or `None`
/// when the restriction vanishes.
///
/// With the cyclic order written so that `j` follows `i`: `F_ij` along `i` is
/// even when the edge points into the vertex and odd otherwise; along `j` it
/// is odd when the edge points in and even otherwise.
pub fn rule_parity(
    g: &DecoratedGraph,
    v: &str,
    x: &str,
    gen: &LocalGenerator,
) -> Result<Option<u8>, RestrictError> {
    check_generator(g, v, gen)?;
    if g.vertex_of(x) != Some(v) {
        return Err(RestrictError::NotAtVertex {
            half_edge: x.into(),
            vertex: v.into(),
        });
    }
    let (a, b) = match gen {
        LocalGenerator::Free => return Ok(Some(0)),
        LocalGenerator::Pair(a, b) => (a.as_str(), b.as_str()),
    };
    if x != a && x != b {
        return Ok(None);
    }
    let order = trivalent_at(g, v, x)?;
    let (i, _j) = if order.next(a) == Some(b) { (a, b) } else { (b, a) };
    let inward = g.points_into_vertex(x).expect("validated graph");
    Ok(Some(match (x == i, inward) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 1,
        (false, false) => 0,
    }))
}

/// Restricts a sum of shifted generators along the half-edge `x`; vanishing
/// summands are dropped and shifts add.
pub fn knorrer_restrict(
    g: &DecoratedGraph,
    v: &str,
    x: &str,
    obj: &[ShiftedGenerator],
) -> Result<EdgeObject, RestrictError> {
    let edge = g
        .edge_of(x)
        .ok_or_else(|| RestrictError::NotAtVertex {
            half_edge: x.into(),
            vertex: v.into(),
        })?
        .to_string();
    let mut generators = Vec::new();
    for s in obj {
        if let Some(p) = rule_parity(g, v, x, &s.generator)? {
            generators.push(EdgeGenerator {
                parity: (p + s.shift) % 2,
                frame: x.into(),
            });
        }
    }
    Ok(EdgeObject {
        relation_scalar: g.edge(&edge).expect("edge exists").weight.clone(),
        edge,
        generators,
        presentation: BTreeMap::new(),
    })
}

/// Restricts a morphism between generator sums along `x`.  Rows and columns
/// of the result index the surviving summands in order.
pub fn restrict_morphism(
    g: &DecoratedGraph,
    v: &str,
    x: &str,
    source: &[ShiftedGenerator],
    target: &[ShiftedGenerator],
    phi: &GeneratorMorphism,
) -> Result<EdgeMorphism, RestrictError> {
    let surviving = |obj: &[ShiftedGenerator]| -> Result<Vec<Option<usize>>, RestrictError> {
        let mut k = 0;
        obj.iter()
            .map(|s| {
                Ok(rule_parity(g, v, x, &s.generator)?.map(|_| {
                    k += 1;
                    k - 1
                }))
            })
            .collect()
    };
    let src_idx = surviving(source)?;
    let tgt_idx = surviving(target)?;
    let mut out = EdgeMorphism::new();
    for ((t, s), combo) in &phi.entries {
        let (Some(ti), Some(si)) = (
            tgt_idx.get(*t).ok_or(RestrictError::BadIndex(*t))?,
            src_idx.get(*s).ok_or(RestrictError::BadIndex(*s))?,
        ) else {
            continue;
        };
        let mut acc = Laurent::zero();
        for (c, class) in combo {
            if let Some(l) = restrict_class(g, v, x, &source[*s].generator, &target[*t].generator, class)? {
                acc = acc.add(&l.scale(c));
            }
        }
        if !acc.is_zero() {
            out.insert((*ti, *si), acc);
        }
    }
    Ok(out)
}

/// Re-expresses an edge object in the coordinate of the other half-edge of a
/// compact edge, via `x ↦ β·y^{-1}`.
pub fn edge_transport(g: &DecoratedGraph, obj: &EdgeObject) -> Result<EdgeObject, RestrictError> {
    let edge = g.edge(&obj.edge).ok_or_else(|| RestrictError::Noncompact(obj.edge.clone()))?;
    if !edge.compact {
        return Err(RestrictError::Noncompact(obj.edge.clone()));
    }
    let mut generators = Vec::with_capacity(obj.generators.len());
    for gen in &obj.generators {
        let other = edge
            .half_edges
            .iter()
            .find(|h| **h != gen.frame)
            .filter(|_| edge.half_edges.contains(&gen.frame))
            .ok_or_else(|| RestrictError::FrameMismatch {
                frame: gen.frame.clone(),
                edge: obj.edge.clone(),
            })?;
        generators.push(EdgeGenerator {
            parity: gen.parity,
            frame: other.clone(),
        });
    }
    let mut presentation = BTreeMap::new();
    for (k, l) in &obj.presentation {
        presentation.insert(*k, l.transport(&edge.weight)?);
    }
    Ok(EdgeObject {
        edge: obj.edge.clone(),
        generators,
        relation_scalar: obj.relation_scalar.clone(),
        presentation,
    })
}

/// Transports a morphism entry across a compact edge.
pub fn transport_morphism(g: &DecoratedGraph, edge: &str, l: &Laurent) -> Result<Laurent, RestrictError> {
    let e = g.edge(edge).ok_or_else(|| RestrictError::Noncompact(edge.into()))?;
    if !e.compact {
        return Err(RestrictError::Noncompact(edge.into()));
    }
    Ok(l.transport(&e.weight)?)
}

/// Summand of an object over a univalent vertex: free, or the cyclic module
/// `κ[x]/(x − root)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivalentSummand {
    Free { shift: u8 },
    Torsion { root: NovikovElement, shift: u8 },
}

/// Laurent localization of an object over a univalent vertex.  Torsion is
/// kept as its two-term presentation `O --(x − root)--> O`; presentations
/// whose differential becomes a unit are contractible and dropped.
pub fn one_valent_restrict(
    g: &DecoratedGraph,
    v: &str,
    obj: &[UnivalentSummand],
) -> Result<EdgeObject, RestrictError> {
    let vert = g.vertex(v).ok_or_else(|| RestrictError::UnknownVertex(v.into()))?;
    if vert.valency != 1 {
        return Err(RestrictError::NotUnivalent(v.into()));
    }
    let x = g.half_edges_at(v)[0].to_string();
    let edge = g.edge_of(&x).expect("validated graph").to_string();
    let mut generators = Vec::new();
    let mut presentation = BTreeMap::new();
    for s in obj {
        match s {
            UnivalentSummand::Free { shift } => generators.push(EdgeGenerator {
                parity: shift % 2,
                frame: x.clone(),
            }),
            UnivalentSummand::Torsion { root, shift } => {
                let d = Laurent::monomial(NovikovElement::one(), 1).add(&Laurent::monomial(-root, 0));
                if d.is_unit() {
                    continue;
                }
                let src = generators.len();
                generators.push(EdgeGenerator {
                    parity: (shift + 1) % 2,
                    frame: x.clone(),
                });
                generators.push(EdgeGenerator {
                    parity: shift % 2,
                    frame: x.clone(),
                });
                presentation.insert((src + 1, src), d);
            }
        }
    }
    Ok(EdgeObject {
        relation_scalar: g.edge(&edge).expect("edge exists").weight.clone(),
        edge,
        generators,
        presentation,
    })
}

#[cfg(test)]
mod tests;
