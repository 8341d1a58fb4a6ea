//! Graphs of normal-crossing surfaces with graph-like singular locus and of
//! smooth toric 3-fold fans, orientability of the dual intersection
//! complex, and the framings an orientation induces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::graph::{CyclicOrder, DecoratedGraph, Edge, EdgeOrientation, Framing, GraphError, Vertex};
use crate::scalars::NovikovElement;

#[derive(Debug, thiserror::Error)]
pub enum NcError {
    #[error("curve {0} is a punctured line; such components have no place in the graph")]
    GmComponent(String),
    #[error("singular locus is not graph-like: {0}")]
    NotGraphLike(String),
    #[error("cone {0} is not smooth")]
    NonSmoothCone(usize),
    #[error("inconsistent fan: {0}")]
    InconsistentFan(String),
    #[error("no orientation given at vertex {0}")]
    MissingOrientation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveType {
    Gm,
    A1,
    P1,
}

impl CurveType {
    fn max_marks(self) -> usize {
        match self {
            CurveType::Gm => 0,
            CurveType::A1 => 1,
            CurveType::P1 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularCurve {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: CurveType,
    /// The two components of the surface containing the curve.
    pub components: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePoint {
    pub name: String,
    pub curves: [String; 3],
}

/// Combinatorics of a normal-crossing surface: components, double curves,
/// triple points, and the marked points on each double curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcSurfaceDesc {
    pub components: BTreeSet<String>,
    pub curves: Vec<SingularCurve>,
    pub triple_points: Vec<TriplePoint>,
    pub marks: BTreeMap<String, Vec<String>>,
}

impl NcSurfaceDesc {
    pub fn from_json(text: &str) -> Result<Self, NcError> {
        serde_json::from_str(text).map_err(|e| NcError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn curve(&self, name: &str) -> Option<&SingularCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    fn marks_of(&self, curve: &str) -> &[String] {
        self.marks.get(curve).map_or(&[], Vec::as_slice)
    }

    /// Checks the graph-like conditions and the incidences.
    pub fn check(&self) -> Result<(), NcError> {
        let bad = |m: String| Err(NcError::NotGraphLike(m));
        let mut names = BTreeSet::new();
        for c in &self.curves {
            if !names.insert(c.name.as_str()) {
                return bad(format!("curve {} listed twice", c.name));
            }
            if c.kind == CurveType::Gm {
                return Err(NcError::GmComponent(c.name.clone()));
            }
            for x in &c.components {
                if !self.components.contains(x) {
                    return Err(NcError::Malformed(format!("curve {} lies on unknown component {x}", c.name)));
                }
            }
            if c.components[0] == c.components[1] {
                return bad(format!("curve {} is a self-intersection", c.name));
            }
            let marks = self.marks_of(&c.name);
            if marks.len() > c.kind.max_marks() {
                return bad(format!("curve {} carries {} marks", c.name, marks.len()));
            }
            if marks.is_empty() {
                return bad(format!("curve {} has no marked point", c.name));
            }
            if marks.iter().collect::<BTreeSet<_>>().len() != marks.len() {
                return bad(format!("curve {} repeats a mark", c.name));
            }
        }
        for k in self.marks.keys() {
            if self.curve(k).is_none() {
                return Err(NcError::Malformed(format!("marks given for unknown curve {k}")));
            }
        }
        let triple: BTreeSet<&str> = self.triple_points.iter().map(|p| p.name.as_str()).collect();
        for p in &self.triple_points {
            for c in &p.curves {
                if self.curve(c).is_none() {
                    return Err(NcError::Malformed(format!("triple point {} on unknown curve {c}", p.name)));
                }
                if !self.marks_of(c).contains(&p.name) {
                    return bad(format!("triple point {} is not marked on {c}", p.name));
                }
            }
            if p.curves.iter().collect::<BTreeSet<_>>().len() != 3 {
                return bad(format!("triple point {} repeats a curve", p.name));
            }
        }
        // every mark belongs to the right number of curves
        let mut count: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (c, ms) in &self.marks {
            for m in ms {
                count.entry(m.as_str()).or_default().push(c.as_str());
            }
        }
        for (m, cs) in count {
            let expected = if triple.contains(m) { 3 } else { 1 };
            if cs.len() != expected {
                return bad(format!("point {m} is marked on {} curves", cs.len()));
            }
        }
        Ok(())
    }
}

fn half_edge(curve: &str, point: &str) -> String {
    format!("{curve}:{point}")
}

/// Vertices are the marked points, edges the double curves.  Weights are 1,
/// cyclic orders are sorted by half-edge name until an orientation is
/// supplied, and compact edges point away from their smaller endpoint.
pub fn graph_from_nc(desc: &NcSurfaceDesc) -> Result<DecoratedGraph, NcError> {
    desc.check()?;
    let triple: BTreeSet<&str> = desc.triple_points.iter().map(|p| p.name.as_str()).collect();
    let mut vertices = BTreeMap::new();
    let mut half_edge_vertex = BTreeMap::new();
    let mut at: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for c in &desc.curves {
        let mut marks = desc.marks_of(&c.name).to_vec();
        marks.sort();
        for m in &marks {
            let h = half_edge(&c.name, m);
            half_edge_vertex.insert(h.clone(), m.clone());
            at.entry(m.clone()).or_default().push(h);
            let valency = if triple.contains(m.as_str()) { 3 } else { 1 };
            vertices.insert(m.clone(), Vertex { valency, weight: NovikovElement::one() });
        }
        let hs: Vec<String> = marks.iter().map(|m| half_edge(&c.name, m)).collect();
        let edge = if hs.len() == 2 {
            Edge {
                orientation: EdgeOrientation::Head(hs[1].clone()),
                half_edges: hs,
                compact: true,
                weight: NovikovElement::one(),
            }
        } else {
            Edge { half_edges: hs, compact: false, weight: NovikovElement::one(), orientation: EdgeOrientation::Out }
        };
        edges.insert(c.name.clone(), edge);
    }
    let cyclic_orders = at
        .into_iter()
        .filter(|(_, hs)| hs.len() == 3)
        .map(|(v, hs)| (v, CyclicOrder::new(hs)))
        .collect();
    Ok(DecoratedGraph::from_parts(vertices, half_edge_vertex, edges, cyclic_orders).checked()?)
}

/// A complete or partial fan in `Z³` given by rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricFan3 {
    pub rays: Vec<[i64; 3]>,
    pub max_cones: Vec<[usize; 3]>,
}

fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

impl ToricFan3 {
    pub fn from_json(text: &str) -> Result<Self, NcError> {
        serde_json::from_str(text).map_err(|e| NcError::Malformed(e.to_string()))
    }

    /// Walls (ray pairs) with the cones containing them.
    pub fn walls(&self) -> Result<BTreeMap<(usize, usize), Vec<usize>>, NcError> {
        let mut walls: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, cone) in self.max_cones.iter().enumerate() {
            if cone.iter().any(|i| *i >= self.rays.len()) {
                return Err(NcError::InconsistentFan(format!("cone {k} uses an unknown ray")));
            }
            let [a, b, c] = cone.map(|i| self.rays[i]);
            if det3(a, b, c).abs() != 1 {
                return Err(NcError::NonSmoothCone(k));
            }
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                let key = (cone[i].min(cone[j]), cone[i].max(cone[j]));
                walls.entry(key).or_default().push(k);
            }
        }
        if let Some((w, cs)) = walls.iter().find(|(_, cs)| cs.len() > 2) {
            return Err(NcError::InconsistentFan(format!("wall {w:?} lies in {} cones", cs.len())));
        }
        Ok(walls)
    }
}

fn wall_name(w: (usize, usize)) -> String {
    format!("w{}_{}", w.0, w.1)
}

/// The toric boundary divisor as a normal-crossing surface: components are
/// the rays, double curves the walls, triple points the maximal cones.
pub fn nc_from_fan(fan: &ToricFan3) -> Result<NcSurfaceDesc, NcError> {
    let walls = fan.walls()?;
    let components = (0..fan.rays.len()).map(|i| format!("D{i}")).collect();
    let curves = walls
        .iter()
        .map(|(w, cs)| SingularCurve {
            name: wall_name(*w),
            kind: if cs.len() == 2 { CurveType::P1 } else { CurveType::A1 },
            components: [format!("D{}", w.0), format!("D{}", w.1)],
        })
        .collect();
    let triple_points = fan
        .max_cones
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let w = |i: usize, j: usize| wall_name((c[i].min(c[j]), c[i].max(c[j])));
            TriplePoint { name: format!("c{k}"), curves: [w(0, 1), w(1, 2), w(0, 2)] }
        })
        .collect();
    let marks = walls
        .iter()
        .map(|(w, cs)| (wall_name(*w), cs.iter().map(|k| format!("c{k}")).collect()))
        .collect();
    Ok(NcSurfaceDesc { components, curves, triple_points, marks })
}

/// Vertices are maximal cones, edges are walls.
pub fn graph_from_fan(fan: &ToricFan3) -> Result<DecoratedGraph, NcError> {
    graph_from_nc(&nc_from_fan(fan)?)
}

/// An orientation of the dual complex, recorded as the oriented cyclic
/// order of the three double curves at each triple point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub cyclic: BTreeMap<String, [String; 3]>,
}

impl Orientation {
    pub fn reversed(&self) -> Orientation {
        let cyclic = self.cyclic.iter().map(|(k, [a, b, c])| (k.clone(), [a.clone(), c.clone(), b.clone()])).collect();
        Orientation { cyclic }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Orientability {
    Orientable(Orientation),
    /// A closed chain of triangles along which the orientation flips an odd
    /// number of times.
    NonOrientable { cycle: Vec<String> },
}

/// Sorted vertices of the triangle of a triple point.
fn triangle(desc: &NcSurfaceDesc, p: &TriplePoint) -> Result<[String; 3], NcError> {
    let mut verts = BTreeSet::new();
    for c in &p.curves {
        let curve = desc.curve(c).ok_or_else(|| NcError::Malformed(format!("unknown curve {c}")))?;
        verts.extend(curve.components.iter().cloned());
    }
    let v: Vec<String> = verts.into_iter().collect();
    v.try_into()
        .map_err(|_| NcError::NotGraphLike(format!("triple point {} does not span a triangle", p.name)))
}

/// Direction of edge `{x, y}` with `x < y` under the reference orientation
/// `(a, b, c)` of a sorted triangle.
fn edge_sign(tri: &[String; 3], pair: &[String; 2]) -> i8 {
    let (x, y) = if pair[0] < pair[1] { (&pair[0], &pair[1]) } else { (&pair[1], &pair[0]) };
    if (x == &tri[0] && y == &tri[2]) || (x == &tri[2] && y == &tri[0]) {
        -1
    } else {
        1
    }
}

/// Propagates a consistent orientation across triangles sharing a double
/// curve, or exhibits an orientation-reversing cycle.
pub fn check_orientability(desc: &NcSurfaceDesc) -> Result<Orientability, NcError> {
    desc.check()?;
    let tris: Vec<[String; 3]> = desc.triple_points.iter().map(|p| triangle(desc, p)).collect::<Result<_, _>>()?;
    let mut by_curve: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, p) in desc.triple_points.iter().enumerate() {
        for c in &p.curves {
            by_curve.entry(c.as_str()).or_default().push(i);
        }
    }
    let n = tris.len();
    let mut sign: Vec<Option<i8>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for c in &desc.triple_points[i].curves {
                let pair = &desc.curve(c).unwrap().components;
                for &j in &by_curve[c.as_str()] {
                    if j == i {
                        continue;
                    }
                    // neighbours induce opposite directions on the shared edge
                    let want = -sign[i].unwrap() * edge_sign(&tris[i], pair) * edge_sign(&tris[j], pair);
                    match sign[j] {
                        None => {
                            sign[j] = Some(want);
                            parent[j] = Some(i);
                            queue.push_back(j);
                        }
                        Some(s) if s != want => {
                            let path = |mut k: usize| {
                                let mut p = vec![k];
                                while let Some(q) = parent[k] {
                                    p.push(q);
                                    k = q;
                                }
                                p
                            };
                            let (pi, pj) = (path(i), path(j));
                            let common = pi.iter().find(|x| pj.contains(x)).copied().unwrap();
                            let mut cycle: Vec<usize> = pi.iter().take_while(|x| **x != common).copied().collect();
                            cycle.push(common);
                            let back: Vec<usize> = pj.iter().take_while(|x| **x != common).copied().collect();
                            cycle.extend(back.into_iter().rev());
                            let names = cycle.into_iter().map(|k| desc.triple_points[k].name.clone()).collect();
                            return Ok(Orientability::NonOrientable { cycle: names });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    let mut cyclic = BTreeMap::new();
    for (i, p) in desc.triple_points.iter().enumerate() {
        let t = &tris[i];
        let (a, b, c) = if sign[i] == Some(1) { (&t[0], &t[1], &t[2]) } else { (&t[0], &t[2], &t[1]) };
        // the curve joining two consecutive vertices of the oriented triangle
        let joining = |x: &String, y: &String| {
            p.curves
                .iter()
                .find(|cv| {
                    let comps = &desc.curve(cv).unwrap().components;
                    comps.contains(x) && comps.contains(y)
                })
                .cloned()
                .unwrap()
        };
        cyclic.insert(p.name.clone(), [joining(a, b), joining(b, c), joining(c, a)]);
    }
    Ok(Orientability::Orientable(Orientation { cyclic }))
}

/// Cyclic orders induced at every trivalent vertex by an orientation;
/// edge orientations are kept from the graph.
pub fn framing_from_orientation(g: &DecoratedGraph, o: &Orientation) -> Result<Framing, NcError> {
    let mut framing = g.framing();
    for (v, data) in g.vertices() {
        if data.valency != 3 {
            continue;
        }
        let curves = o.cyclic.get(v).ok_or_else(|| NcError::MissingOrientation(v.clone()))?;
        let hs: Vec<String> = curves.iter().map(|c| half_edge(c, v)).collect();
        if hs.iter().any(|h| g.vertex_of(h) != Some(v.as_str())) {
            return Err(NcError::Malformed(format!("orientation at {v} names curves not incident to it")));
        }
        framing.cyclic_orders.insert(v.clone(), CyclicOrder::new(hs));
    }
    Ok(framing)
}

pub fn read_nc(path: &Path) -> Result<NcSurfaceDesc, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    NcSurfaceDesc::from_json(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))
}

/// Fans and descriptions used by tests and the corpus.
pub mod standard {
    use super::*;

    pub fn p3_fan() -> ToricFan3 {
        ToricFan3 {
            rays: vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
            max_cones: vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        }
    }

    pub fn a3_fan() -> ToricFan3 {
        ToricFan3 { rays: vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]], max_cones: vec![[0, 1, 2]] }
    }

    /// The fan of `(P¹)³`: one cone per octant.
    pub fn cube_fan() -> ToricFan3 {
        let rays = vec![[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];
        let mut max_cones = Vec::new();
        for x in 0..2 {
            for y in 2..4 {
                for z in 4..6 {
                    max_cones.push([x, y, z]);
                }
            }
        }
        ToricFan3 { rays, max_cones }
    }

    fn curve(name: &str, kind: CurveType, a: &str, b: &str) -> SingularCurve {
        SingularCurve { name: name.into(), kind, components: [a.into(), b.into()] }
    }

    fn point(name: &str, curves: [&str; 3]) -> TriplePoint {
        TriplePoint { name: name.into(), curves: curves.map(String::from) }
    }

    fn marks(list: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
        list.iter().map(|(c, ms)| (c.to_string(), ms.iter().map(|m| m.to_string()).collect())).collect()
    }

    /// Two components meeting along one projective line with two marked
    /// points and no triple points.
    pub fn two_sheets() -> NcSurfaceDesc {
        NcSurfaceDesc {
            components: ["X1".into(), "X2".into()].into(),
            curves: vec![curve("z", CurveType::P1, "X1", "X2")],
            triple_points: vec![],
            marks: marks(&[("z", &["p0", "pinf"])]),
        }
    }

    /// Five double curves through two triple points: one projective line
    /// joining them and four affine lines.
    pub fn five_curves() -> NcSurfaceDesc {
        NcSurfaceDesc {
            components: ["X1".into(), "X2".into(), "X3".into(), "W".into()].into(),
            curves: vec![
                curve("c", CurveType::P1, "X2", "W"),
                curve("a0", CurveType::A1, "X1", "X2"),
                curve("b0", CurveType::A1, "X1", "W"),
                curve("a1", CurveType::A1, "X3", "X2"),
                curve("b1", CurveType::A1, "X3", "W"),
            ],
            triple_points: vec![point("s0", ["c", "a0", "b0"]), point("s1", ["c", "a1", "b1"])],
            marks: marks(&[
                ("c", &["s0", "s1"]),
                ("a0", &["s0"]),
                ("b0", &["s0"]),
                ("a1", &["s1"]),
                ("b1", &["s1"]),
            ]),
        }
    }

    /// Two triple points joined by three projective lines.
    pub fn banana() -> NcSurfaceDesc {
        NcSurfaceDesc {
            components: ["A".into(), "B".into(), "C".into()].into(),
            curves: vec![
                curve("ab", CurveType::P1, "A", "B"),
                curve("bc", CurveType::P1, "B", "C"),
                curve("ca", CurveType::P1, "C", "A"),
            ],
            triple_points: vec![point("s1", ["ab", "bc", "ca"]), point("s2", ["ab", "bc", "ca"])],
            marks: marks(&[("ab", &["s1", "s2"]), ("bc", &["s1", "s2"]), ("ca", &["s1", "s2"])]),
        }
    }

    /// Five triangles `{i, i+1, i+2}` mod 5 glued into a Möbius band.
    pub fn mobius() -> NcSurfaceDesc {
        let comp = |i: usize| format!("M{}", i % 5);
        let name = |i: usize, j: usize| format!("m{}{}", i.min(j), i.max(j));
        let mut curves = Vec::new();
        let mut mk: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut triple_points = Vec::new();
        for i in 0..5 {
            let (a, b, c) = (i, (i + 1) % 5, (i + 2) % 5);
            let tp = format!("t{i}");
            for (x, y) in [(a, b), (b, c), (a, c)] {
                mk.entry(name(x, y)).or_default().push(tp.clone());
            }
            triple_points.push(TriplePoint { name: tp, curves: [name(a, b), name(b, c), name(a, c)] });
        }
        for (n, ms) in &mk {
            let ids: Vec<usize> = n[1..].chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
            let kind = if ms.len() == 2 { CurveType::P1 } else { CurveType::A1 };
            curves.push(SingularCurve { name: n.clone(), kind, components: [comp(ids[0]), comp(ids[1])] });
        }
        NcSurfaceDesc { components: (0..5).map(comp).collect(), curves, triple_points, marks: mk }
    }
}

#[cfg(test)]
mod tests;
