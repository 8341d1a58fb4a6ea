//! Abelian covers of closed graphs built from voltages in `Z^g`: finite
//! windows, lifts of walk curves, the deck action and equivariant Hom.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::gluecat::{
    compile_with, embedding_for, holonomy_step, step_shifts, CompileOptions, CurveKind, CurveObject, GlobalHomComplex,
    GlobalSection, GlueError, Step,
};
use crate::graph::{CyclicOrder, DecoratedGraph, Edge, EdgeOrientation, GraphError};
use crate::linalg::SparseVec;
use crate::mfcore::HomReport;
use crate::surface::{cycle_edges, signed_traversals, spanning_tree, SurfaceError};

/// A point of the deck lattice `Z^g`.
pub type Site = Vec<i64>;

#[derive(Debug, thiserror::Error)]
pub enum CoverError {
    #[error("edge {0} is noncompact; covers are built for closed graphs only")]
    NoncompactEdge(String),
    #[error("expected a closed curve, got an arc")]
    ArcInput,
    #[error("cannot restrict from radius {from} to radius {to}")]
    RadiusOrder { from: u32, to: u32 },
    #[error("equivariant Hom did not stabilize up to radius {0}")]
    NotStabilized(u32),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Voltages dual to a spanning tree: the `i`-th compact edge outside the
/// tree carries `e_i` from tail to head, tree edges carry `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    pub tree: BTreeSet<String>,
    pub cycle_edges: Vec<String>,
}

impl VoltageAssignment {
    pub fn new(g: &DecoratedGraph, tree: BTreeSet<String>) -> Result<Self, CoverError> {
        if let Some((e, _)) = g.edges().iter().find(|(_, e)| !e.compact) {
            return Err(CoverError::NoncompactEdge(e.clone()));
        }
        let cycle_edges = cycle_edges(g, &tree)?;
        Ok(VoltageAssignment { tree, cycle_edges })
    }

    /// Voltages for the breadth-first spanning tree.
    pub fn from_spanning_tree(g: &DecoratedGraph) -> Result<Self, CoverError> {
        Self::new(g, spanning_tree(g))
    }

    pub fn rank(&self) -> usize {
        self.cycle_edges.len()
    }

    pub fn voltage(&self, e: &str) -> Site {
        let mut z = vec![0; self.rank()];
        if let Some(i) = self.cycle_edges.iter().position(|x| x == e) {
            z[i] = 1;
        }
        z
    }
}

fn add(a: &[i64], b: &[i64]) -> Site {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Site {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[i64], m: i64) -> Site {
    a.iter().map(|x| x * m).collect()
}

fn norm(a: &[i64]) -> i64 {
    a.iter().map(|x| x.abs()).max().unwrap_or(0)
}

fn in_box(z: &[i64], radius: u32) -> bool {
    norm(z) <= radius as i64
}

/// All sites with `|z|_∞ ≤ radius`, in lexicographic order.
pub fn box_sites(rank: usize, radius: u32) -> Vec<Site> {
    let r = radius as i64;
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|z: Site| (-r..=r).map(move |x| [z.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// Name of the copy of a base vertex, edge or half-edge at a site.
pub fn lift_name(base: &str, z: &[i64]) -> String {
    let coords: Vec<String> = z.iter().map(i64::to_string).collect();
    format!("{base}@{}", coords.join(","))
}

/// Representative of `a` modulo `Z·class`, unique per coset.
fn canonical(a: &[i64], class: &[i64]) -> Site {
    let Some(j) = class.iter().position(|x| *x != 0) else { return a.to_vec() };
    let m = if class[j] > 0 {
        a[j].div_euclid(class[j])
    } else {
        -a[j].div_euclid(-class[j])
    };
    sub(a, &scale(class, m))
}

/// The part of the cover over the cube `[−N, N]^g`.  Edges leaving the cube
/// become noncompact stubs, so the window is itself a decorated graph.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    pub radius: u32,
    pub rank: usize,
    pub graph: DecoratedGraph,
    /// Window vertex to (base vertex, site).
    pub vertex_site: BTreeMap<String, (String, Site)>,
    /// Window edge to (base edge, site of its tail).
    pub edge_site: BTreeMap<String, (String, Site)>,
}

fn tail_and_head(e: &Edge) -> (&str, &str) {
    let head = match &e.orientation {
        EdgeOrientation::Head(h) => h.as_str(),
        _ => e.half_edges[e.half_edges.len() - 1].as_str(),
    };
    let tail = e.half_edges.iter().find(|h| *h != head).map_or(head, String::as_str);
    (tail, head)
}

pub fn build_cover_window(g: &DecoratedGraph, volt: &VoltageAssignment, radius: u32) -> Result<CoverWindow, CoverError> {
    if let Some((e, _)) = g.edges().iter().find(|(_, e)| !e.compact) {
        return Err(CoverError::NoncompactEdge(e.clone()));
    }
    let rank = volt.rank();
    let sites = box_sites(rank, radius);
    let mut vertices = BTreeMap::new();
    let mut half_edge_vertex = BTreeMap::new();
    let mut cyclic_orders = BTreeMap::new();
    let mut vertex_site = BTreeMap::new();
    for z in &sites {
        for (v, data) in g.vertices() {
            let name = lift_name(v, z);
            vertices.insert(name.clone(), data.clone());
            for h in g.half_edges_at(v) {
                half_edge_vertex.insert(lift_name(h, z), name.clone());
            }
            if let Some(order) = g.cyclic_order(v) {
                cyclic_orders.insert(name.clone(), CyclicOrder::new(order.as_slice().iter().map(|h| lift_name(h, z))));
            }
            vertex_site.insert(name, (v.clone(), z.clone()));
        }
    }
    let mut edges = BTreeMap::new();
    let mut edge_site = BTreeMap::new();
    for (t, edge) in g.edges() {
        let v = volt.voltage(t);
        let (tail, head) = tail_and_head(edge);
        let tails: BTreeSet<Site> = sites.iter().flat_map(|z| [z.clone(), sub(z, &v)]).collect();
        for z in tails {
            let w = add(&z, &v);
            let (tail_in, head_in) = (in_box(&z, radius), in_box(&w, radius));
            let site_of = |h: &str| if h == tail { &z } else { &w };
            let lifted = match (tail_in, head_in) {
                (true, true) => Edge {
                    half_edges: edge.half_edges.iter().map(|h| lift_name(h, site_of(h))).collect(),
                    compact: true,
                    weight: edge.weight.clone(),
                    orientation: EdgeOrientation::Head(lift_name(head, &w)),
                },
                (true, false) => Edge {
                    half_edges: vec![lift_name(tail, &z)],
                    compact: false,
                    weight: edge.weight.clone(),
                    orientation: EdgeOrientation::Out,
                },
                (false, true) => Edge {
                    half_edges: vec![lift_name(head, &w)],
                    compact: false,
                    weight: edge.weight.clone(),
                    orientation: EdgeOrientation::In,
                },
                (false, false) => continue,
            };
            let name = lift_name(t, &z);
            edges.insert(name.clone(), lifted);
            edge_site.insert(name, (t.clone(), z));
        }
    }
    let graph = DecoratedGraph::from_parts(vertices, half_edge_vertex, edges, cyclic_orders).checked()?;
    Ok(CoverWindow { radius, rank, graph, vertex_site, edge_site })
}

/// Net voltage along a closed walk.
pub fn curve_class(g: &DecoratedGraph, volt: &VoltageAssignment, c: &CurveObject) -> Result<Site, CoverError> {
    let mut z = vec![0; volt.rank()];
    for (e, sign) in signed_traversals(g, c)? {
        z = add(&z, &scale(&volt.voltage(&e), sign));
    }
    Ok(z)
}

/// Sites visited by the lift starting at the origin: `P_0 = 0` and `P_{k+1}`
/// after the `k`-th traversal.
fn partial_sums(g: &DecoratedGraph, volt: &VoltageAssignment, c: &CurveObject) -> Result<Vec<Site>, CoverError> {
    let mut sums = vec![vec![0; volt.rank()]];
    for (e, sign) in signed_traversals(g, c)? {
        let next = add(sums.last().unwrap(), &scale(&volt.voltage(&e), sign));
        sums.push(next);
    }
    Ok(sums)
}

/// One component of the preimage of a curve inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub curve: CurveObject,
    /// Site of each step.
    pub sites: Vec<Site>,
    /// Base step index of each step.
    pub base_steps: Vec<usize>,
    /// Site of base step 0 on this component, modulo the curve class.
    pub anchor: Site,
}

fn lifted_curve(base: &CurveObject, kind: CurveKind, sites: &[Site], steps: &[usize], shifts: &[u8]) -> CurveObject {
    let walk = sites
        .iter()
        .zip(steps)
        .map(|(z, k)| {
            let s = &base.steps[*k];
            Step::through(
                &lift_name(&s.vertex, z),
                &lift_name(s.in_he.as_deref().unwrap_or_default(), z),
                &lift_name(s.out_he.as_deref().unwrap_or_default(), z),
            )
        })
        .collect();
    CurveObject {
        kind,
        steps: walk,
        local_system: base.local_system.clone(),
        shift: steps.first().map_or(base.shift, |k| shifts[*k]),
    }
}

/// Splits a walk into maximal runs of indices inside the window.
fn runs(inside: &[bool]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ok) in inside.iter().enumerate() {
        match (ok, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(s..i);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(s..inside.len());
    }
    out
}

/// Lifts of a closed curve to the window of radius `radius`.  A curve of
/// class 0 lifts to one closed curve per translate whose footprint fits;
/// any other class lifts to arcs, truncated at the window boundary.
pub fn lift_curve(g: &DecoratedGraph, volt: &VoltageAssignment, c: &CurveObject, radius: u32) -> Result<Vec<Lift>, CoverError> {
    if c.kind == CurveKind::Arc {
        return Err(CoverError::ArcInput);
    }
    if c.is_empty() {
        return Ok(vec![]);
    }
    let shifts = step_shifts(g, c)?;
    let sums = partial_sums(g, volt, c)?;
    let n = c.steps.len();
    let class = sums[n].clone();
    let reach = sums.iter().map(|z| norm(z)).max().unwrap_or(0);
    let search = box_sites(volt.rank(), radius + reach as u32);
    let mut out = Vec::new();
    if norm(&class) == 0 {
        for z0 in search {
            let sites: Vec<Site> = sums[..n].iter().map(|p| add(&z0, p)).collect();
            if sites.iter().all(|z| in_box(z, radius)) {
                let steps: Vec<usize> = (0..n).collect();
                let curve = lifted_curve(c, CurveKind::Closed, &sites, &steps, &shifts);
                out.push(Lift { curve, sites, base_steps: steps, anchor: z0 });
            }
        }
        return Ok(out);
    }
    let anchors: BTreeSet<Site> = search.iter().map(|z| canonical(z, &class)).collect();
    let periods = 2 * (radius as i64 + reach) + 2;
    for a in anchors {
        let mut sites = Vec::new();
        let mut steps = Vec::new();
        for m in -periods..=periods {
            let base = add(&a, &scale(&class, m));
            for (k, p) in sums[..n].iter().enumerate() {
                sites.push(add(&base, p));
                steps.push(k);
            }
        }
        let inside: Vec<bool> = sites.iter().map(|z| in_box(z, radius)).collect();
        for r in runs(&inside) {
            let (s, k) = (sites[r.clone()].to_vec(), steps[r].to_vec());
            let curve = lifted_curve(c, CurveKind::Arc, &s, &k, &shifts);
            out.push(Lift { curve, sites: s, base_steps: k, anchor: a.clone() });
        }
    }
    Ok(out)
}

/// Truncates lifts on a window of radius `from` to the smaller window of
/// radius `to`.  Components inside the smaller window are kept as they are.
pub fn window_restrict(
    g: &DecoratedGraph,
    base: &CurveObject,
    lifts: &[Lift],
    from: u32,
    to: u32,
) -> Result<Vec<Lift>, CoverError> {
    if to >= from {
        return Err(CoverError::RadiusOrder { from, to });
    }
    let shifts = step_shifts(g, base)?;
    let mut out = Vec::new();
    for l in lifts {
        let inside: Vec<bool> = l.sites.iter().map(|z| in_box(z, to)).collect();
        if inside.iter().all(|x| *x) {
            out.push(l.clone());
            continue;
        }
        let (mut sites, mut steps, mut inside) = (l.sites.clone(), l.base_steps.clone(), inside);
        if l.curve.kind == CurveKind::Closed {
            // start just after a step outside the window so runs do not wrap
            if let Some(p) = inside.iter().position(|x| !x) {
                sites.rotate_left(p);
                steps.rotate_left(p);
                inside.rotate_left(p);
            }
        }
        for r in runs(&inside) {
            let (s, k) = (sites[r.clone()].to_vec(), steps[r].to_vec());
            let curve = lifted_curve(base, CurveKind::Arc, &s, &k, &shifts);
            out.push(Lift { curve, sites: s, base_steps: k, anchor: l.anchor.clone() });
        }
    }
    Ok(out)
}

/// All lifts of a curve in a window together with the deck action.
#[derive(Clone, Debug)]
pub struct PullbackFamily {
    pub class: Site,
    pub lifts: Vec<Lift>,
}

impl PullbackFamily {
    /// Component obtained by translating component `i` by `delta`, if it
    /// lies in the window.
    pub fn translate(&self, i: usize, delta: &[i64]) -> Option<usize> {
        let l = &self.lifts[i];
        let moved: Vec<Site> = l.sites.iter().map(|z| add(z, delta)).collect();
        self.lifts
            .iter()
            .position(|m| m.base_steps == l.base_steps && m.sites == moved && m.curve.kind == l.curve.kind)
    }

    /// Whether translating by `delta` maps the full (untruncated) component
    /// of lift `i` to itself.
    pub fn fixes(&self, i: usize, delta: &[i64]) -> bool {
        let a = &self.lifts[i].anchor;
        canonical(&add(a, delta), &self.class) == *a
    }
}

pub fn pullback_curve(g: &DecoratedGraph, volt: &VoltageAssignment, c: &CurveObject, radius: u32) -> Result<PullbackFamily, CoverError> {
    Ok(PullbackFamily { class: curve_class(g, volt, c)?, lifts: lift_curve(g, volt, c, radius)? })
}

/// Compiles every lift with base-step labels, so that summands of
/// translated components carry equal labels.
pub fn family_section(
    window: &CoverWindow,
    g: &DecoratedGraph,
    base: &CurveObject,
    lifts: &[Lift],
) -> Result<GlobalSection, CoverError> {
    let holonomy: BTreeSet<usize> = holonomy_step(g, base).into_iter().collect();
    let mut out = GlobalSection::zero();
    for (i, l) in lifts.iter().enumerate() {
        let opts = CompileOptions {
            component: i,
            step_labels: Some(l.base_steps.clone()),
            base_len: Some(base.steps.len()),
            holonomy_at: Some(holonomy.clone()),
        };
        let s = compile_with(&window.graph, &l.curve, &opts)?;
        out = out.direct_sum(&window.graph, &s);
    }
    Ok(out)
}

type Label = (usize, usize);

/// Hom between the pullback families on the window of radius `radius`,
/// restricted to deck-invariant cochains.  Each orbit of basis elements is
/// represented by its member at the central site.
pub fn equivariant_hom(
    g: &DecoratedGraph,
    volt: &VoltageAssignment,
    c1: &CurveObject,
    c2: &CurveObject,
    radius: u32,
    window: u32,
) -> Result<HomReport, CoverError> {
    if window < 2 {
        return Err(GlueError::WindowTooSmall(window).into());
    }
    let w = build_cover_window(g, volt, radius)?;
    let l = family_section(&w, g, c1, &lift_curve(g, volt, c1, radius)?)?;
    let m = family_section(&w, g, c2, &lift_curve(g, volt, c2, radius)?)?;
    let cx = GlobalHomComplex::assemble(&w.graph, &l, &m, window, embedding_for(&w.graph, &l, &m))?;

    let center = vec![0; w.rank];
    let label = |s: &GlobalSection, e: &str, i: usize| -> Label {
        let x = &s.edge_objects[e][i].label;
        (x.step, x.copy)
    };
    let orbit = |j: usize| {
        let k = &cx.edge_keys[j];
        let base = &w.edge_site[&k.edge].0;
        (base.clone(), label(&l, &k.edge, k.source), label(&m, &k.edge, k.target), k.exponent)
    };
    let mut edge_index: HashMap<(String, Label, Label, i64), usize> = HashMap::new();
    let (mut edge_keys, mut edge_parity) = (Vec::new(), Vec::new());
    for (j, k) in cx.edge_keys.iter().enumerate() {
        if w.edge_site[&k.edge].1 == center {
            edge_index.insert(orbit(j), edge_keys.len());
            edge_keys.push(k.clone());
            edge_parity.push(cx.edge_parity[j]);
        }
    }
    let (mut vertex_keys, mut vertex_parity, mut delta) = (Vec::new(), Vec::new(), Vec::new());
    for (i, k) in cx.vertex_keys.iter().enumerate() {
        if w.vertex_site[&k.vertex].1 != center {
            continue;
        }
        let mut col = SparseVec::new();
        for (j, x) in &cx.delta[i] {
            if let Some(t) = edge_index.get(&orbit(*j)) {
                let sum = col.get(t).map_or(x.clone(), |y| y.add(x));
                if sum.is_zero() {
                    col.remove(t);
                } else {
                    col.insert(*t, sum);
                }
            }
        }
        vertex_keys.push(k.clone());
        vertex_parity.push(cx.vertex_parity[i]);
        delta.push(col);
    }
    let reduced = GlobalHomComplex {
        window,
        vertex_keys,
        vertex_parity,
        edge_keys,
        edge_parity,
        delta,
        max_twist: cx.max_twist,
    };
    Ok(reduced.report())
}

/// Equivariant Hom at the least radius `N₀ ≤ max_radius` where radii `N₀`
/// and `N₀ + 1` agree on the stable dimensions.
pub fn stabilized_equivariant_hom(
    g: &DecoratedGraph,
    volt: &VoltageAssignment,
    c1: &CurveObject,
    c2: &CurveObject,
    window: u32,
    max_radius: u32,
) -> Result<(HomReport, u32), CoverError> {
    let mut prev = equivariant_hom(g, volt, c1, c2, 0, window)?;
    for n in 1..=max_radius + 1 {
        let cur = equivariant_hom(g, volt, c1, c2, n, window)?;
        if cur.stable_dims() == prev.stable_dims() {
            return Ok((prev, n - 1));
        }
        prev = cur;
    }
    Err(CoverError::NotStabilized(max_radius))
}

#[cfg(test)]
mod tests;
