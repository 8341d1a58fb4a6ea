use std::collections::{BTreeMap, BTreeSet};

use super::curve::{CurveKind, CurveObject};
use super::GlueError;
use crate::graph::{DecoratedGraph, EdgeOrientation, Framing, GaugeChain};
use crate::localrestrict::{rule_parity, LocalGenerator};
use crate::scalars::NovikovElement;

/// Provenance of a summand: which curve component, which step (or
/// traversal) of the underlying base curve, and which copy of the local
/// system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandLabel {
    pub component: usize,
    pub step: usize,
    pub copy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSummand {
    pub generator: LocalGenerator,
    pub shift: u8,
    pub label: SummandLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSummand {
    pub parity: u8,
    pub label: SummandLabel,
}

/// Part of a matching at one half-edge: edge generators
/// `g_r = Σ_c scalar[r][c] · x^{x_power} · s_c` in terms of restricted vertex
/// summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingBlock {
    pub summands: Vec<usize>,
    pub generators: Vec<usize>,
    pub scalar: Vec<Vec<NovikovElement>>,
    pub x_power: i64,
}

/// A compatible family of stalk objects with matching isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GlobalSection {
    pub vertex_objects: BTreeMap<String, Vec<VertexSummand>>,
    pub edge_objects: BTreeMap<String, Vec<EdgeSummand>>,
    pub matchings: BTreeMap<String, Vec<MatchingBlock>>,
}

fn identity(r: usize) -> Vec<Vec<NovikovElement>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { NovikovElement::one() } else { NovikovElement::zero() })
                .collect()
        })
        .collect()
}

/// How a compiled curve is labelled and where its holonomy sits.
#[derive(Clone, Debug, Default)]
pub struct CompileOptions {
    pub component: usize,
    /// Base step index for each step (defaults to the step's own index).
    pub step_labels: Option<Vec<usize>>,
    /// Number of steps of the base curve; used to label an arc's entry
    /// traversal by the base traversal preceding its first step.
    pub base_len: Option<usize>,
    /// Base traversal labels at which the local system is inserted.  By
    /// default a closed curve uses its first traversal of the least edge.
    pub holonomy_at: Option<BTreeSet<usize>>,
}

impl GlobalSection {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_objects.values().all(Vec::is_empty) && self.edge_objects.values().all(Vec::is_empty)
    }

    /// Direct sum; summand and generator indices of `other` are shifted.
    pub fn direct_sum(&self, g: &DecoratedGraph, other: &GlobalSection) -> GlobalSection {
        let mut out = self.clone();
        let v_off: BTreeMap<String, usize> =
            self.vertex_objects.iter().map(|(v, s)| (v.clone(), s.len())).collect();
        let e_off: BTreeMap<String, usize> =
            self.edge_objects.iter().map(|(e, s)| (e.clone(), s.len())).collect();
        for (v, s) in &other.vertex_objects {
            out.vertex_objects.entry(v.clone()).or_default().extend(s.iter().cloned());
        }
        for (e, s) in &other.edge_objects {
            out.edge_objects.entry(e.clone()).or_default().extend(s.iter().cloned());
        }
        for (h, blocks) in &other.matchings {
            let dv = g.vertex_of(h).and_then(|v| v_off.get(v)).copied().unwrap_or(0);
            let de = g.edge_of(h).and_then(|e| e_off.get(e)).copied().unwrap_or(0);
            let moved = blocks.iter().map(|b| MatchingBlock {
                summands: b.summands.iter().map(|i| i + dv).collect(),
                generators: b.generators.iter().map(|i| i + de).collect(),
                scalar: b.scalar.clone(),
                x_power: b.x_power,
            });
            out.matchings.entry(h.clone()).or_default().extend(moved);
        }
        out
    }

    /// Every scalar appearing in the matchings.
    pub fn scalars(&self) -> impl Iterator<Item = &NovikovElement> {
        self.matchings
            .values()
            .flatten()
            .flat_map(|b| b.scalar.iter().flatten())
    }

    /// All parity shifts flipped.
    pub fn shifted(&self) -> GlobalSection {
        let mut out = self.clone();
        for s in out.vertex_objects.values_mut().flatten() {
            s.shift = (s.shift + 1) % 2;
        }
        for s in out.edge_objects.values_mut().flatten() {
            s.parity = (s.parity + 1) % 2;
        }
        out
    }

    /// Finds the block at half-edge `h` that contains vertex summand `idx`,
    /// with the position of the summand inside it.
    pub fn block_of(&self, h: &str, idx: usize) -> Option<(&MatchingBlock, usize)> {
        self.matchings.get(h)?.iter().find_map(|b| {
            b.summands.iter().position(|s| *s == idx).map(|p| (b, p))
        })
    }

    /// Checks that every matching pairs summands and generators of equal
    /// parity, covers all of them, and has an invertible scalar block.
    pub fn validate(&self, g: &DecoratedGraph) -> Result<(), GlueError> {
        let bad = |msg: String| Err(GlueError::InvalidSection(msg));
        for (v, summands) in &self.vertex_objects {
            for h in g.half_edges_at(v) {
                let e = g.edge_of(h).expect("validated graph");
                let gens = self.edge_objects.get(e).map(Vec::as_slice).unwrap_or(&[]);
                let blocks = self.matchings.get(h).map(Vec::as_slice).unwrap_or(&[]);
                let mut seen_s = BTreeSet::new();
                let mut seen_g = BTreeSet::new();
                for b in blocks {
                    let r = b.summands.len();
                    if b.generators.len() != r || b.scalar.len() != r || b.scalar.iter().any(|row| row.len() != r) {
                        return bad(format!("{h}: block shape mismatch"));
                    }
                    if !super::curve::LocalSystem(b.scalar.clone()).is_invertible() {
                        return bad(format!("{h}: matching block is not invertible"));
                    }
                    for (&si, &gi) in b.summands.iter().zip(&b.generators) {
                        let Some(s) = summands.get(si) else {
                            return bad(format!("{h}: no summand {si} at {v}"));
                        };
                        let Some(gen) = gens.get(gi) else {
                            return bad(format!("{h}: no generator {gi} on {e}"));
                        };
                        let p = rule_parity(g, v, h, &s.generator)
                            .map_err(|x| GlueError::InvalidSection(x.to_string()))?;
                        match p {
                            Some(p) if (p + s.shift) % 2 == gen.parity => {}
                            _ => return bad(format!("{h}: summand {si} does not restrict to generator {gi}")),
                        }
                        seen_s.insert(si);
                        seen_g.insert(gi);
                    }
                }
                for (si, s) in summands.iter().enumerate() {
                    let restricts = rule_parity(g, v, h, &s.generator)
                        .map_err(|x| GlueError::InvalidSection(x.to_string()))?
                        .is_some();
                    if restricts && !seen_s.contains(&si) {
                        return bad(format!("{h}: summand {si} at {v} is unmatched"));
                    }
                }
                if seen_g.len() != gens.len() {
                    return bad(format!("{h}: generators on {e} are unmatched"));
                }
            }
        }
        Ok(())
    }
}

fn parity_or_err(g: &DecoratedGraph, v: &str, h: &str, gen: &LocalGenerator) -> Result<u8, GlueError> {
    rule_parity(g, v, h, gen)
        .map_err(|e| GlueError::InvalidCurve(e.to_string()))?
        .ok_or_else(|| GlueError::InvalidCurve(format!("{gen:?} does not restrict along {h}")))
}

fn step_generators(c: &CurveObject) -> Vec<LocalGenerator> {
    c.steps
        .iter()
        .map(|s| match (&s.in_he, &s.out_he) {
            (Some(a), Some(b)) => LocalGenerator::pair(a, b),
            _ => LocalGenerator::Free,
        })
        .collect()
}

fn propagate_shifts(g: &DecoratedGraph, c: &CurveObject, gens: &[LocalGenerator]) -> Result<Vec<u8>, GlueError> {
    let n = c.steps.len();
    let closed = c.kind == CurveKind::Closed;
    let mut shifts = vec![c.shift % 2; n];
    for k in 0..n.saturating_sub(1) {
        let s = &c.steps[k];
        let t = &c.steps[k + 1];
        let out_p = (parity_or_err(g, &s.vertex, s.out_he.as_ref().unwrap(), &gens[k])? + shifts[k]) % 2;
        let in_p = parity_or_err(g, &t.vertex, t.in_he.as_ref().unwrap(), &gens[k + 1])?;
        shifts[k + 1] = (out_p + 2 - in_p) % 2;
    }
    if closed && n > 0 {
        let s = &c.steps[n - 1];
        let t = &c.steps[0];
        let out_p = (parity_or_err(g, &s.vertex, s.out_he.as_ref().unwrap(), &gens[n - 1])? + shifts[n - 1]) % 2;
        let in_p = parity_or_err(g, &t.vertex, t.in_he.as_ref().unwrap(), &gens[0])?;
        if (in_p + shifts[0]) % 2 != out_p {
            return Err(GlueError::ParityObstruction);
        }
    }
    Ok(shifts)
}

/// Parity shift of the vertex summand at each step of a curve.
pub fn step_shifts(g: &DecoratedGraph, c: &CurveObject) -> Result<Vec<u8>, GlueError> {
    c.validate(g)?;
    propagate_shifts(g, c, &step_generators(c))
}

/// Step whose departing traversal carries the local system by default: the
/// first traversal of the least edge.
pub fn holonomy_step(g: &DecoratedGraph, c: &CurveObject) -> Option<usize> {
    let edge_of = |k: usize| g.edge_of(c.steps[k].out_he.as_deref()?).map(str::to_string);
    (0..c.steps.len()).min_by_key(|k| (edge_of(*k), *k))
}

/// Compiles a curve into a global section with default labels.
pub fn compile(g: &DecoratedGraph, c: &CurveObject) -> Result<GlobalSection, GlueError> {
    compile_with(g, c, &CompileOptions::default())
}

/// Compiles a curve: each step contributes a generator at its vertex with
/// the shift that makes both sides of every traversed edge agree, each
/// traversal contributes an edge generator, and the local system is inserted
/// into the matching at the arriving end of the designated traversals.
pub fn compile_with(g: &DecoratedGraph, c: &CurveObject, opts: &CompileOptions) -> Result<GlobalSection, GlueError> {
    c.validate(g)?;
    let mut out = GlobalSection::zero();
    let n = c.steps.len();
    if n == 0 {
        return Ok(out);
    }
    let r = c.local_system.rank();
    let step_label = |k: usize| opts.step_labels.as_ref().map_or(k, |l| l[k]);
    let closed = c.kind == CurveKind::Closed;

    let gens = step_generators(c);
    let shifts = propagate_shifts(g, c, &gens)?;

    // Vertex summands.
    let mut summand_index: Vec<usize> = Vec::with_capacity(n);
    for (k, s) in c.steps.iter().enumerate() {
        let list = out.vertex_objects.entry(s.vertex.clone()).or_default();
        summand_index.push(list.len());
        for copy in 0..r {
            list.push(VertexSummand {
                generator: gens[k].clone(),
                shift: shifts[k],
                label: SummandLabel {
                    component: opts.component,
                    step: step_label(k),
                    copy,
                },
            });
        }
    }

    // Traversals: (label, departing step, arriving step) with None at the
    // open ends of arcs.
    let mut traversals: Vec<(usize, Option<usize>, Option<usize>)> = Vec::new();
    if closed {
        for k in 0..n {
            traversals.push((step_label(k), Some(k), Some((k + 1) % n)));
        }
    } else {
        if c.steps[0].in_he.is_some() {
            let label = match opts.base_len {
                Some(m) => (step_label(0) + m - 1) % m,
                None => usize::MAX,
            };
            traversals.push((label, None, Some(0)));
        }
        for k in 0..n - 1 {
            traversals.push((step_label(k), Some(k), Some(k + 1)));
        }
        if c.steps[n - 1].out_he.is_some() {
            traversals.push((step_label(n - 1), Some(n - 1), None));
        }
    }

    let holonomy: BTreeSet<usize> = match &opts.holonomy_at {
        Some(h) => h.clone(),
        None if closed => holonomy_step(g, c).map(step_label).into_iter().collect(),
        None => BTreeSet::new(),
    };

    for (label, dep, arr) in traversals {
        let (h_any, parity) = match (dep, arr) {
            (Some(k), _) => {
                let h = c.steps[k].out_he.clone().unwrap();
                let p = (parity_or_err(g, &c.steps[k].vertex, &h, &gens[k])? + shifts[k]) % 2;
                (h, p)
            }
            (None, Some(k)) => {
                let h = c.steps[k].in_he.clone().unwrap();
                let p = (parity_or_err(g, &c.steps[k].vertex, &h, &gens[k])? + shifts[k]) % 2;
                (h, p)
            }
            (None, None) => unreachable!(),
        };
        let edge = g.edge_of(&h_any).unwrap().to_string();
        let list = out.edge_objects.entry(edge.clone()).or_default();
        let first_gen = list.len();
        for copy in 0..r {
            list.push(EdgeSummand {
                parity,
                label: SummandLabel {
                    component: opts.component,
                    step: label,
                    copy,
                },
            });
        }
        let gen_ids: Vec<usize> = (first_gen..first_gen + r).collect();
        if let Some(k) = dep {
            let h = c.steps[k].out_he.clone().unwrap();
            out.matchings.entry(h).or_default().push(MatchingBlock {
                summands: (summand_index[k]..summand_index[k] + r).collect(),
                generators: gen_ids.clone(),
                scalar: identity(r),
                x_power: 0,
            });
        }
        if let Some(k) = arr {
            let h = c.steps[k].in_he.clone().unwrap();
            let scalar = if holonomy.contains(&label) {
                c.local_system.0.clone()
            } else {
                identity(r)
            };
            out.matchings.entry(h).or_default().push(MatchingBlock {
                summands: (summand_index[k]..summand_index[k] + r).collect(),
                generators: gen_ids,
                scalar,
                x_power: 0,
            });
        }
    }
    Ok(out)
}

/// Rescales the matching at every half-edge `x` by `λ_x`.
pub fn apply_gauge_to_section(s: &GlobalSection, chain: &GaugeChain) -> GlobalSection {
    let mut out = s.clone();
    for (h, blocks) in out.matchings.iter_mut() {
        let l = chain.value(h);
        if l.is_one() {
            continue;
        }
        for b in blocks {
            for row in b.scalar.iter_mut() {
                for x in row.iter_mut() {
                    *x = &*x * &l;
                }
            }
        }
    }
    out
}

/// Stalk-wise data carrying sections of `(G, f)` to sections of `(G, f′)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReframePrescription {
    /// Vertices whose cyclic order is reversed: their stalks are shifted.
    pub vertex_shifts: BTreeSet<String>,
    /// Edges whose orientation is reversed: their stalks are shifted.
    pub edge_shifts: BTreeSet<String>,
}

impl ReframePrescription {
    pub fn is_identity(&self) -> bool {
        self.vertex_shifts.is_empty() && self.edge_shifts.is_empty()
    }
}

/// Compares the framing of `g` with `f_new`; only reversals are allowed.
pub fn reframe(g: &DecoratedGraph, f_new: &Framing) -> Result<ReframePrescription, GlueError> {
    let mut p = ReframePrescription::default();
    let old = g.framing();
    let keys: BTreeSet<&String> = old.cyclic_orders.keys().chain(f_new.cyclic_orders.keys()).collect();
    for v in keys {
        match (old.cyclic_orders.get(v), f_new.cyclic_orders.get(v)) {
            (Some(a), Some(b)) if a == b => {}
            (Some(a), Some(b)) if a.reversed() == *b => {
                p.vertex_shifts.insert(v.clone());
            }
            _ => return Err(GlueError::NotAFraming(format!("cyclic order at {v} is not a reversal"))),
        }
    }
    let keys: BTreeSet<&String> = old.orientations.keys().chain(f_new.orientations.keys()).collect();
    for e in keys {
        let edge = g.edge(e).ok_or_else(|| GlueError::NotAFraming(format!("unknown edge {e}")))?;
        match (old.orientations.get(e), f_new.orientations.get(e)) {
            (Some(a), Some(b)) if a == b => {}
            (Some(_), Some(b)) => {
                let ok = match b {
                    EdgeOrientation::Head(h) => edge.compact && edge.half_edges.contains(h),
                    _ => !edge.compact,
                };
                if !ok {
                    return Err(GlueError::NotAFraming(format!("orientation of {e} is invalid")));
                }
                p.edge_shifts.insert(e.clone());
            }
            _ => return Err(GlueError::NotAFraming(format!("orientation of {e} missing"))),
        }
    }
    Ok(p)
}

/// Carries a section of `(G, f)` to `(G, f′)`: shifts on the prescribed
/// stalks, and at each reversed vertex the unit `−α·x` on matchings of the
/// generators whose restricted class normalization flips.
pub fn apply_reframe(
    g: &DecoratedGraph,
    s: &GlobalSection,
    p: &ReframePrescription,
) -> Result<GlobalSection, GlueError> {
    let mut out = s.clone();
    for v in &p.vertex_shifts {
        let order = g
            .cyclic_order(v)
            .ok_or_else(|| GlueError::NotAFraming(format!("{v} has no cyclic order")))?
            .clone();
        let alpha = g.vertex(v).unwrap().weight.clone();
        let factor = (-&alpha).inverse().map_err(|e| GlueError::NotAFraming(e.to_string()))?;
        let summands = out.vertex_objects.get_mut(v);
        let Some(summands) = summands else { continue };
        for x in summands.iter_mut() {
            x.shift = (x.shift + 1) % 2;
        }
        let summands = summands.clone();
        for h in order.as_slice() {
            let next = order.next(h).unwrap();
            let Some(blocks) = out.matchings.get_mut(h) else { continue };
            for b in blocks.iter_mut() {
                let gen = &summands[b.summands[0]].generator;
                // generators {h, a} with a following h keep their normalization
                if gen.other(h).is_some_and(|a| a != next) {
                    for row in b.scalar.iter_mut() {
                        for x in row.iter_mut() {
                            *x = &*x * &factor;
                        }
                    }
                    b.x_power -= 1;
                }
            }
        }
    }
    for e in &p.edge_shifts {
        if let Some(gens) = out.edge_objects.get_mut(e) {
            for x in gens.iter_mut() {
                x.parity = (x.parity + 1) % 2;
            }
        }
    }
    Ok(out)
}
