use std::collections::HashMap;

use super::section::GlobalSection;
use super::GlueError;
use crate::graph::DecoratedGraph;
use crate::linalg::{invert_dense, pow_i, GradedComplex, SparseVec};
use crate::localrestrict::{local_classes, restrict_class, LocalClass};
use crate::mfcore::HomReport;
use crate::scalars::{Embedding, RatFunc};

/// Basis element of `⊕_v Hom_v`: a class between two summands at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexKey {
    pub vertex: String,
    pub source: usize,
    pub target: usize,
    pub class: LocalClass,
}

/// Basis element of `⊕_t Hom_t`: `x^exponent` between two edge generators,
/// in the frame of the edge's first half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeKey {
    pub edge: String,
    pub source: usize,
    pub target: usize,
    pub exponent: i64,
}

/// The comparison map `δ: ⊕_v Hom_v → ⊕_t Hom_t` over compact edges, on
/// cohomology of the stalks, truncated to degrees at most `window`.
pub struct GlobalHomComplex {
    pub window: u32,
    pub vertex_keys: Vec<VertexKey>,
    pub vertex_parity: Vec<u8>,
    pub edge_keys: Vec<EdgeKey>,
    pub edge_parity: Vec<u8>,
    /// Column of `δ` for each vertex key, over edge key indices.
    pub delta: Vec<SparseVec>,
    pub max_twist: i64,
}

/// Formal embedding clearing every scalar of the graph and both sections.
pub fn embedding_for(g: &DecoratedGraph, l: &GlobalSection, m: &GlobalSection) -> Embedding {
    let weights = g
        .vertices()
        .values()
        .map(|v| &v.weight)
        .chain(g.edges().values().map(|e| &e.weight));
    Embedding::formal_for(weights.chain(l.scalars()).chain(m.scalars()))
}

fn max_twist(s: &GlobalSection) -> i64 {
    s.matchings
        .values()
        .flatten()
        .map(|b| b.x_power.abs())
        .max()
        .unwrap_or(0)
}

impl GlobalHomComplex {
    pub fn assemble(
        g: &DecoratedGraph,
        l: &GlobalSection,
        m: &GlobalSection,
        window: u32,
        emb: Embedding,
    ) -> Result<Self, GlueError> {
        let w = window as i64;
        let mut edge_keys = Vec::new();
        let mut edge_parity = Vec::new();
        let mut edge_index: HashMap<EdgeKey, usize> = HashMap::new();
        for (e, lg) in &l.edge_objects {
            let Some(mg) = m.edge_objects.get(e) else { continue };
            if !g.edge(e).is_some_and(|x| x.compact) {
                continue;
            }
            for (si, s) in lg.iter().enumerate() {
                for (ti, t) in mg.iter().enumerate() {
                    for exponent in -w..=w {
                        let k = EdgeKey { edge: e.clone(), source: si, target: ti, exponent };
                        edge_index.insert(k.clone(), edge_keys.len());
                        edge_keys.push(k);
                        edge_parity.push((s.parity + t.parity) % 2);
                    }
                }
            }
        }

        let mut inverses: HashMap<(String, usize), Vec<Vec<RatFunc>>> = HashMap::new();
        for (h, blocks) in &l.matchings {
            for (bi, b) in blocks.iter().enumerate() {
                let dense: Vec<Vec<RatFunc>> =
                    b.scalar.iter().map(|row| row.iter().map(|x| emb.embed(x)).collect()).collect();
                let inv = invert_dense(&dense)
                    .ok_or_else(|| GlueError::InvalidSection(format!("{h}: singular matching")))?;
                inverses.insert((h.clone(), bi), inv);
            }
        }

        let mut vertex_keys = Vec::new();
        let mut vertex_parity = Vec::new();
        let mut delta = Vec::new();
        for (v, ls) in &l.vertex_objects {
            let Some(ms) = m.vertex_objects.get(v) else { continue };
            let half_edges: Vec<(&str, &str, bool, RatFunc)> = g
                .half_edges_at(v)
                .into_iter()
                .filter_map(|h| {
                    let e = g.edge_of(h)?;
                    let edge = g.edge(e)?;
                    edge.compact
                        .then(|| (h, e, edge.half_edges[0] == h, emb.embed(&edge.weight)))
                })
                .collect();
            for (si, s) in ls.iter().enumerate() {
                for (ti, t) in ms.iter().enumerate() {
                    let classes = local_classes(&s.generator, &t.generator, window)
                        .map_err(|e| GlueError::InvalidSection(e.to_string()))?;
                    for class in classes {
                        let mut col = SparseVec::new();
                        for (h, e, canonical, beta) in &half_edges {
                            let Some(rho) = restrict_class(g, v, h, &s.generator, &t.generator, &class)
                                .map_err(|e| GlueError::InvalidSection(e.to_string()))?
                            else {
                                continue;
                            };
                            if rho.is_zero() {
                                continue;
                            }
                            let missing = || GlueError::InvalidSection(format!("{h}: summand has no matching"));
                            let (bl, a) = l.block_of(h, si).ok_or_else(missing)?;
                            let (bm, b) = m.block_of(h, ti).ok_or_else(missing)?;
                            let bl_index = l.matchings[*h].iter().position(|x| std::ptr::eq(x, bl)).unwrap();
                            let inv = &inverses[&(h.to_string(), bl_index)];
                            for (r1, tau) in bl.generators.iter().enumerate() {
                                let cl = &inv[a][r1];
                                if cl.is_zero() {
                                    continue;
                                }
                                for (r2, tau2) in bm.generators.iter().enumerate() {
                                    let cm = emb.embed(&bm.scalar[r2][b]);
                                    if cm.is_zero() {
                                        continue;
                                    }
                                    let scale = cm.mul(cl);
                                    for (n, c) in rho.terms() {
                                        let mut exp = n + bm.x_power - bl.x_power;
                                        let mut coeff = emb.embed(c).mul(&scale);
                                        if !canonical {
                                            coeff = coeff.mul(&pow_i(beta, exp)).neg();
                                            exp = -exp;
                                        }
                                        if exp.abs() > w {
                                            continue;
                                        }
                                        let key = EdgeKey {
                                            edge: e.to_string(),
                                            source: *tau,
                                            target: *tau2,
                                            exponent: exp,
                                        };
                                        let idx = edge_index[&key];
                                        crate::linalg::axpy(&mut col, &coeff, &[(idx, RatFunc::one())].into());
                                    }
                                }
                            }
                        }
                        vertex_parity.push((class.parity() + s.shift + t.shift) % 2);
                        vertex_keys.push(VertexKey {
                            vertex: v.clone(),
                            source: si,
                            target: ti,
                            class,
                        });
                        delta.push(col);
                    }
                }
            }
        }
        Ok(GlobalHomComplex {
            window,
            vertex_keys,
            vertex_parity,
            edge_keys,
            edge_parity,
            delta,
            max_twist: max_twist(l).max(max_twist(m)),
        })
    }

    /// The total complex `T`: `T_p = V_p ⊕ E_{1−p}` with differential `δ`
    /// on the vertex part.
    pub fn graded(&self) -> GradedComplex {
        let mut c = GradedComplex::default();
        // position of each key inside its parity block of T
        let mut v_pos = vec![0usize; self.vertex_keys.len()];
        let mut e_pos = vec![0usize; self.edge_keys.len()];
        for (i, k) in self.vertex_keys.iter().enumerate() {
            let p = self.vertex_parity[i] as usize;
            v_pos[i] = c.degrees[p].len();
            c.degrees[p].push(k.class.degree());
        }
        for (i, k) in self.edge_keys.iter().enumerate() {
            let p = 1 - self.edge_parity[i] as usize;
            e_pos[i] = c.degrees[p].len();
            c.degrees[p].push(k.exponent.unsigned_abs() as u32);
        }
        c.diff = [vec![SparseVec::new(); c.degrees[0].len()], vec![SparseVec::new(); c.degrees[1].len()]];
        for (i, col) in self.delta.iter().enumerate() {
            let p = self.vertex_parity[i] as usize;
            let image: SparseVec = col.iter().map(|(j, x)| (e_pos[*j], x.clone())).collect();
            c.diff[p][v_pos[i]] = image;
        }
        c
    }

    pub fn stable_up_to(&self) -> u32 {
        (self.window as i64 - 2 - self.max_twist).max(0) as u32
    }

    pub fn report(&self) -> HomReport {
        let h = self.graded().filtered_cohomology(self.window);
        HomReport {
            window: self.window,
            dims_even: h.dims[0].clone(),
            dims_odd: h.dims[1].clone(),
            stable_up_to: self.stable_up_to(),
            basis: None,
        }
    }
}

fn check_window(window: u32, l: &GlobalSection, m: &GlobalSection) -> Result<(), GlueError> {
    let need = 2 + max_twist(l).max(max_twist(m));
    if (window as i64) < need {
        return Err(GlueError::WindowTooSmall(window));
    }
    Ok(())
}

/// Cohomology of the fiber of the comparison map, per degree.
pub fn hom_global(
    g: &DecoratedGraph,
    l: &GlobalSection,
    m: &GlobalSection,
    window: u32,
) -> Result<HomReport, GlueError> {
    hom_global_with(g, l, m, window, embedding_for(g, l, m))
}

pub fn hom_global_with(
    g: &DecoratedGraph,
    l: &GlobalSection,
    m: &GlobalSection,
    window: u32,
    emb: Embedding,
) -> Result<HomReport, GlueError> {
    check_window(window, l, m)?;
    Ok(GlobalHomComplex::assemble(g, l, m, window, emb)?.report())
}

/// `Σ (dims_even − dims_odd)` over the stable degrees; fails if the stable
/// dimensions move between `window` and `window + 2`.
pub fn euler_form(
    g: &DecoratedGraph,
    l: &GlobalSection,
    m: &GlobalSection,
    window: u32,
) -> Result<i64, GlueError> {
    let a = hom_global(g, l, m, window)?;
    let b = hom_global(g, l, m, window + 2)?;
    let n = a.stable_up_to as usize + 1;
    if a.dims_even[..n] != b.dims_even[..n] || a.dims_odd[..n] != b.dims_odd[..n] {
        return Err(GlueError::NotStabilized(window));
    }
    Ok(a.stable_euler())
}
