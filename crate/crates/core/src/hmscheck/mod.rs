//! Acceptance criteria over a fixed corpus of graphs, curves and local
//! models.  Shared by the acceptance test target and the `hms-check`
//! command.

pub mod corpus;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{lift_curve, pullback_curve, stabilized_equivariant_hom, VoltageAssignment};
use crate::gluecat::{
    apply_gauge_to_section, apply_reframe, compile, euler_form, hom_global, hom_global_with, reframe, CurveKind,
    CurveObject, GlobalSection, LocalSystem,
};
use crate::graph::fixtures::{k4, theta, theta_area, theta_unit};
use crate::graph::{gauge_transform, total_weight, DecoratedGraph, EdgeOrientation, GaugeChain};
use crate::localrestrict::{rule_parity, LocalGenerator};
use crate::mfcore::{
    differential, make_f, mf_cone, mf_hom, mf_shift, mf_sum, MfMorphism, MfObject, Poly3, PolyMatrix,
};
use crate::ncingest::standard::{five_curves, mobius, p3_fan, two_sheets};
use crate::ncingest::{check_orientability, graph_from_fan, graph_from_nc, nc_from_fan, NcSurfaceDesc, Orientability};
use crate::scalars::{random_unit, Embedding, NovikovElement};
use crate::surface::{algebraic_intersection, surface_invariants};
use corpus::{NamedCurve, DISTINCT_TWISTS, EMBEDDED};

pub const CRITERIA: usize = 10;
const WINDOW: u32 = 6;

/// Result of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_secs: f64,
    pub budget_secs: f64,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s, budget {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_secs,
            self.budget_secs,
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

const TABLE: [(&str, f64, Check); CRITERIA] = [
    ("matrix factorization invariants", 1.0, mf_invariants),
    ("local endomorphism cohomology", 5.0, local_cohomology),
    ("restriction rule table", 1.0, rule_table),
    ("gauge and weight invariance", 60.0, gauge_invariance),
    ("framing covariance", 60.0, framing_covariance),
    ("graph dictionary", 1.0, graph_dictionary),
    ("curve corpus on theta", 120.0, curve_corpus),
    ("cover equivariance", 600.0, cover_equivariance),
    ("orientability gate", 1.0, orientability_gate),
    ("specialization at q = 1", 120.0, specialization),
];

/// Runs criterion `id` (1-based).  It passes when its check succeeds within
/// the time budget.
pub fn run_criterion(id: usize, seed: u64) -> Outcome {
    let (title, budget, check) = TABLE[id - 1];
    let start = Instant::now();
    let result = check(seed);
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs_f64(budget);
    let (passed, detail) = match result {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("over budget; {d}")),
        Err(e) => (false, e),
    };
    Outcome {
        id,
        title,
        passed,
        elapsed_secs: elapsed.as_secs_f64(),
        budget_secs: budget,
        detail,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=CRITERIA).map(|i| run_criterion(i, seed)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// matrix factorizations

fn generators(alpha: &NovikovElement) -> Result<Vec<MfObject>, String> {
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let f = make_f(alpha, i, j).map_err(err)?;
        out.push(mf_shift(&f));
        out.push(f);
    }
    Ok(out)
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.6) {
                let mut mono = [0u32; 3];
                for _ in 0..rng.gen_range(0..=2) {
                    mono[rng.gen_range(0..3)] += 1;
                }
                m.set(r, c, Poly3::term(random_unit(rng), mono));
            }
        }
    }
    m
}

/// A closed even map: the boundary of a random odd one.
fn random_closed<R: Rng>(rng: &mut R, f: &MfObject, g: &MfObject) -> MfMorphism {
    let psi = MfMorphism {
        parity: 1,
        components: [random_matrix(rng, g.rank(1), f.rank(0)), random_matrix(rng, g.rank(0), f.rank(1))],
    };
    differential(f, g, &psi)
}

fn mf_invariants(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let alpha = random_unit(&mut rng);
        for f in generators(&alpha)? {
            ensure(f.check_invariant(), || format!("generator fails at α = {alpha}"))?;
        }
    }
    let alpha = random_unit(&mut rng);
    let mut pool = generators(&alpha)?;
    let mut counts = [0usize; 3];
    for n in 0..50 {
        let small: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].rank(0) + pool[i].rank(1) <= 6).collect();
        let f = pool[small[rng.gen_range(0..small.len())]].clone();
        let g = pool[small[rng.gen_range(0..small.len())]].clone();
        let h = match n % 3 {
            0 => mf_sum(&f, &g).map_err(err)?,
            1 => mf_shift(&f),
            _ => {
                let phi = random_closed(&mut rng, &f, &g);
                mf_cone(&phi, &f, &g).map_err(err)?
            }
        };
        ensure(h.check_invariant(), || format!("operation {n} breaks T1·T0 = fI"))?;
        counts[n % 3] += 1;
        pool.push(h);
    }
    Ok(format!(
        "120 generators, {} sums, {} shifts, {} cones exact",
        counts[0], counts[1], counts[2]
    ))
}

fn local_cohomology(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = random_unit(&mut rng);
    let mut stable = u32::MAX;
    for f in generators(&alpha)? {
        let r = mf_hom(&f, &f, WINDOW).map_err(err)?;
        let (even, odd) = r.stable_dims();
        let want: Vec<usize> = (0..even.len()).map(|d| if d == 0 { 1 } else { 2 }).collect();
        ensure(even == want && odd.iter().all(|&d| d == 0), || {
            format!("End dims {even:?}/{odd:?}, expected {want:?}/0")
        })?;
        stable = stable.min(r.stable_up_to);
    }
    Ok(format!("six generators: even 1,2,2,… odd 0 through degree {stable}"))
}

// ---------------------------------------------------------------------------
// local restriction

/// Expected parity of the ordered generator `F_ab` along `x` from the rule
/// table: along `a` even iff inward, along `b` odd iff inward, otherwise zero.
fn table_entry(a: &str, b: &str, x: &str, inward: bool) -> Option<u8> {
    match () {
        _ if x == a => Some(if inward { 0 } else { 1 }),
        _ if x == b => Some(if inward { 1 } else { 0 }),
        _ => None,
    }
}

/// Independent vanishing test: the restriction along `x` is zero exactly
/// when a differential of the factorization has a unit entry once `x` is
/// inverted and the other variables are set to zero.
fn restriction_vanishes(f: &MfObject, var: usize) -> bool {
    [f.t(0), f.t(1)].iter().any(|t| {
        t.entries()
            .any(|(_, p)| p.terms().any(|(m, _)| (0..3).all(|k| k == var - 1 || m[k] == 0)))
    })
}

fn rule_table(_seed: u64) -> Result<String, String> {
    let hs = ["h1", "h2", "h3"];
    let (mut cases, mut nonzero) = (0, 0);
    for order in [["h1", "h2", "h3"], ["h1", "h3", "h2"]] {
        for x in hs {
            for inward in [true, false] {
                let g = local_pants(order, x, inward);
                let next = |h: &str| order[(order.iter().position(|y| *y == h).unwrap() + 1) % 3];
                let mut got: BTreeMap<(&str, &str), Option<u8>> = BTreeMap::new();
                for a in hs {
                    for b in hs.iter().copied().filter(|b| *b != a) {
                        let shift = if next(a) == b { 0 } else { 1 };
                        let raw = rule_parity(&g, "v", x, &LocalGenerator::pair(a, b)).map_err(err)?;
                        let value = raw.map(|p| (p + shift) % 2);
                        let want = table_entry(a, b, x, inward);
                        ensure(value == want, || {
                            format!("order {order:?}, F_{a}{b} along {x} (inward {inward}): {value:?} vs {want:?}")
                        })?;
                        let obj = crate::localrestrict::generator_object(&g, "v", &LocalGenerator::pair(a, b))
                            .map_err(err)?;
                        let var = order.iter().position(|y| *y == x).unwrap() + 1;
                        ensure(restriction_vanishes(&obj, var) == want.is_none(), || {
                            format!("vanishing of F_{a}{b} along {x} disagrees with the factorization")
                        })?;
                        got.insert((a, b), value);
                        cases += 1;
                        nonzero += usize::from(value.is_some());
                    }
                }
                // R_j(F_ij) = R_j(F_jk)[1] with j = x, i before it and k after it
                let j = x;
                let k = next(j);
                let i = next(k);
                let lhs = got[&(i, j)];
                let rhs = got[&(j, k)].map(|p| (p + 1) % 2);
                ensure(lhs == rhs, || format!("consistency fails at {j}: {lhs:?} vs {rhs:?}"))?;
            }
        }
    }
    Ok(format!("{cases} cases ({nonzero} nonzero) over both cyclic orders match, consistency identity holds"))
}

/// One trivalent vertex `v`; the edge at `x` points in or out, the others out.
fn local_pants(order: [&str; 3], x: &str, inward: bool) -> DecoratedGraph {
    let one = NovikovElement::one;
    let mut b = DecoratedGraph::builder().trivalent("v", one(), order);
    for (i, h) in ["h1", "h2", "h3"].into_iter().enumerate() {
        b = b.noncompact(&format!("e{}", i + 1), h, one(), h == x && inward);
    }
    b.build()
}

// ---------------------------------------------------------------------------
// global Hom over the corpus

type Dims = (Vec<usize>, Vec<usize>);

fn sections(g: &DecoratedGraph, curves: &[NamedCurve]) -> Result<Vec<GlobalSection>, String> {
    curves
        .iter()
        .map(|(n, c)| compile(g, c).map_err(|e| format!("{n}: {e}")))
        .collect()
}

fn all_pairs(g: &DecoratedGraph, secs: &[GlobalSection]) -> Result<Vec<crate::mfcore::HomReport>, String> {
    let mut out = Vec::new();
    for a in secs {
        for b in secs {
            out.push(hom_global(g, a, b, WINDOW).map_err(err)?);
        }
    }
    Ok(out)
}

/// Agreement over the common certified range.
fn agree(a: &crate::mfcore::HomReport, b: &crate::mfcore::HomReport) -> bool {
    let n = a.stable_up_to.min(b.stable_up_to) as usize + 1;
    a.dims_even[..n] == b.dims_even[..n] && a.dims_odd[..n] == b.dims_odd[..n]
}

fn dims(r: &crate::mfcore::HomReport) -> Dims {
    r.stable_dims()
}

fn random_theta<R: Rng>(rng: &mut R) -> DecoratedGraph {
    theta([random_unit(rng), random_unit(rng)], std::array::from_fn(|_| random_unit(rng)))
}

fn random_k4<R: Rng>(rng: &mut R) -> DecoratedGraph {
    k4(std::array::from_fn(|_| random_unit(rng)), std::array::from_fn(|_| random_unit(rng)))
}

fn gauge_invariance(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homs = 0;
    for (name, g, curves) in [
        ("theta", random_theta(&mut rng), corpus::theta_curves()),
        ("K4", random_k4(&mut rng), corpus::k4_curves()),
    ] {
        let secs = sections(&g, &curves)?;
        let base = all_pairs(&g, &secs)?;
        let w0 = total_weight(&g);
        for _ in 0..20 {
            let chain = GaugeChain::random(&g, &mut rng);
            let g2 = gauge_transform(&g, &chain).map_err(err)?;
            ensure(total_weight(&g2) == w0, || format!("{name}: total weight moved"))?;
            let moved: Vec<GlobalSection> = secs.iter().map(|s| apply_gauge_to_section(s, &chain)).collect();
            for (r, after) in base.iter().zip(all_pairs(&g2, &moved)?) {
                ensure(dims(r) == dims(&after), || format!("{name}: Hom dims changed under gauge"))?;
                homs += 1;
            }
        }
    }
    Ok(format!("40 gauge chains, total weight exact, {homs} Hom comparisons agree"))
}

/// The five single reversals of the theta framing.
fn single_reversals(g: &DecoratedGraph) -> Vec<(String, crate::graph::Framing)> {
    let f = g.framing();
    let mut out = Vec::new();
    for (v, order) in &f.cyclic_orders {
        let mut f2 = f.clone();
        f2.cyclic_orders.insert(v.clone(), order.reversed());
        out.push((format!("cyclic order at {v}"), f2));
    }
    for (e, o) in &f.orientations {
        let edge = g.edge(e).expect("framed edge");
        let flipped = match o {
            EdgeOrientation::Head(h) => {
                EdgeOrientation::Head(edge.half_edges.iter().find(|x| *x != h).expect("two ends").clone())
            }
            EdgeOrientation::In => EdgeOrientation::Out,
            EdgeOrientation::Out => EdgeOrientation::In,
        };
        let mut f2 = f.clone();
        f2.orientations.insert(e.clone(), flipped);
        out.push((format!("orientation of {e}"), f2));
    }
    out
}

fn framing_covariance(_seed: u64) -> Result<String, String> {
    let g = theta_area();
    let secs = sections(&g, &corpus::theta_curves())?;
    let base = all_pairs(&g, &secs)?;
    let reversals = single_reversals(&g);
    for (what, f2) in &reversals {
        let p = reframe(&g, f2).map_err(err)?;
        let g2 = g.with_framing(f2);
        let moved: Vec<GlobalSection> = secs.iter().map(|s| apply_reframe(&g, s, &p)).collect::<Result<_, _>>().map_err(err)?;
        for (r, after) in base.iter().zip(all_pairs(&g2, &moved)?) {
            ensure(agree(r, &after), || format!("{what}: Hom dims changed"))?;
        }
    }
    Ok(format!("{} reversals × {} pairs preserved", reversals.len(), base.len()))
}

// ---------------------------------------------------------------------------
// graphs and curves

fn graph_dictionary(_seed: u64) -> Result<String, String> {
    let genus = |g: &DecoratedGraph| surface_invariants(g).map(|s| s.genus).map_err(err);
    ensure(genus(&theta_unit())? == 2, || "theta genus is not 2".into())?;
    let p3 = graph_from_fan(&p3_fan()).map_err(err)?;
    ensure(p3.vertices().len() == 4 && p3.edges().len() == 6, || "P3 fan does not give K4".into())?;
    ensure(genus(&p3)? == 3, || "K4 genus is not 3".into())?;
    let seg = graph_from_nc(&two_sheets()).map_err(err)?;
    ensure(
        seg.vertices().values().all(|v| v.valency == 1)
            && seg.vertices().len() == 2
            && seg.edges().len() == 1
            && seg.edges().values().all(|e| e.compact),
        || "two sheets do not give a segment".into(),
    )?;
    let five = graph_from_nc(&five_curves()).map_err(err)?;
    let compact = five.edges().values().filter(|e| e.compact).count();
    ensure(
        five.vertices().len() == 2
            && five.vertices().values().all(|v| v.valency == 3)
            && compact == 1
            && five.edges().len() == 5,
        || "five curves do not give two pants glued along one edge".into(),
    )?;
    Ok("theta genus 2, P3 fan K4 genus 3, segment and glued pants reproduced".into())
}

fn index(curves: &[NamedCurve], name: &str) -> usize {
    curves.iter().position(|(n, _)| *n == name).expect("corpus curve")
}

fn curve_corpus(_seed: u64) -> Result<String, String> {
    let g = theta_area();
    let curves = corpus::theta_curves();
    let secs = sections(&g, &curves)?;
    for name in EMBEDDED {
        let s = &secs[index(&curves, name)];
        let a = hom_global(&g, s, s, WINDOW).map_err(err)?;
        let b = hom_global(&g, s, s, WINDOW + 2).map_err(err)?;
        ensure(a.stable_totals() == (1, 1) && b.stable_totals() == (1, 1) && agree(&a, &b), || {
            format!("End({name}) = {:?} at window {WINDOW}, {:?} at {}", a.stable_totals(), b.stable_totals(), WINDOW + 2)
        })?;
    }
    for (x, y) in DISTINCT_TWISTS {
        for (p, q) in [(x, y), (y, x)] {
            let r = hom_global(&g, &secs[index(&curves, p)], &secs[index(&curves, q)], WINDOW).map_err(err)?;
            ensure(r.stable_totals() == (0, 0), || format!("Hom({p}, {q}) = {:?}", r.stable_totals()))?;
        }
    }
    let tree: BTreeSet<String> = ["t2".to_string()].into();
    for (i, (n1, c1)) in curves.iter().enumerate() {
        for (j, (n2, c2)) in curves.iter().enumerate() {
            let chi = euler_form(&g, &secs[i], &secs[j], WINDOW).map_err(err)?;
            let dot = algebraic_intersection(&g, &tree, c1, c2).map_err(err)?;
            ensure(chi == 0 && dot == 0, || format!("χ({n1}, {n2}) = {chi}, intersection {dot}"))?;
        }
    }
    Ok(format!(
        "3 embedded cycles End (1,1) at windows {WINDOW} and {}, 6 twist pairs (0,0), χ = 0 = pairing on {} pairs",
        WINDOW + 2,
        curves.len() * curves.len()
    ))
}

// ---------------------------------------------------------------------------
// covers

fn cover_equivariance(_seed: u64) -> Result<String, String> {
    let g = theta_area();
    let volt = VoltageAssignment::new(&g, ["t2".to_string()].into()).map_err(err)?;
    let curves = corpus::theta_curves();
    let secs = sections(&g, &curves)?;
    let mut worst = 0;
    for (i, (n1, c1)) in curves.iter().enumerate() {
        for (j, (n2, c2)) in curves.iter().enumerate() {
            let (eq, n0) = stabilized_equivariant_hom(&g, &volt, c1, c2, WINDOW, 3).map_err(err)?;
            let base = hom_global(&g, &secs[i], &secs[j], WINDOW).map_err(err)?;
            ensure(agree(&eq, &base), || {
                format!("({n1}, {n2}): equivariant {:?} vs base {:?}", eq.stable_dims(), base.stable_dims())
            })?;
            worst = worst.max(n0);
        }
    }
    let lifts = lift_curve(&g, &volt, &corpus::commutator(), 1).map_err(err)?;
    ensure(lifts.iter().all(|l| l.curve.kind == CurveKind::Closed), || "commutator lift is not compact".into())?;
    let at_origin = lifts
        .iter()
        .find(|l| l.anchor == vec![0, 0])
        .ok_or("no commutator lift anchored at the origin")?;
    let footprint: BTreeSet<Vec<i64>> = at_origin.sites.iter().cloned().collect();
    let want: BTreeSet<Vec<i64>> = [vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]].into();
    ensure(footprint == want, || format!("commutator footprint {footprint:?}"))?;
    let fam = pullback_curve(&g, &volt, &corpus::cycle12(), 2).map_err(err)?;
    ensure(fam.class == vec![1, 0], || format!("cycle class {:?}", fam.class))?;
    for (i, l) in fam.lifts.iter().enumerate() {
        ensure(l.curve.kind == CurveKind::Arc, || "class e1 lift is not an arc".into())?;
        let stab: Vec<i64> = (-2..=2).filter(|&k| fam.fixes(i, &[k, 0])).collect();
        ensure(stab == vec![-2, -1, 0, 1, 2] && !fam.fixes(i, &[0, 1]) && !fam.fixes(i, &[1, 1]), || {
            "class e1 stabilizer is not Z·e1".into()
        })?;
    }
    Ok(format!(
        "{} pairs agree with the base, stabilization radius ≤ {worst}; commutator footprint and e1 stabilizer as expected",
        curves.len() * curves.len()
    ))
}

// ---------------------------------------------------------------------------
// orientability

/// Sign with which a triangle with sorted vertices `(a, b, c)` orients the
/// edge `{x, y}`, `x < y`, under the cyclic order `a → b → c → a`.
fn induced(tri: &[String], x: &str, y: &str) -> i8 {
    let pos = |v: &str| tri.iter().position(|t| t == v).expect("vertex of triangle");
    let (p, q) = (pos(x.min(y)), pos(x.max(y)));
    if (p + 1) % 3 == q {
        1
    } else {
        -1
    }
}

struct DualComplex {
    triangles: Vec<Vec<String>>,
    /// Shared double curve between two triple points, with its ends.
    adjacent: BTreeMap<(usize, usize), (String, String)>,
    by_name: BTreeMap<String, usize>,
}

fn dual_complex(desc: &NcSurfaceDesc) -> DualComplex {
    let ends: BTreeMap<&str, &[String; 2]> = desc.curves.iter().map(|c| (c.name.as_str(), &c.components)).collect();
    let triangles: Vec<Vec<String>> = desc
        .triple_points
        .iter()
        .map(|p| {
            let set: BTreeSet<String> = p.curves.iter().flat_map(|c| ends[c.as_str()].iter().cloned()).collect();
            set.into_iter().collect()
        })
        .collect();
    let mut adjacent = BTreeMap::new();
    for (i, p) in desc.triple_points.iter().enumerate() {
        for (j, q) in desc.triple_points.iter().enumerate() {
            if i != j {
                if let Some(c) = p.curves.iter().find(|c| q.curves.contains(c)) {
                    let [x, y] = ends[c.as_str()];
                    adjacent.insert((i, j), (x.clone(), y.clone()));
                }
            }
        }
    }
    let by_name = desc.triple_points.iter().enumerate().map(|(i, p)| (p.name.clone(), i)).collect();
    DualComplex { triangles, adjacent, by_name }
}

impl DualComplex {
    /// Relative orientation forced on `j` by `i` across their shared curve.
    fn transition(&self, i: usize, j: usize) -> Option<i8> {
        let (x, y) = self.adjacent.get(&(i, j))?;
        Some(-induced(&self.triangles[i], x, y) * induced(&self.triangles[j], x, y))
    }

    /// The orientation double cover is connected iff some triangle meets
    /// both of its sheets.
    fn double_cover_connected(&self) -> bool {
        let n = self.triangles.len();
        let mut seen = vec![[false; 2]; n];
        for start in 0..n {
            if seen[start][0] || seen[start][1] {
                continue;
            }
            seen[start][0] = true;
            let mut queue = VecDeque::from([(start, 0usize)]);
            while let Some((i, s)) = queue.pop_front() {
                for j in 0..n {
                    if let Some(t) = self.transition(i, j) {
                        let sj = if t > 0 { s } else { 1 - s };
                        if !seen[j][sj] {
                            seen[j][sj] = true;
                            queue.push_back((j, sj));
                        }
                    }
                }
            }
            if seen[start][1] {
                return true;
            }
        }
        false
    }

    /// A closed chain of adjacent triangles whose transitions multiply to −1.
    fn is_odd_cycle(&self, names: &[String]) -> bool {
        let mut ids: Vec<usize> = match names.iter().map(|n| self.by_name.get(n).copied()).collect::<Option<_>>() {
            Some(v) => v,
            None => return false,
        };
        if ids.len() > 1 && ids.first() == ids.last() {
            ids.pop();
        }
        if ids.len() < 2 {
            return false;
        }
        let mut sign = 1;
        for k in 0..ids.len() {
            match self.transition(ids[k], ids[(k + 1) % ids.len()]) {
                Some(t) => sign *= t,
                None => return false,
            }
        }
        sign < 0
    }
}

fn orientability_gate(_seed: u64) -> Result<String, String> {
    let p3 = nc_from_fan(&p3_fan()).map_err(err)?;
    ensure(!dual_complex(&p3).double_cover_connected(), || "oracle: P3 complex non-orientable".into())?;
    match check_orientability(&p3).map_err(err)? {
        Orientability::Orientable(_) => {}
        Orientability::NonOrientable { .. } => return Err("P3 dual complex rejected".into()),
    }
    let m = mobius();
    let dual = dual_complex(&m);
    ensure(dual.double_cover_connected(), || "oracle: Möbius complex orientable".into())?;
    match check_orientability(&m).map_err(err)? {
        Orientability::Orientable(_) => Err("Möbius complex accepted".into()),
        Orientability::NonOrientable { cycle } => {
            ensure(dual.is_odd_cycle(&cycle), || format!("reported cycle {cycle:?} is not orientation-reversing"))?;
            Ok(format!("P3 accepted; Möbius rejected with cycle {}", cycle.join(" ")))
        }
    }
}

// ---------------------------------------------------------------------------
// specialization

fn specialize_curve(c: &CurveObject) -> CurveObject {
    let ls = LocalSystem(
        c.local_system
            .0
            .iter()
            .map(|row| row.iter().map(|x| NovikovElement::constant(x.specialize_q1())).collect())
            .collect(),
    );
    c.clone().with_local_system(ls)
}

fn specialization(_seed: u64) -> Result<String, String> {
    let weighted = theta_area();
    let unit = theta_unit();
    let curves = corpus::theta_curves();
    let secs = sections(&weighted, &curves)?;
    let flat: Vec<NamedCurve> = curves.iter().map(|(n, c)| (*n, specialize_curve(c))).collect();
    let flat_secs = sections(&unit, &flat)?;
    let mut changed = 0;
    for i in 0..curves.len() {
        for j in 0..curves.len() {
            let at_one = hom_global_with(&weighted, &secs[i], &secs[j], WINDOW, Embedding::AtQOne).map_err(err)?;
            let plain = hom_global(&unit, &flat_secs[i], &flat_secs[j], WINDOW).map_err(err)?;
            ensure(agree(&at_one, &plain), || {
                format!("({}, {}): {:?} vs {:?}", curves[i].0, curves[j].0, at_one.stable_dims(), plain.stable_dims())
            })?;
            let formal = hom_global(&weighted, &secs[i], &secs[j], WINDOW).map_err(err)?;
            if !agree(&formal, &plain) {
                changed += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs agree; {changed} pairs differ from the formal weighted run (twists collapse at q = 1)",
        curves.len() * curves.len()
    ))
}
