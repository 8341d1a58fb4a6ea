//! Cohomology of Hom between generators and its restriction to edges.
//!
//! For a pair `F_ab`: `End = κ[x_a, x_b]/(x_a x_b)` (even), with basis the
//! unit and the pure powers.  Two distinct pairs share exactly one index `i`,
//! and `Hom(F_ia, F_ib)` is odd and free over `κ[x_i]` on a class `w` with
//! chain representative `(E0 → E1': −x_i, E1 → E0': α)`.  Along `x_i`, `w`
//! restricts to `1` when `a` follows `i` in the cyclic order and to `−α·x`
//! otherwise, so the two composites `w∘w` both restrict to `−α·x`.

use super::{trivalent_at, Laurent, LocalGenerator, RestrictError};
use crate::graph::DecoratedGraph;
use crate::mfcore::{make_f, MfMorphism, MfObject, Poly3, PolyMatrix};
use crate::scalars::NovikovElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalClass {
    /// Identity of a pair generator.
    Unit,
    /// `x_var^n`, `n ≥ 1`, on a pair generator containing `var`.
    Power { var: String, n: u32 },
    /// `x_i^n · w` between distinct pair generators sharing `i`.
    Cross { n: u32 },
    /// `x^n` on the free module at a univalent vertex.
    FreePower { n: u32 },
}

impl LocalClass {
    pub fn degree(&self) -> u32 {
        match self {
            LocalClass::Unit => 0,
            LocalClass::Power { n, .. } | LocalClass::Cross { n } | LocalClass::FreePower { n } => *n,
        }
    }

    pub fn parity(&self) -> u8 {
        match self {
            LocalClass::Cross { .. } => 1,
            _ => 0,
        }
    }
}

fn shared(src: &LocalGenerator, tgt: &LocalGenerator) -> Option<String> {
    match (src, tgt) {
        (LocalGenerator::Pair(a, b), LocalGenerator::Pair(c, d)) if src != tgt => {
            [a, b].into_iter().find(|h| *h == c || *h == d).cloned()
        }
        _ => None,
    }
}

/// Position (1, 2 or 3) of a half-edge in the stored cyclic order at `v`.
pub fn variable_index(g: &DecoratedGraph, v: &str, h: &str) -> Result<usize, RestrictError> {
    let order = trivalent_at(g, v, h)?;
    Ok(order.as_slice().iter().position(|x| x == h).expect("half-edge in order") + 1)
}

/// The matrix factorization of a pair generator at a trivalent vertex.
pub fn generator_object(g: &DecoratedGraph, v: &str, gen: &LocalGenerator) -> Result<MfObject, RestrictError> {
    match gen {
        LocalGenerator::Pair(a, b) => {
            let alpha = &g.vertex(v).ok_or_else(|| RestrictError::UnknownVertex(v.into()))?.weight;
            make_f(alpha, variable_index(g, v, a)?, variable_index(g, v, b)?)
                .map_err(|e| RestrictError::NotAGenerator(e.to_string()))
        }
        LocalGenerator::Free => Err(RestrictError::NotAGenerator("free module".into())),
    }
}

/// Classes of `Hom(src, tgt)` of degree at most `max_degree`, with their
/// degrees and parities (before shifts).
pub fn local_classes(
    src: &LocalGenerator,
    tgt: &LocalGenerator,
    max_degree: u32,
) -> Result<Vec<LocalClass>, RestrictError> {
    let mut out = Vec::new();
    match (src, tgt) {
        (LocalGenerator::Free, LocalGenerator::Free) => {
            out.extend((0..=max_degree).map(|n| LocalClass::FreePower { n }));
        }
        (LocalGenerator::Pair(a, b), _) if src == tgt => {
            out.push(LocalClass::Unit);
            for n in 1..=max_degree {
                out.push(LocalClass::Power { var: a.clone(), n });
                out.push(LocalClass::Power { var: b.clone(), n });
            }
        }
        _ => {
            if shared(src, tgt).is_none() {
                return Err(RestrictError::NotAGenerator(format!("{src:?} and {tgt:?} share no index")));
            }
            out.extend((0..=max_degree).map(|n| LocalClass::Cross { n }));
        }
    }
    Ok(out)
}

/// Image of a class under restriction along `x`; `None` when the source or
/// target restricts to zero.
pub fn restrict_class(
    g: &DecoratedGraph,
    v: &str,
    x: &str,
    src: &LocalGenerator,
    tgt: &LocalGenerator,
    class: &LocalClass,
) -> Result<Option<Laurent>, RestrictError> {
    if !src.contains(x) || !tgt.contains(x) {
        return Ok(None);
    }
    let one = NovikovElement::one();
    Ok(Some(match class {
        LocalClass::Unit => Laurent::one(),
        LocalClass::FreePower { n } => Laurent::monomial(one, *n as i64),
        LocalClass::Power { var, n } => {
            if var == x {
                Laurent::monomial(one, *n as i64)
            } else {
                Laurent::zero()
            }
        }
        LocalClass::Cross { n } => {
            let order = trivalent_at(g, v, x)?;
            let a = src.other(x).expect("x in source pair");
            let base = if order.next(x) == Some(a) {
                Laurent::one()
            } else {
                let alpha = &g.vertex(v).expect("vertex").weight;
                Laurent::monomial(-alpha, 1)
            };
            base.mul(&Laurent::monomial(one, *n as i64))
        }
    }))
}

/// `second ∘ first` for `first: src → mid`, `second: mid → tgt`, as a
/// combination of classes of `Hom(src, tgt)`.
pub fn compose_classes(
    g: &DecoratedGraph,
    v: &str,
    src: &LocalGenerator,
    mid: &LocalGenerator,
    tgt: &LocalGenerator,
    first: &LocalClass,
    second: &LocalClass,
) -> Result<Vec<(NovikovElement, LocalClass)>, RestrictError> {
    use LocalClass::*;
    let single = |c: LocalClass| vec![(NovikovElement::one(), c)];
    Ok(match (first, second) {
        (Unit, c) | (c, Unit) => single(c.clone()),
        (FreePower { n }, FreePower { n: m }) => single(FreePower { n: n + m }),
        (Power { var: a, n }, Power { var: b, n: m }) => {
            if a == b {
                single(Power { var: a.clone(), n: n + m })
            } else {
                vec![]
            }
        }
        (Power { var, n }, Cross { n: m }) => {
            if shared(mid, tgt).as_deref() == Some(var) {
                single(Cross { n: n + m })
            } else {
                vec![]
            }
        }
        (Cross { n }, Power { var, n: m }) => {
            if shared(src, mid).as_deref() == Some(var) {
                single(Cross { n: n + m })
            } else {
                vec![]
            }
        }
        (Cross { n }, Cross { n: m }) => {
            if src == tgt {
                let i = shared(src, mid).expect("distinct generators share an index");
                let alpha = &g.vertex(v).ok_or_else(|| RestrictError::UnknownVertex(v.into()))?.weight;
                vec![(-alpha, Power { var: i, n: n + m + 1 })]
            } else {
                // odd∘odd lands in the even part of Hom between distinct
                // generators, which vanishes
                vec![]
            }
        }
        _ => {
            return Err(RestrictError::NotAGenerator(format!(
                "cannot compose {first:?} with {second:?}"
            )))
        }
    })
}

/// A chain-level morphism representing the class.
pub fn class_representative(
    g: &DecoratedGraph,
    v: &str,
    src: &LocalGenerator,
    tgt: &LocalGenerator,
    class: &LocalClass,
) -> Result<MfMorphism, RestrictError> {
    let f = generator_object(g, v, src)?;
    let x = |h: &str| -> Result<Poly3, RestrictError> { Ok(Poly3::var(variable_index(g, v, h)?)) };
    let pow = |p: Poly3, n: u32| (0..n).fold(Poly3::constant(NovikovElement::one()), |acc, _| acc.mul(&p));
    Ok(match class {
        LocalClass::Unit => MfMorphism::identity(&f),
        LocalClass::Power { var, n } => MfMorphism::multiplication(&f, &pow(x(var)?, *n)),
        LocalClass::Cross { n } => {
            let i = shared(src, tgt).ok_or_else(|| RestrictError::NotAGenerator(format!("{src:?}")))?;
            let xi = x(&i)?;
            let alpha = f.potential_scalar.clone();
            let w = MfMorphism {
                parity: 1,
                components: [
                    PolyMatrix::from_entry(xi.neg()),
                    PolyMatrix::from_entry(Poly3::constant(alpha)),
                ],
            };
            w.scale(&pow(xi, *n))
        }
        LocalClass::FreePower { .. } => {
            return Err(RestrictError::NotAGenerator("free module".into()));
        }
    })
}

