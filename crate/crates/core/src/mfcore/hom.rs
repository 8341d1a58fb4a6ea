use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{differential, mono_degree, monomials_up_to, MfError, MfMorphism, MfObject, Monomial, Poly3};
use crate::linalg::{Echelon, GradedComplex, SparseVec};
use crate::scalars::{Embedding, NovikovElement, RatFunc};

/// Per-degree cohomology dimensions of a truncated Hom complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub window: u32,
    pub dims_even: Vec<usize>,
    pub dims_odd: Vec<usize>,
    pub stable_up_to: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<ClassRepresentative>>,
}

/// A cocycle representing one counted class, written as readable terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRepresentative {
    pub parity: u8,
    pub degree: u32,
    pub terms: Vec<String>,
}

impl HomReport {
    /// Even and odd dimensions summed over the certified degrees.
    pub fn stable_totals(&self) -> (usize, usize) {
        let n = self.stable_up_to as usize + 1;
        (
            self.dims_even.iter().take(n).sum(),
            self.dims_odd.iter().take(n).sum(),
        )
    }

    pub fn stable_dims(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.stable_up_to as usize + 1;
        (
            self.dims_even.iter().take(n).copied().collect(),
            self.dims_odd.iter().take(n).copied().collect(),
        )
    }

    pub fn stable_euler(&self) -> i64 {
        let (e, o) = self.stable_totals();
        e as i64 - o as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Key {
    source: u8,
    row: usize,
    col: usize,
    mono: Monomial,
}

/// The Hom complex between two factorizations, truncated to monomials of
/// total degree at most `window` (the quotient by the subcomplex of higher
/// degrees).
pub struct HomComplexBuilder {
    window: u32,
    keys: [Vec<Key>; 2],
    index: [HashMap<Key, usize>; 2],
    complex: GradedComplex,
    emb: Embedding,
    entry_degree: u32,
}

impl HomComplexBuilder {
    pub fn new(f: &MfObject, g: &MfObject, window: u32, emb: Embedding) -> Result<Self, MfError> {
        if f.potential_scalar != g.potential_scalar {
            return Err(MfError::PotentialMismatch(
                f.potential_scalar.to_string(),
                g.potential_scalar.to_string(),
            ));
        }
        if window < 2 {
            return Err(MfError::WindowTooSmall(window));
        }
        let monos = monomials_up_to(window);
        let mut keys: [Vec<Key>; 2] = Default::default();
        let mut index: [HashMap<Key, usize>; 2] = Default::default();
        for p in 0..2u8 {
            for source in 0..2u8 {
                for row in 0..g.rank(source + p) {
                    for col in 0..f.rank(source) {
                        for mono in &monos {
                            let k = Key { source, row, col, mono: *mono };
                            index[p as usize].insert(k, keys[p as usize].len());
                            keys[p as usize].push(k);
                        }
                    }
                }
            }
        }
        let mut b = HomComplexBuilder {
            window,
            keys,
            index,
            complex: GradedComplex::default(),
            emb,
            entry_degree: [f.t0.max_degree(), f.t1.max_degree(), g.t0.max_degree(), g.t1.max_degree()]
                .into_iter()
                .max()
                .unwrap_or(0)
                .max(2),
        };
        for p in 0..2u8 {
            let degrees = b.keys[p as usize].iter().map(|k| mono_degree(&k.mono)).collect();
            let diff = b.keys[p as usize]
                .iter()
                .map(|k| {
                    let unit = b.unit(f, g, p, k);
                    b.vector_of(&differential(f, g, &unit))
                })
                .collect();
            b.complex.degrees[p as usize] = degrees;
            b.complex.diff[p as usize] = diff;
        }
        Ok(b)
    }

    fn unit(&self, f: &MfObject, g: &MfObject, parity: u8, k: &Key) -> MfMorphism {
        let mut m = MfMorphism::zero(f, g, parity);
        m.components[k.source as usize]
            .set(k.row, k.col, Poly3::term(NovikovElement::one(), k.mono));
        m
    }

    /// Coordinates of a morphism; terms above the window are dropped.
    pub fn vector_of(&self, phi: &MfMorphism) -> SparseVec {
        let p = phi.parity as usize;
        let mut v = SparseVec::new();
        for source in 0..2u8 {
            for ((row, col), poly) in phi.components[source as usize].entries() {
                for (mono, c) in poly.terms() {
                    if mono_degree(mono) > self.window {
                        continue;
                    }
                    let k = Key { source, row: *row, col: *col, mono: *mono };
                    let idx = self.index[p][&k];
                    let x = self.emb.embed(c);
                    if !x.is_zero() {
                        v.insert(idx, x);
                    }
                }
            }
        }
        v
    }

    /// Whether `phi` is a coboundary in the truncated complex.
    pub fn is_exact(&self, phi: &MfMorphism) -> bool {
        let q = 1 - phi.parity as usize % 2;
        let mut e = Echelon::new();
        for b in &self.complex.diff[q] {
            e.insert(b.clone());
        }
        e.contains(&self.vector_of(phi))
    }

    /// Dimension of the span of the given same-parity morphisms modulo
    /// coboundaries.
    pub fn rank_modulo_exact(&self, phis: &[MfMorphism]) -> usize {
        let Some(first) = phis.first() else { return 0 };
        let q = 1 - first.parity as usize % 2;
        let mut e = Echelon::new();
        for b in &self.complex.diff[q] {
            e.insert(b.clone());
        }
        let base = e.rank();
        for phi in phis {
            e.insert(self.vector_of(phi));
        }
        e.rank() - base
    }

    pub fn stable_up_to(&self) -> u32 {
        self.window.saturating_sub(self.entry_degree)
    }

    pub fn report(&self, with_basis: bool) -> HomReport {
        let h = self.complex.filtered_cohomology(self.window);
        let basis = with_basis.then(|| {
            let mut out = Vec::new();
            for p in 0..2 {
                for (deg, vec) in &h.representatives[p] {
                    out.push(ClassRepresentative {
                        parity: p as u8,
                        degree: *deg,
                        terms: vec.iter().map(|(i, c)| self.describe(p, *i, c)).collect(),
                    });
                }
            }
            out
        });
        HomReport {
            window: self.window,
            dims_even: h.dims[0].clone(),
            dims_odd: h.dims[1].clone(),
            stable_up_to: self.stable_up_to(),
            basis,
        }
    }

    fn describe(&self, p: usize, i: usize, c: &RatFunc) -> String {
        let k = &self.keys[p][i];
        let mut mono = String::new();
        for (v, e) in k.mono.iter().enumerate() {
            if *e > 0 {
                mono.push_str(&format!("*x{}^{}", v + 1, e));
            }
        }
        format!("E{}[{},{}]: ({}){}", k.source, k.row, k.col, c, mono)
    }
}

fn embedding_for(f: &MfObject, g: &MfObject) -> Embedding {
    Embedding::formal_for(f.scalars().chain(g.scalars()))
}

/// Cohomology of `Hom(F, G)` per polynomial degree, computed exactly.
pub fn mf_hom(f: &MfObject, g: &MfObject, window: u32) -> Result<HomReport, MfError> {
    Ok(HomComplexBuilder::new(f, g, window, embedding_for(f, g))?.report(false))
}

/// As [`mf_hom`], also returning one deterministic representative per class.
pub fn mf_hom_with_basis(f: &MfObject, g: &MfObject, window: u32) -> Result<HomReport, MfError> {
    Ok(HomComplexBuilder::new(f, g, window, embedding_for(f, g))?.report(true))
}

/// Convenience: the truncated Hom complex with the natural embedding.
pub fn hom_complex(f: &MfObject, g: &MfObject, window: u32) -> Result<HomComplexBuilder, MfError> {
    HomComplexBuilder::new(f, g, window, embedding_for(f, g))
}

#[cfg(test)]
mod tests {
    use super::super::{make_f, mf_shift};
    use super::*;
    use crate::scalars::q_pow;

    #[test]
    fn end_of_generator_at_window_four() {
        let f = make_f(&q_pow(1, 2), 1, 2).unwrap();
        let r = mf_hom(&f, &f, 4).unwrap();
        assert_eq!(&r.dims_even[..3], &[1, 2, 2]);
        assert_eq!(r.stable_up_to, 2);
        assert_eq!(&r.dims_odd[..3], &[0, 0, 0]);
    }

    #[test]
    fn shift_swaps_parity() {
        let a = q_pow(-1, 1);
        let f = make_f(&a, 1, 2).unwrap();
        let plain = mf_hom(&f, &f, 4).unwrap();
        let shifted = mf_hom(&f, &mf_shift(&f), 4).unwrap();
        assert_eq!(plain.dims_odd, shifted.dims_even);
        assert_eq!(plain.dims_even, shifted.dims_odd);
    }

    #[test]
    fn stable_range_agrees_with_larger_window() {
        let a = q_pow(1, 3);
        let f = make_f(&a, 1, 2).unwrap();
        let g = make_f(&a, 2, 3).unwrap();
        let small = mf_hom(&f, &g, 4).unwrap();
        let large = mf_hom(&f, &g, 6).unwrap();
        let n = small.stable_up_to as usize + 1;
        assert_eq!(small.dims_even[..n], large.dims_even[..n]);
        assert_eq!(small.dims_odd[..n], large.dims_odd[..n]);
    }

    #[test]
    fn mismatched_potential_is_rejected() {
        let f = make_f(&q_pow(1, 1), 1, 2).unwrap();
        let g = make_f(&q_pow(2, 1), 1, 2).unwrap();
        assert!(matches!(mf_hom(&f, &g, 4), Err(MfError::PotentialMismatch(..))));
        assert!(matches!(mf_hom(&f, &f, 1), Err(MfError::WindowTooSmall(1))));
    }

    #[test]
    fn basis_is_deterministic() {
        let f = make_f(&q_pow(1, 1), 2, 3).unwrap();
        let a = mf_hom_with_basis(&f, &f, 3).unwrap();
        let b = mf_hom_with_basis(&f, &f, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis.unwrap().len(), a.dims_even.iter().sum::<usize>() + a.dims_odd.iter().sum::<usize>());
    }
}
