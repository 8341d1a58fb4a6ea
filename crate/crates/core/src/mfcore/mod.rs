//! Matrix factorizations of `α·x1·x2·x3`: objects, the generators `F_ij`,
//! shifts, sums, cones and window-truncated Hom cohomology.

mod hom;
mod poly;

pub use hom::{hom_complex, mf_hom, mf_hom_with_basis, ClassRepresentative, HomComplexBuilder, HomReport};
pub use poly::{mono_degree, monomials_up_to, Monomial, Poly3, PolyMatrix};

use crate::scalars::NovikovElement;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MfError {
    #[error("generator indices must be distinct elements of {{1,2,3}}, got ({0}, {1})")]
    BadIndices(usize, usize),
    #[error("potential scalars differ: {0} vs {1}")]
    PotentialMismatch(String, String),
    #[error("window {0} is too small; at least 2 is required")]
    WindowTooSmall(u32),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("morphism has parity {0}; a degree-0 (even) morphism is required")]
    WrongParity(u8),
    #[error("morphism shape does not match the objects")]
    ShapeMismatch,
    #[error("potential scalar {0} is not invertible")]
    NotInvertible(String),
}

/// `(E0 ⊕ E1, t0: E0 → E1, t1: E1 → E0)` with `t1·t0 = f` and `t0·t1 = f`
/// for `f = α·x1·x2·x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfObject {
    pub even_rank: usize,
    pub odd_rank: usize,
    pub t0: PolyMatrix,
    pub t1: PolyMatrix,
    pub potential_scalar: NovikovElement,
}

pub fn potential(alpha: &NovikovElement) -> Poly3 {
    Poly3::term(alpha.clone(), [1, 1, 1])
}

impl MfObject {
    pub fn rank(&self, parity: u8) -> usize {
        if parity % 2 == 0 {
            self.even_rank
        } else {
            self.odd_rank
        }
    }

    /// Differential leaving the summand of the given parity.
    pub fn t(&self, parity: u8) -> &PolyMatrix {
        if parity % 2 == 0 {
            &self.t0
        } else {
            &self.t1
        }
    }

    /// Both products minus `f·I`; zero for a genuine factorization.
    pub fn defect(&self) -> (PolyMatrix, PolyMatrix) {
        let f = potential(&self.potential_scalar);
        (
            self.t1.mul(&self.t0).sub(&PolyMatrix::scalar_identity(self.even_rank, &f)),
            self.t0.mul(&self.t1).sub(&PolyMatrix::scalar_identity(self.odd_rank, &f)),
        )
    }

    pub fn check_invariant(&self) -> bool {
        let shapes = self.t0.rows() == self.odd_rank
            && self.t0.cols() == self.even_rank
            && self.t1.rows() == self.even_rank
            && self.t1.cols() == self.odd_rank;
        let (a, b) = self.defect();
        shapes && a.is_zero() && b.is_zero()
    }

    pub fn scalars(&self) -> impl Iterator<Item = &NovikovElement> {
        self.t0
            .scalars()
            .chain(self.t1.scalars())
            .chain(std::iter::once(&self.potential_scalar))
    }
}

/// `F_ij`: `t0 = [x_i x_j]`, `t1 = [α x_k]`.
pub fn make_f(alpha: &NovikovElement, i: usize, j: usize) -> Result<MfObject, MfError> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(MfError::BadIndices(i, j));
    }
    if !alpha.is_invertible() {
        return Err(MfError::NotInvertible(alpha.to_string()));
    }
    let k = 6 - i - j;
    Ok(MfObject {
        even_rank: 1,
        odd_rank: 1,
        t0: PolyMatrix::from_entry(Poly3::var(i).mul(&Poly3::var(j))),
        t1: PolyMatrix::from_entry(Poly3::var(k).scale(alpha)),
        potential_scalar: alpha.clone(),
    })
}

/// `F[1]`: summands exchanged, both differentials negated.
pub fn mf_shift(f: &MfObject) -> MfObject {
    MfObject {
        even_rank: f.odd_rank,
        odd_rank: f.even_rank,
        t0: f.t1.neg(),
        t1: f.t0.neg(),
        potential_scalar: f.potential_scalar.clone(),
    }
}

fn same_potential(f: &MfObject, g: &MfObject) -> Result<(), MfError> {
    if f.potential_scalar != g.potential_scalar {
        return Err(MfError::PotentialMismatch(
            f.potential_scalar.to_string(),
            g.potential_scalar.to_string(),
        ));
    }
    Ok(())
}

pub fn mf_sum(f: &MfObject, g: &MfObject) -> Result<MfObject, MfError> {
    same_potential(f, g)?;
    let z = PolyMatrix::zeros;
    Ok(MfObject {
        even_rank: f.even_rank + g.even_rank,
        odd_rank: f.odd_rank + g.odd_rank,
        t0: PolyMatrix::block(&[
            vec![f.t0.clone(), z(f.odd_rank, g.even_rank)],
            vec![z(g.odd_rank, f.even_rank), g.t0.clone()],
        ]),
        t1: PolyMatrix::block(&[
            vec![f.t1.clone(), z(f.even_rank, g.odd_rank)],
            vec![z(g.even_rank, f.odd_rank), g.t1.clone()],
        ]),
        potential_scalar: f.potential_scalar.clone(),
    })
}

/// A morphism `F → G` of parity `p`: `components[s]` maps `E_s` to `E'_{s+p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfMorphism {
    pub parity: u8,
    pub components: [PolyMatrix; 2],
}

impl MfMorphism {
    pub fn zero(f: &MfObject, g: &MfObject, parity: u8) -> Self {
        let p = parity % 2;
        MfMorphism {
            parity: p,
            components: [
                PolyMatrix::zeros(g.rank(p), f.rank(0)),
                PolyMatrix::zeros(g.rank(1 + p), f.rank(1)),
            ],
        }
    }

    pub fn identity(f: &MfObject) -> Self {
        let one = Poly3::constant(NovikovElement::one());
        MfMorphism {
            parity: 0,
            components: [
                PolyMatrix::scalar_identity(f.even_rank, &one),
                PolyMatrix::scalar_identity(f.odd_rank, &one),
            ],
        }
    }

    /// Multiplication by a central polynomial.
    pub fn multiplication(f: &MfObject, p: &Poly3) -> Self {
        MfMorphism {
            parity: 0,
            components: [
                PolyMatrix::scalar_identity(f.even_rank, p),
                PolyMatrix::scalar_identity(f.odd_rank, p),
            ],
        }
    }

    pub fn fits(&self, f: &MfObject, g: &MfObject) -> bool {
        let p = self.parity;
        (0..2u8).all(|s| {
            let c = &self.components[s as usize];
            c.rows() == g.rank(s + p) && c.cols() == f.rank(s)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyMatrix::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.parity, rhs.parity, "parity mismatch");
        MfMorphism {
            parity: self.parity,
            components: [
                self.components[0].add(&rhs.components[0]),
                self.components[1].add(&rhs.components[1]),
            ],
        }
    }

    pub fn scale(&self, c: &Poly3) -> Self {
        let m = |x: &PolyMatrix| PolyMatrix::scalar_identity(x.rows(), c).mul(x);
        MfMorphism {
            parity: self.parity,
            components: [m(&self.components[0]), m(&self.components[1])],
        }
    }

    pub fn neg(&self) -> Self {
        MfMorphism {
            parity: self.parity,
            components: [self.components[0].neg(), self.components[1].neg()],
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MfMorphism) -> MfMorphism {
        let p = first.parity;
        MfMorphism {
            parity: (p + self.parity) % 2,
            components: [
                self.components[(p % 2) as usize].mul(&first.components[0]),
                self.components[((1 + p) % 2) as usize].mul(&first.components[1]),
            ],
        }
    }

    pub fn scalars(&self) -> impl Iterator<Item = &NovikovElement> {
        self.components.iter().flat_map(|c| c.scalars())
    }
}

/// Graded commutator `D(φ) = t_G∘φ − (−1)^{|φ|} φ∘t_F`.
pub fn differential(f: &MfObject, g: &MfObject, phi: &MfMorphism) -> MfMorphism {
    let p = phi.parity;
    let sign_flip = p % 2 == 0;
    let comp = |s: u8| {
        let lhs = g.t(s + p).mul(&phi.components[s as usize]);
        let rhs = phi.components[((s + 1) % 2) as usize].mul(f.t(s));
        if sign_flip {
            lhs.sub(&rhs)
        } else {
            lhs.add(&rhs)
        }
    };
    MfMorphism {
        parity: (p + 1) % 2,
        components: [comp(0), comp(1)],
    }
}

pub fn is_closed(f: &MfObject, g: &MfObject, phi: &MfMorphism) -> bool {
    differential(f, g, phi).is_zero()
}

/// `Cone(φ) = G ⊕ F[1]` for a closed even `φ: F → G`.
pub fn mf_cone(phi: &MfMorphism, f: &MfObject, g: &MfObject) -> Result<MfObject, MfError> {
    same_potential(f, g)?;
    if phi.parity != 0 {
        return Err(MfError::WrongParity(phi.parity));
    }
    if !phi.fits(f, g) {
        return Err(MfError::ShapeMismatch);
    }
    if !is_closed(f, g, phi) {
        return Err(MfError::NotClosed);
    }
    let z = PolyMatrix::zeros;
    // even part G_0 ⊕ F_1, odd part G_1 ⊕ F_0
    let t0 = PolyMatrix::block(&[
        vec![g.t0.clone(), phi.components[1].clone()],
        vec![z(f.even_rank, g.even_rank), f.t1.neg()],
    ]);
    let t1 = PolyMatrix::block(&[
        vec![g.t1.clone(), phi.components[0].clone()],
        vec![z(f.odd_rank, g.odd_rank), f.t0.neg()],
    ]);
    Ok(MfObject {
        even_rank: g.even_rank + f.odd_rank,
        odd_rank: g.odd_rank + f.even_rank,
        t0,
        t1,
        potential_scalar: g.potential_scalar.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_pow;

    #[test]
    fn generator_entries() {
        let a = q_pow(1, 2);
        let f = make_f(&a, 1, 2).unwrap();
        assert_eq!(f.t0.get(0, 0), Poly3::var(1).mul(&Poly3::var(2)));
        assert_eq!(f.t1.get(0, 0), Poly3::var(3).scale(&a));
        let g = make_f(&NovikovElement::one(), 2, 3).unwrap();
        assert_eq!(g.t1.get(0, 0), Poly3::var(1));
        assert!(f.check_invariant() && g.check_invariant());
        assert!(make_f(&a, 2, 2).is_err());
        assert!(make_f(&a, 0, 2).is_err());
    }

    #[test]
    fn shift_is_a_factorization_and_squares_to_identity() {
        let a = q_pow(-1, 3);
        let f = make_f(&a, 1, 2).unwrap();
        let s = mf_shift(&f);
        assert!(s.check_invariant());
        assert_eq!(s.t0.get(0, 0), Poly3::var(3).scale(&a).neg());
        assert_eq!(mf_shift(&s), f);
    }

    #[test]
    fn sum_ranks() {
        let a = NovikovElement::one();
        let s = mf_sum(&make_f(&a, 1, 2).unwrap(), &make_f(&a, 2, 3).unwrap()).unwrap();
        assert_eq!(s.even_rank, 2);
        assert!(s.check_invariant());
    }

    #[test]
    fn cone_of_zero_is_sum_with_shift() {
        let a = q_pow(2, 1);
        let f = make_f(&a, 1, 2).unwrap();
        let g = make_f(&a, 1, 3).unwrap();
        let c = mf_cone(&MfMorphism::zero(&f, &g, 0), &f, &g).unwrap();
        assert_eq!(c, mf_sum(&g, &mf_shift(&f)).unwrap());
    }

    #[test]
    fn cone_of_closed_map_between_generators() {
        // D of the odd map (1, 0) is the closed even map (x2, x3).
        let a = NovikovElement::one();
        let f = make_f(&a, 1, 2).unwrap();
        let g = make_f(&a, 1, 3).unwrap();
        let phi = MfMorphism {
            parity: 0,
            components: [
                PolyMatrix::from_entry(Poly3::var(2)),
                PolyMatrix::from_entry(Poly3::var(3)),
            ],
        };
        assert!(is_closed(&f, &g, &phi));
        let c = mf_cone(&phi, &f, &g).unwrap();
        assert!(c.check_invariant());
        let bad = MfMorphism {
            parity: 0,
            components: [
                PolyMatrix::from_entry(Poly3::var(3)),
                PolyMatrix::from_entry(Poly3::var(1)),
            ],
        };
        assert_eq!(mf_cone(&bad, &f, &g), Err(MfError::NotClosed));
    }

    #[test]
    fn differential_squares_to_zero() {
        let a = q_pow(1, 1);
        let f = make_f(&a, 1, 2).unwrap();
        let g = make_f(&a, 2, 3).unwrap();
        let phi = MfMorphism {
            parity: 1,
            components: [
                PolyMatrix::from_entry(Poly3::var(1).add(&Poly3::var(2))),
                PolyMatrix::from_entry(Poly3::var(3)),
            ],
        };
        let dd = differential(&f, &g, &differential(&f, &g, &phi));
        assert!(dd.is_zero());
    }
}
