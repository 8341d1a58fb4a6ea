//! Polynomials in `x1, x2, x3` with Novikov coefficients and sparse matrices
//! of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::NovikovElement;

/// Exponent vector of a monomial in `x1, x2, x3`.
pub type Monomial = [u32; 3];

pub fn mono_degree(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// All monomials of total degree at most `max`, ordered by degree then
/// lexicographically.
pub fn monomials_up_to(max: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly3(BTreeMap<Monomial, NovikovElement>);

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: NovikovElement) -> Self {
        Self::term(c, [0, 0, 0])
    }

    pub fn term(c: NovikovElement, m: Monomial) -> Self {
        let mut p = BTreeMap::new();
        if !c.is_zero() {
            p.insert(m, c);
        }
        Poly3(p)
    }

    /// The variable `x_i`, `i ∈ {1, 2, 3}`.
    pub fn var(i: usize) -> Self {
        let mut m = [0; 3];
        m[i - 1] = 1;
        Self::term(NovikovElement::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &NovikovElement)> {
        self.0.iter()
    }

    pub fn max_degree(&self) -> u32 {
        self.0.keys().map(mono_degree).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &rhs.0 {
            let s = match out.get(m) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if s.is_zero() {
                out.remove(m);
            } else {
                out.insert(*m, s);
            }
        }
        Poly3(out)
    }

    pub fn neg(&self) -> Self {
        Poly3(self.0.iter().map(|(m, c)| (*m, -c)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly3::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out = out.add(&Poly3::term(c1 * c2, mono_mul(m1, m2)));
            }
        }
        out
    }

    pub fn scale(&self, c: &NovikovElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly3(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    pub fn scalars(&self) -> impl Iterator<Item = &NovikovElement> {
        self.0.values()
    }
}

impl fmt::Debug for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                for (i, e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{}", i + 1, e)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse `rows × cols` matrix of polynomials; stored entries are nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Poly3>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn scalar_identity(n: usize, f: &Poly3) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn from_entry(p: Poly3) -> Self {
        let mut m = Self::zeros(1, 1);
        m.set(0, 0, p);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Poly3 {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly3) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly3)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.values().map(Poly3::max_degree).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for ((r, c), p) in &rhs.entries {
            let s = out.get(*r, *c).add(p);
            out.set(*r, *c, s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Poly3)>> = BTreeMap::new();
        for ((r, c), p) in &rhs.entries {
            by_row.entry(*r).or_default().push((*c, p));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    let s = out.get(*i, *j).add(&a.mul(b));
                    out.set(*i, *j, s);
                }
            }
        }
        out
    }

    /// Block matrix; `blocks[i][j]` must have consistent shapes.
    pub fn block(blocks: &[Vec<PolyMatrix>]) -> Self {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                assert_eq!((b.rows, b.cols), (heights[bi], widths[bj]), "block shape");
                for ((r, c), p) in &b.entries {
                    out.set(r0 + r, c0 + c, p.clone());
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        out
    }

    pub fn scalars(&self) -> impl Iterator<Item = &NovikovElement> {
        self.entries.values().flat_map(|p| p.scalars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        // C(d + 3, 3) monomials of degree at most d
        assert_eq!(monomials_up_to(4).len(), 35);
        assert_eq!(monomials_up_to(6).len(), 84);
    }

    #[test]
    fn product_of_variables() {
        let p = Poly3::var(1).mul(&Poly3::var(2)).mul(&Poly3::var(3));
        assert_eq!(p, Poly3::term(NovikovElement::one(), [1, 1, 1]));
        let q = Poly3::var(1).add(&Poly3::var(2));
        let sq = q.mul(&q);
        assert_eq!(sq.terms().count(), 3);
        assert!(q.sub(&q).is_zero());
    }
}
