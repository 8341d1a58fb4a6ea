//! Finite Novikov sums `Σ c_i q^{e_i}` with rational exponents and rational
//! coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// An element of the finite Novikov ring over `Q`.
///
/// Terms are kept sorted by strictly increasing exponent with no zero
/// coefficients; the zero element has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NovikovElement {
    terms: Vec<(Rational64, BigRational)>,
}

impl NovikovElement {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Rational64::zero())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `q^e`.
    pub fn q_pow(e: Rational64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn monomial(c: BigRational, e: Rational64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// Builds an element from arbitrary (exponent, coefficient) pairs,
    /// merging equal exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational64, BigRational)>,
    {
        let mut v: Vec<(Rational64, BigRational)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational64, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Rational64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    /// True when the element is a rational constant (no `q` dependence).
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    /// Invertible elements are exactly the nonzero monomials.
    pub fn is_invertible(&self) -> bool {
        self.terms.len() == 1
    }

    /// Least exponent; `None` stands for `+∞` (the zero element).
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// The image under `q ↦ 1`: the sum of the coefficients.
    pub fn specialize_q1(&self) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        match self.terms.as_slice() {
            [(e, c)] => Ok(Self::monomial(c.recip(), -*e)),
            _ => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    /// Division by a monomial; general division is not supported.
    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power for invertible elements (negative powers allowed).
    pub fn powi(&self, n: i64) -> Result<Self, ScalarError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inverse()?.pow((-n) as u32))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Least common multiple of the exponent denominators (1 for the zero
    /// element).
    pub fn exponent_denominator(&self) -> i64 {
        self.terms
            .iter()
            .fold(1i64, |acc, (e, _)| acc.lcm(e.denom()))
    }
}

impl Add for &NovikovElement {
    type Output = NovikovElement;
    fn add(self, rhs: &NovikovElement) -> NovikovElement {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        NovikovElement { terms: out }
    }
}

impl Neg for &NovikovElement {
    type Output = NovikovElement;
    fn neg(self) -> NovikovElement {
        NovikovElement {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &NovikovElement {
    type Output = NovikovElement;
    fn sub(self, rhs: &NovikovElement) -> NovikovElement {
        self + &(-rhs)
    }
}

impl Mul for &NovikovElement {
    type Output = NovikovElement;
    fn mul(self, rhs: &NovikovElement) -> NovikovElement {
        if self.is_zero() || rhs.is_zero() {
            return NovikovElement::zero();
        }
        NovikovElement::from_terms(self.terms.iter().flat_map(|(e1, c1)| {
            rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))
        }))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NovikovElement {
            type Output = NovikovElement;
            fn $m(self, rhs: NovikovElement) -> NovikovElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NovikovElement {
    type Output = NovikovElement;
    fn neg(self) -> NovikovElement {
        -&self
    }
}

fn fmt_ratio<T: fmt::Display + Clone + Integer + Signed>(
    r: &num_rational::Ratio<T>,
) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{}", fmt_ratio(c))?;
            } else if c.is_one() {
                write!(f, "q^{}", fmt_ratio(e))?;
            } else {
                write!(f, "{}*q^{}", fmt_ratio(c), fmt_ratio(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nov({})", self)
    }
}

pub(crate) fn ratio_to_string<T: fmt::Display + Clone + Integer + Signed>(
    r: &num_rational::Ratio<T>,
) -> String {
    fmt_ratio(r)
}
