//! Rational functions in one variable over `Q`.
//!
//! Ranks of matrices over the finite Novikov ring are computed in the field
//! `Q(s)` with `s = q^{1/D}`, where `D` clears every exponent denominator that
//! occurs in the input.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NovikovElement;

/// Dense univariate polynomial, coefficients from low to high degree with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = UPoly(vec![c]);
        p.trim();
        p
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        UPoly(v)
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = rhs.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        let mut p = UPoly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Power of `s` dividing the polynomial.
    fn low_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Self {
        UPoly(self.0[k..].to_vec())
    }

    fn is_monomial(&self) -> bool {
        self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().unwrap().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        let mut q = UPoly(q);
        q.trim();
        let mut r = UPoly(r);
        r.trim();
        (q, r)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }
}

/// Element of `Q(s)` kept as `num/den` with monic, coprime denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c · s^k` for any integer `k`.
    pub fn laurent_monomial(c: BigRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            RatFunc {
                num: UPoly::monomial(c, k as usize),
                den: UPoly::one(),
            }
        } else {
            RatFunc {
                num: UPoly::constant(c),
                den: UPoly::monomial(BigRational::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let c = den.0[0].recip();
            return RatFunc {
                num: num.scale(&c),
                den: UPoly::one(),
            };
        }
        if den.is_monomial() {
            // Only powers of s can cancel.
            let k = den.low_order().min(num.low_order());
            let lead = den.lead().unwrap().recip();
            return RatFunc {
                num: num.shift_down(k).scale(&lead),
                den: den.shift_down(k).scale(&lead),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.lead().unwrap().recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: self.num.mul(&rhs.num),
                den: UPoly::one(),
            };
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul(&rhs.inv()?))
    }

    /// A monomial `c·s^k` is cheap to divide by; elimination prefers these as
    /// pivots.
    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &UPoly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let parts: Vec<String> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}*s^{}", c, k))
                .collect();
            parts.join(" + ")
        };
        if self.den.is_one() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

/// How Novikov scalars are turned into field elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// `q ↦ s^D`, exact over `Q(s)`.
    Formal { denom: i64 },
    /// `q ↦ 1`, i.e. work over `Q` after specialization.
    AtQOne,
}

impl Embedding {
    /// Formal embedding whose denominator clears all the given scalars.
    pub fn formal_for<'a, I>(scalars: I) -> Self
    where
        I: IntoIterator<Item = &'a NovikovElement>,
    {
        let denom = scalars
            .into_iter()
            .fold(1i64, |acc, x| acc.lcm(&x.exponent_denominator()));
        Embedding::Formal { denom }
    }

    pub fn embed(&self, x: &NovikovElement) -> RatFunc {
        match *self {
            Embedding::AtQOne => RatFunc::constant(x.specialize_q1()),
            Embedding::Formal { denom } => {
                let mut terms = x.terms().iter().map(|(e, c)| {
                    let scaled = e * denom;
                    assert!(
                        scaled.is_integer(),
                        "exponent {} not cleared by denominator {}",
                        e,
                        denom
                    );
                    (scaled.to_integer(), c)
                });
                let Some((first_exp, first_c)) = terms.next() else {
                    return RatFunc::zero();
                };
                let mut num = vec![(0usize, first_c.clone())];
                for (e, c) in terms {
                    num.push(((e - first_exp) as usize, c.clone()));
                }
                let len = num.last().unwrap().0 + 1;
                let mut coeffs = vec![BigRational::zero(); len];
                for (k, c) in num {
                    coeffs[k] = c;
                }
                let body = RatFunc {
                    num: UPoly(coeffs),
                    den: UPoly::one(),
                };
                body.mul(&RatFunc::laurent_monomial(BigRational::one(), first_exp))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn field_identities() {
        // (1 + s) / (1 - s^2) = 1 / (1 - s)
        let one_plus = RatFunc::one().add(&RatFunc::laurent_monomial(r(1), 1));
        let one_minus_sq = RatFunc::one().sub(&RatFunc::laurent_monomial(r(1), 2));
        let lhs = one_plus.div(&one_minus_sq).unwrap();
        let rhs = RatFunc::one()
            .sub(&RatFunc::laurent_monomial(r(1), 1))
            .inv()
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.mul(&lhs.inv().unwrap()).is_one());
    }

    #[test]
    fn embedding_respects_products() {
        let a = NovikovElement::from_terms([
            (Rational64::new(-1, 2), r(2)),
            (Rational64::new(1, 3), r(1)),
        ]);
        let b = NovikovElement::from_terms([(Rational64::new(5, 6), r(-3)), (Rational64::new(0, 1), r(1))]);
        let emb = Embedding::formal_for([&a, &b]);
        assert_eq!(emb, Embedding::Formal { denom: 6 });
        assert_eq!(emb.embed(&(&a * &b)), emb.embed(&a).mul(&emb.embed(&b)));
        assert_eq!(emb.embed(&(&a + &b)), emb.embed(&a).add(&emb.embed(&b)));
        assert_eq!(
            Embedding::AtQOne.embed(&a),
            RatFunc::constant(a.specialize_q1())
        );
    }
}
