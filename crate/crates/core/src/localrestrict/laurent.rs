use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{NovikovElement, ScalarError};

/// Laurent polynomial in one edge coordinate with Novikov coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Laurent(BTreeMap<i64, NovikovElement>);

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(NovikovElement::one(), 0)
    }

    pub fn monomial(c: NovikovElement, n: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(n, c);
        }
        Laurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &NovikovElement)> {
        self.0.iter()
    }

    pub fn coefficient(&self, n: i64) -> NovikovElement {
        self.0.get(&n).cloned().unwrap_or_default()
    }

    /// A unit of the Laurent ring: a single monomial with invertible
    /// coefficient.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(NovikovElement::is_invertible)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        for (n, c) in &rhs.0 {
            let s = match out.get(n) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if s.is_zero() {
                out.remove(n);
            } else {
                out.insert(*n, s);
            }
        }
        Laurent(out)
    }

    pub fn neg(&self) -> Self {
        Laurent(self.0.iter().map(|(n, c)| (*n, -c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Laurent::zero();
        for (n, a) in &self.0 {
            for (m, b) in &rhs.0 {
                out = out.add(&Laurent::monomial(a * b, n + m));
            }
        }
        out
    }

    pub fn scale(&self, c: &NovikovElement) -> Self {
        self.mul(&Laurent::monomial(c.clone(), 0))
    }

    /// Substitution `x ↦ β·y^{-1}`.
    pub fn transport(&self, beta: &NovikovElement) -> Result<Self, ScalarError> {
        let mut out = Laurent::zero();
        for (n, c) in &self.0 {
            out = out.add(&Laurent::monomial(c * &beta.powi(*n)?, -n));
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(n, c)| format!("({c})*x^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}
