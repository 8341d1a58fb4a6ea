//! Scalars: finite Novikov sums and the fraction field used for ranks.

mod novikov;
mod ratfunc;

pub use novikov::NovikovElement;
pub(crate) use novikov::ratio_to_string;
pub use ratfunc::{Embedding, RatFunc, UPoly};

use num_rational::Rational64;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalar {0} is not invertible in the finite Novikov ring")]
    NotInvertible(String),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// `q^(n/d)` shorthand.
pub fn q_pow(n: i64, d: i64) -> NovikovElement {
    NovikovElement::q_pow(Rational64::new(n, d))
}

/// `nov_mul` as a free function.
pub fn nov_mul(a: &NovikovElement, b: &NovikovElement) -> NovikovElement {
    a * b
}

/// `valuation` as a free function; `None` is `+∞`.
pub fn valuation(a: &NovikovElement) -> Option<Rational64> {
    a.valuation()
}

/// `specialize_q1` as a free function.
pub fn specialize_q1(a: &NovikovElement) -> num_rational::BigRational {
    a.specialize_q1()
}

/// Random invertible monomial `±c·q^e` with small `c` and `e`.
pub fn random_unit<R: rand::Rng>(rng: &mut R) -> NovikovElement {
    use num_rational::BigRational;
    let e = Rational64::new(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let c = BigRational::new((rng.gen_range(1..=5) * sign).into(), rng.gen_range(1..=4).into());
    NovikovElement::monomial(c, e)
}

mod text {
    use super::{NovikovElement, ScalarError};
    use num_bigint::BigInt;
    use num_rational::{BigRational, Rational64};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    fn parse_big(v: &Value) -> Result<BigRational, ScalarError> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(BigInt::from(i)))
                .ok_or_else(|| ScalarError::Malformed(format!("non-integer number {n}; use \"p/q\""))),
            Value::String(s) => s
                .trim()
                .parse::<BigRational>()
                .map_err(|_| ScalarError::Malformed(format!("bad rational {s:?}"))),
            other => Err(ScalarError::Malformed(format!("expected rational, got {other}"))),
        }
    }

    fn parse_small(v: &Value) -> Result<Rational64, ScalarError> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Rational64::from_integer)
                .ok_or_else(|| ScalarError::Malformed(format!("non-integer exponent {n}"))),
            Value::String(s) => s
                .trim()
                .parse::<Rational64>()
                .map_err(|_| ScalarError::Malformed(format!("bad exponent {s:?}"))),
            other => Err(ScalarError::Malformed(format!("expected exponent, got {other}"))),
        }
    }

    /// Parses a list of `[coefficient, exponent]` pairs, or a bare rational.
    pub fn scalar_from_json(v: &Value) -> Result<NovikovElement, ScalarError> {
        match v {
            Value::Array(pairs) => {
                let mut terms = Vec::with_capacity(pairs.len());
                for p in pairs {
                    match p.as_array().map(|a| a.as_slice()) {
                        Some([c, e]) => terms.push((parse_small(e)?, parse_big(c)?)),
                        _ => {
                            return Err(ScalarError::Malformed(format!(
                                "expected [coefficient, exponent], got {p}"
                            )))
                        }
                    }
                }
                Ok(NovikovElement::from_terms(terms))
            }
            other => Ok(NovikovElement::constant(parse_big(other)?)),
        }
    }

    pub fn scalar_to_json(x: &NovikovElement) -> Value {
        use super::ratio_to_string as s;
        if x.is_rational() {
            return Value::String(s(&x.specialize_q1()));
        }
        Value::Array(
            x.terms()
                .iter()
                .map(|(e, c)| Value::Array(vec![Value::String(s(c)), Value::String(s(e))]))
                .collect(),
        )
    }

    impl Serialize for NovikovElement {
        fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
            scalar_to_json(self).serialize(ser)
        }
    }

    impl<'de> Deserialize<'de> for NovikovElement {
        fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
            let v = Value::deserialize(de)?;
            scalar_from_json(&v).map_err(D::Error::custom)
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use serde_json::json;

        #[test]
        fn bare_rational_abbreviates_constant() {
            let a = scalar_from_json(&json!("3/2")).unwrap();
            let b = scalar_from_json(&json!([["3/2", 0]])).unwrap();
            assert_eq!(a, b);
        }

        #[test]
        fn roundtrip() {
            let x = scalar_from_json(&json!([[3, "1/2"], ["-1", 2]])).unwrap();
            assert_eq!(scalar_from_json(&scalar_to_json(&x)).unwrap(), x);
            let s = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<NovikovElement>(&s).unwrap(), x);
        }

        #[test]
        fn malformed_is_reported() {
            assert!(scalar_from_json(&json!([[1]])).is_err());
            assert!(scalar_from_json(&json!("one")).is_err());
        }
    }
}

pub use text::{scalar_from_json, scalar_to_json};
