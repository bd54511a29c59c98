//! Exact rationals as `[num, den]` pairs.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use rigidkit_core::linalg::rational::{QVector, Rational};
use rigidkit_core::linalg::QMatrix;
use rigidkit_core::roots::Functional;

/// Rational read from `[num, den]` or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Pair([i64; 2]),
        }
        match Repr::deserialize(d).map_err(|_| de::Error::custom("rational must be an integer or [num, den]"))? {
            Repr::Int(n) => Ok(Q(Rational::from_integer(BigInt::from(n)))),
            Repr::Pair([_, 0]) => Err(de::Error::custom("rational with zero denominator")),
            Repr::Pair([n, d]) => Ok(Q(Rational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rat(&self.0).serialize(s)
    }
}

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn rat(x: &Rational) -> Value {
    json!([int(x.numer()), int(x.denom())])
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

pub fn functional(f: &Functional) -> Value {
    vector(f.coords())
}

/// Reads back a value written by [`rat`].
pub fn parse_rat(v: &Value) -> Option<Rational> {
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    let part = |x: &Value| -> Option<BigInt> {
        x.as_i64().map(BigInt::from).or_else(|| x.as_str().and_then(|s| s.parse().ok()))
    };
    let (n, d) = (part(&pair[0])?, part(&pair[1])?);
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn to_qvector(v: &[Q]) -> QVector {
    v.iter().map(|x| x.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rigidkit_core::linalg::rational::q;

    #[test]
    fn round_trip() {
        for x in [q(3, -6), q(0, 5), q(7, 1)] {
            assert_eq!(parse_rat(&rat(&x)), Some(x.clone()));
        }
        let big = Rational::new(BigInt::from(10).pow(30), BigInt::from(7));
        assert_eq!(parse_rat(&rat(&big)), Some(big));
        assert_eq!(rat(&q(3, -6)), json!([-1, 2]));
    }

    #[test]
    fn parse_forms() {
        let v: Vec<Q> = serde_json::from_str("[2, [1, 3], [-4, 2]]").unwrap();
        assert_eq!(to_qvector(&v), vec![q(2, 1), q(1, 3), q(-2, 1)]);
        assert!(serde_json::from_str::<Q>("[1, 0]").is_err());
        assert!(serde_json::from_str::<Q>("1.5").is_err());
    }
}
