//! JSON encodings for big integers and rationals.
//!
//! Integers that fit in `i64` are written as JSON numbers, larger ones as
//! decimal strings. Rationals are written as integers when integral and as
//! `"p/q"` strings otherwise. Both forms are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

pub fn int_to_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

pub fn rat_to_value(c: &BigRational) -> Value {
    if c.denom().is_one() {
        int_to_value(c.numer())
    } else {
        Value::from(format!("{}/{}", c.numer(), c.denom()))
    }
}

pub fn value_to_int(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected integer, found {other}")),
    }
}

pub fn value_to_rat(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))?;
            let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        other => value_to_int(other).map(BigRational::from_integer),
    }
}

/// Parses a plain decimal literal such as `-12.0625` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(n, d);
    Some(if neg { -q } else { q })
}

pub fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&int_to_value(c))?;
    }
    seq.end()
}

pub fn deserialize_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let vals = Vec::<Value>::deserialize(d)?;
    vals.iter()
        .map(|v| value_to_int(v).map_err(D::Error::custom))
        .collect()
}

pub fn serialize_rats<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&rat_to_value(c))?;
    }
    seq.end()
}

pub fn deserialize_rats<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
    let vals = Vec::<Value>::deserialize(d)?;
    vals.iter()
        .map(|v| value_to_rat(v).map_err(D::Error::custom))
        .collect()
}

/// `serde(with = ...)` adapter for a single `BigInt` field.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&int_to_value(v), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        value_to_int(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// `serde(with = ...)` adapter for `Vec<BigInt>`.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        serialize_ints(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        deserialize_ints(d)
    }
}

/// `serde(with = ...)` adapter for a single `BigRational` field.
pub mod bigrational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&rat_to_value(v), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        value_to_rat(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}
