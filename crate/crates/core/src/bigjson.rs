//! JSON helpers for arbitrary-precision integers.
//!
//! Coefficient vectors are written as plain JSON numbers (the `serde_json`
//! `arbitrary_precision` feature keeps every digit); report scalars are
//! written as decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn to_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("decimal integer is a JSON number")
}

fn from_value<E: serde::de::Error>(v: &serde_json::Value) -> Result<BigInt, E> {
    match v {
        serde_json::Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("{n} is not an integer")))
        }
        serde_json::Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| E::custom(format!("{s:?} is not an integer")))
        }
        other => Err(E::custom(format!("expected an integer, found {other}"))),
    }
}

pub mod vec_number {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter().map(from_value::<D::Error>).collect()
    }
}

pub mod string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        from_value(&raw)
    }
}

pub mod opt_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let raw = Option::<serde_json::Value>::deserialize(d)?;
        match raw {
            None | Some(serde_json::Value::Null) => Ok(None),
            Some(v) => from_value(&v).map(Some),
        }
    }
}

/// Parses a decimal integer, accepting surrounding whitespace.
pub fn parse_int(s: &str) -> Result<BigInt, crate::Error> {
    BigInt::from_str(s.trim()).map_err(|_| crate::Error::Parse(format!("{s:?} is not an integer")))
}
