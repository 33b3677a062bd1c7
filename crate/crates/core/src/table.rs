//! Invariant tables and JSON helpers shared by the command-line front end.
//!
//! Big integers are written as bare JSON numbers of arbitrary length, so
//! consumers must parse them without going through `f64`. Rationals that
//! happen to be integers are written the same way; proper fractions are
//! written as strings `"p/q"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::BigRat;

/// Which formula produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Disc,
    Annulus,
    MultiHole,
    OneHole,
    GeneralOneHole,
    OoguriVafa,
    Dt,
    Twist,
}

/// Finite map from integer keys to exact values, tagged with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable<K: Ord> {
    pub formula: Formula,
    pub tau: Option<i64>,
    pub values: BTreeMap<K, BigRat>,
}

impl<K: Ord + Clone> InvariantTable<K> {
    pub fn new(formula: Formula, tau: Option<i64>) -> Self {
        InvariantTable {
            formula,
            tau,
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, key: K, value: BigRat) {
        self.values.insert(key, value);
    }

    /// The integrality certificate: true only when every value is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }

    /// Keys whose value is not an integer.
    pub fn non_integral_keys(&self) -> Vec<K> {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_integer())
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Converts a big integer to an exact JSON number.
pub fn bigint_number(n: &BigInt) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers")
}

/// Converts a rational to a JSON number when integral, else to `"p/q"`.
pub fn rat_value(r: &BigRat) -> serde_json::Value {
    if r.is_integer() {
        serde_json::Value::Number(bigint_number(&r.to_integer()))
    } else {
        serde_json::Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Decimal or `p/q` text form of a rational.
pub fn rat_string(r: &BigRat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRat::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRat::from_integer(s.trim().parse().ok()?)),
    }
}

/// Serde adapter writing a [`BigInt`] as an exact JSON number.
pub mod bigint_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        bigint_number(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = serde_json::Number::deserialize(d)?;
        v.to_string().parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a [`BigRat`] as a number or a `"p/q"` string.
pub mod rat_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRat, s: S) -> Result<S::Ok, S::Error> {
        rat_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
        let text = match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => return Err(serde::de::Error::custom(format!("expected rational, got {other}"))),
        };
        parse_rat(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn json_numbers_are_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = serde_json::Value::Number(bigint_number(&big));
        assert_eq!(v.to_string(), "123456789012345678901234567890");
        assert_eq!(rat_value(&rat_frac(-3, 6)).to_string(), "\"-1/2\"");
        assert_eq!(parse_rat("-1/2"), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn certificate() {
        let mut t = InvariantTable::new(Formula::Disc, Some(1));
        t.insert((1u32, 0u32), rat(1));
        assert!(t.is_integral());
        t.insert((2, 2), rat_frac(1, 4));
        assert!(!t.is_integral());
        assert_eq!(t.non_integral_keys(), vec![(2, 2)]);
    }
}
