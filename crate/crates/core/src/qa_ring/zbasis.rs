//! Rewriting symmetric Laurent polynomials in the basis `z^(2g)`, `z^2 = q - 2 + q^-1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{LaurentQ, LaurentQA};
use crate::arith::{rat, BigRat};
use crate::error::{Error, Result};

/// `sum n_{g,v} z^(2g) a^(v/2)` keyed by `(g, v)`.
///
/// When produced from `z^2 f` the entry at `g` is the coefficient of
/// `z^(2g-2)` in `f`, which is the genus-`g` invariant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZBasisTable {
    entries: BTreeMap<(u32, i64), BigRat>,
}

/// One row of the serialized table. `two_q` is `2Q`, i.e. the a-exponent in
/// half units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZBasisEntry {
    pub g: u32,
    pub two_q: i64,
    #[serde(with = "crate::table::rat_json")]
    pub n: BigRat,
}

impl ZBasisTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: u32, v: i64, n: BigRat) {
        if n.is_zero() {
            self.entries.remove(&(g, v));
        } else {
            self.entries.insert((g, v), n);
        }
    }

    pub fn get(&self, g: u32, v: i64) -> BigRat {
        self.entries.get(&(g, v)).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(u32, i64), BigRat> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|n| n.is_integer())
    }

    /// Integer values, or `None` if some entry is fractional.
    pub fn integer_entries(&self) -> Option<BTreeMap<(u32, i64), BigInt>> {
        self.entries
            .iter()
            .map(|(k, n)| n.is_integer().then(|| (*k, n.to_integer())))
            .collect()
    }

    pub fn to_records(&self) -> Vec<ZBasisEntry> {
        self.entries
            .iter()
            .map(|(&(g, two_q), n)| ZBasisEntry { g, two_q, n: n.clone() })
            .collect()
    }

    /// Expands back to `sum n z^(2g) a^(v/2)`.
    pub fn to_laurent(&self) -> LaurentQA {
        let mut powers = ZPowers::new();
        let mut out = LaurentQA::zero();
        for (&(g, v), n) in &self.entries {
            let term = powers.get(g).scale(n);
            out = out.add(&LaurentQA::from_slice(v, term));
        }
        out
    }
}

impl Serialize for ZBasisTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZBasisTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut t = ZBasisTable::new();
        for e in Vec::<ZBasisEntry>::deserialize(d)? {
            t.insert(e.g, e.two_q, e.n);
        }
        Ok(t)
    }
}

/// Cached powers of `z^2 = s^2 - 2 + s^-2`.
struct ZPowers(Vec<LaurentQ>);

impl ZPowers {
    fn new() -> Self {
        ZPowers(vec![LaurentQ::one()])
    }

    fn get(&mut self, g: u32) -> LaurentQ {
        let z2 = LaurentQ::from_terms([(2, rat(1)), (0, rat(-2)), (-2, rat(1))]);
        while self.0.len() <= g as usize {
            let next = self.0.last().expect("nonempty").mul(&z2);
            self.0.push(next);
        }
        self.0[g as usize].clone()
    }
}

/// Writes each a-slice of `f` as a polynomial in `z^2`.
///
/// Fails unless every slice has only integer q-powers and is invariant
/// under `q -> 1/q`. Extraction peels the leading power `q^k` with `z^(2k)`.
pub fn to_z_basis(f: &LaurentQA) -> Result<ZBasisTable> {
    let mut table = ZBasisTable::new();
    let mut powers = ZPowers::new();
    for (&v, p) in f.slices() {
        if p.terms().any(|(e, _)| e.rem_euclid(2) != 0) {
            return Err(Error::NotZBasis(format!(
                "a-slice {v}: half-integer q-exponent"
            )));
        }
        if p.invert_variable() != *p {
            return Err(Error::NotZBasis(format!(
                "a-slice {v}: not symmetric under q -> 1/q"
            )));
        }
        let mut rest = p.clone();
        while let Some(hi) = rest.high() {
            // symmetric and nonzero, so hi >= 0
            let g = (hi / 2) as u32;
            let c = rest.coeff(hi);
            rest = rest.sub(&powers.get(g).scale(&c));
            table.insert(g, v, c);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa_ring::{quantum_int, Var};

    fn q_terms(t: &[(i64, i64)]) -> LaurentQA {
        LaurentQA::from_terms(t.iter().map(|&(u, c)| (u, 0, rat(c))))
    }

    #[test]
    fn spec_examples() {
        let t = to_z_basis(&q_terms(&[(2, 1), (0, -2), (-2, 1)])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(1, 0), rat(1));
        let t = to_z_basis(&q_terms(&[(2, 1), (-2, 1)])).unwrap();
        assert_eq!(t.get(0, 0), rat(2));
        assert_eq!(t.get(1, 0), rat(1));
        assert!(matches!(to_z_basis(&q_terms(&[(1, 1)])), Err(Error::NotZBasis(_))));
        assert!(to_z_basis(&q_terms(&[(2, 1)])).is_err());
    }

    #[test]
    fn q2_squared() {
        let q2 = quantum_int(2, Var::Q);
        let t = to_z_basis(&q2.mul(&q2)).unwrap();
        // z^2 (z^2 + 4) = z^4 + 4 z^2
        assert_eq!(t.get(2, 0), rat(1));
        assert_eq!(t.get(1, 0), rat(4));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn a_graded_extraction() {
        let f = LaurentQA::from_terms([(0, 1, rat(3)), (2, -3, rat(1)), (-2, -3, rat(1))]);
        let t = to_z_basis(&f).unwrap();
        assert_eq!(t.get(0, 1), rat(3));
        assert_eq!(t.get(1, -3), rat(1));
        assert_eq!(t.get(0, -3), rat(2));
        assert_eq!(t.to_laurent(), f);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"[{"g":0,"two_q":-3,"n":2},{"g":0,"two_q":1,"n":3},{"g":1,"two_q":-3,"n":1}]"#
        );
    }
}
