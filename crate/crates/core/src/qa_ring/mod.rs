//! Exact algebra in `q^(1/2)` and `a^(1/2)`.
//!
//! Exponents are stored as integers counting half-units: the monomial
//! `q^(u/2) a^(v/2)` has key `(u, v)`. A [`LaurentQA`] is kept a-graded, as a
//! map from `v` to a univariate Laurent polynomial in `s = q^(1/2)`.

mod poly;
mod rational;
mod zbasis;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, BigRat};
use crate::error::{Error, Result};
use crate::partition::Partition;

pub use poly::{LaurentQ, UPoly};
pub use rational::{RationalQ, RationalQA};
pub use zbasis::{to_z_basis, ZBasisEntry, ZBasisTable};

/// Ring operations needed by truncated series and the Möbius/Adams machinery.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRat) -> Self;
    /// The Adams operation `q -> q^d, a -> a^d`.
    fn adams(&self, d: u32) -> Self;
    /// `Some(c)` when the element is the constant `c`.
    fn as_constant(&self) -> Option<BigRat>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_rat(c: BigRat) -> Self {
        Self::one().scale(&c)
    }
}

/// Selects which variable a quantum integer is built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    A,
}

/// Exact Laurent polynomial in `q^(1/2)` and `a^(1/2)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentQA {
    /// `v -> coefficient of a^(v/2)`; never holds a zero slice.
    slices: BTreeMap<i64, LaurentQ>,
}

impl LaurentQA {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_q(LaurentQ::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_q(LaurentQ::constant(c))
    }

    /// `c q^(u/2) a^(v/2)`.
    pub fn monomial(c: BigRat, u: i64, v: i64) -> Self {
        Self::from_slice(v, LaurentQ::monomial(c, u))
    }

    /// An a-free element.
    pub fn from_q(p: LaurentQ) -> Self {
        Self::from_slice(0, p)
    }

    /// `p(q) a^(v/2)`.
    pub fn from_slice(v: i64, p: LaurentQ) -> Self {
        let mut slices = BTreeMap::new();
        if !p.is_zero() {
            slices.insert(v, p);
        }
        LaurentQA { slices }
    }

    /// Sums `c q^(u/2) a^(v/2)` over the given `(u, v, c)` triples.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, BigRat)>>(terms: I) -> Self {
        let mut grouped: BTreeMap<i64, Vec<(i64, BigRat)>> = BTreeMap::new();
        for (u, v, c) in terms {
            grouped.entry(v).or_default().push((u, c));
        }
        let slices = grouped
            .into_iter()
            .map(|(v, t)| (v, LaurentQ::from_terms(t)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        LaurentQA { slices }
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slices(&self) -> &BTreeMap<i64, LaurentQ> {
        &self.slices
    }

    pub fn slice(&self, v: i64) -> LaurentQ {
        self.slices.get(&v).cloned().unwrap_or_else(LaurentQ::zero)
    }

    /// Coefficient of `q^(u/2) a^(v/2)`.
    pub fn coeff(&self, u: i64, v: i64) -> BigRat {
        self.slices
            .get(&v)
            .map(|p| p.coeff(u))
            .unwrap_or_else(BigRat::zero)
    }

    /// Nonzero terms as `(u, v, coefficient)`, sorted by `v` then `u`.
    pub fn terms(&self) -> Vec<(i64, i64, BigRat)> {
        self.slices
            .iter()
            .flat_map(|(&v, p)| p.terms().map(move |(u, c)| (u, v, c.clone())))
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.slices.values().map(LaurentQ::num_terms).sum()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.slices.values().all(LaurentQ::is_integral)
    }

    pub fn min_v(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    pub fn max_v(&self) -> Option<i64> {
        self.slices.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentQA) -> LaurentQA {
        let mut slices = self.slices.clone();
        for (v, p) in &other.slices {
            let sum = match slices.get(v) {
                Some(x) => x.add(p),
                None => p.clone(),
            };
            if sum.is_zero() {
                slices.remove(v);
            } else {
                slices.insert(*v, sum);
            }
        }
        LaurentQA { slices }
    }

    pub fn neg(&self) -> LaurentQA {
        LaurentQA {
            slices: self.slices.iter().map(|(v, p)| (*v, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentQA) -> LaurentQA {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> LaurentQA {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQA {
            slices: self.slices.iter().map(|(v, p)| (*v, p.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentQA) -> LaurentQA {
        let mut out: BTreeMap<i64, LaurentQ> = BTreeMap::new();
        for (v1, p1) in &self.slices {
            for (v2, p2) in &other.slices {
                let prod = p1.mul(p2);
                let e = out.entry(v1 + v2).or_insert_with(LaurentQ::zero);
                *e = e.add(&prod);
            }
        }
        out.retain(|_, p| !p.is_zero());
        LaurentQA { slices: out }
    }

    /// Multiplies by an a-free factor.
    pub fn mul_q(&self, p: &LaurentQ) -> LaurentQA {
        LaurentQA {
            slices: self
                .slices
                .iter()
                .map(|(v, x)| (*v, x.mul(p)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Multiplies by `q^(u/2) a^(v/2)`.
    pub fn shift(&self, u: i64, v: i64) -> LaurentQA {
        LaurentQA {
            slices: self
                .slices
                .iter()
                .map(|(w, p)| (w + v, p.shift(u)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentQA {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Adams operation `q -> q^d, a -> a^d`.
    pub fn adams(&self, d: u32) -> LaurentQA {
        assert!(d >= 1, "Adams operation needs d >= 1");
        LaurentQA {
            slices: self
                .slices
                .iter()
                .map(|(v, p)| (v * i64::from(d), p.inflate(d)))
                .collect(),
        }
    }

    /// Substitutes `q -> 1/q`.
    pub fn invert_q(&self) -> LaurentQA {
        LaurentQA {
            slices: self
                .slices
                .iter()
                .map(|(v, p)| (*v, p.invert_variable()))
                .collect(),
        }
    }

    /// Substitutes `a -> 1/a`.
    pub fn invert_a(&self) -> LaurentQA {
        LaurentQA {
            slices: self.slices.iter().map(|(v, p)| (-v, p.clone())).collect(),
        }
    }

    /// `Some(p)` when the element does not involve `a`.
    pub fn as_q(&self) -> Option<LaurentQ> {
        match self.slices.len() {
            0 => Some(LaurentQ::zero()),
            1 => self.slices.get(&0).cloned(),
            _ => None,
        }
    }

    /// Exact division `self / divisor`, failing with the remainder when the
    /// divisor does not divide.
    pub fn exact_div(&self, divisor: &LaurentQA) -> Result<LaurentQA> {
        exact_div(self, divisor)
    }
}

impl fmt::Display for LaurentQA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (u, v, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if u != 0 {
                write!(f, "*q^({u}/2)")?;
            }
            if v != 0 {
                write!(f, "*a^({v}/2)")?;
            }
        }
        Ok(())
    }
}

impl Coeff for LaurentQA {
    fn zero() -> Self {
        LaurentQA::zero()
    }
    fn one() -> Self {
        LaurentQA::one()
    }
    fn is_zero(&self) -> bool {
        LaurentQA::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentQA::add(self, other)
    }
    fn neg(&self) -> Self {
        LaurentQA::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentQA::mul(self, other)
    }
    fn scale(&self, c: &BigRat) -> Self {
        LaurentQA::scale(self, c)
    }
    fn adams(&self, d: u32) -> Self {
        LaurentQA::adams(self, d)
    }
    fn as_constant(&self) -> Option<BigRat> {
        match self.as_q() {
            Some(p) if p.is_zero() => Some(BigRat::zero()),
            Some(p) if p.low() == 0 && p.high() == Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }
}

/// One record of the JSON encoding of a [`LaurentQA`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub u: i64,
    pub v: i64,
    #[serde(with = "crate::table::bigint_json")]
    pub num: BigInt,
    #[serde(with = "crate::table::bigint_json")]
    pub den: BigInt,
}

impl Serialize for LaurentQA {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<LaurentTerm> = self
            .terms()
            .into_iter()
            .map(|(u, v, c)| LaurentTerm {
                u,
                v,
                num: c.numer().clone(),
                den: c.denom().clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentQA {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<LaurentTerm>::deserialize(d)?;
        if terms.iter().any(|t| t.den.is_zero()) {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(LaurentQA::from_terms(
            terms.into_iter().map(|t| (t.u, t.v, BigRat::new(t.num, t.den))),
        ))
    }
}

/// Univariate quantum integer `{n}_x = x^(n/2) - x^(-n/2)` in `q`, as a Laurent polynomial.
pub fn qint(n: i64) -> LaurentQ {
    if n == 0 {
        return LaurentQ::zero();
    }
    LaurentQ::from_terms([(n, rat(1)), (-n, rat(-1))])
}

/// Quantum integer `{n}_x` in the selected variable.
pub fn quantum_int(n: i64, var: Var) -> LaurentQA {
    match var {
        Var::Q => LaurentQA::from_q(qint(n)),
        Var::A => LaurentQA::from_terms([(0, n, rat(1)), (0, -n, rat(-1))]),
    }
}

/// `{mu}_x = prod_i {mu_i}_x`; the empty product is one.
pub fn quantum_prod(mu: &Partition, var: Var) -> LaurentQA {
    mu.parts()
        .iter()
        .fold(LaurentQA::one(), |acc, &p| acc.mul(&quantum_int(i64::from(p), var)))
}

/// The ratio `{a}/{b}` in `q` when `b` divides `a` (and `b != 0`):
/// `sum_{j<k} q^(b(k-1-2j)/2)` with `k = a/b`.
pub fn qint_ratio(a: i64, b: i64) -> LaurentQ {
    assert!(b != 0 && a % b == 0, "qint_ratio needs b | a");
    let k = a / b;
    if k == 0 {
        return LaurentQ::zero();
    }
    let (k, sgn) = if k < 0 { (-k, -1) } else { (k, 1) };
    LaurentQ::from_terms((0..k).map(|j| (b * (k - 1 - 2 * j), rat(sgn))))
}

/// The a-free cyclotomic-style factor `z = {1} = q^(1/2) - q^(-1/2)`.
pub fn z() -> LaurentQ {
    qint(1)
}

/// Exact division in `Q[q^(±1/2), a^(±1/2)]`.
///
/// The dividend is reduced slice by slice from the top a-degree; each step
/// needs an exact univariate division by the divisor's top a-slice. Since the
/// ring is a domain the procedure succeeds exactly when the divisor divides.
pub fn exact_div(f: &LaurentQA, g: &LaurentQA) -> Result<LaurentQA> {
    let (Some(g_lo), Some(g_hi)) = (g.min_v(), g.max_v()) else {
        return Err(Error::Domain("exact_div: division by zero".into()));
    };
    if f.is_zero() {
        return Ok(LaurentQA::zero());
    }
    if g_lo == g_hi {
        // Single a-slice: divide every slice independently, collecting remainders.
        let lead = &g.slices[&g_hi];
        let mut quo = BTreeMap::new();
        let mut rem = BTreeMap::new();
        for (v, p) in &f.slices {
            let (q, r) = p.div_rem_exact(lead);
            if !r.is_zero() {
                rem.insert(*v, r);
            }
            if !q.is_zero() {
                quo.insert(v - g_hi, q);
            }
        }
        if !rem.is_empty() {
            return Err(Error::NotDivisible {
                remainder: LaurentQA { slices: rem },
            });
        }
        return Ok(LaurentQA { slices: quo });
    }
    let lead = &g.slices[&g_hi];
    let f_lo = f.min_v().expect("nonzero");
    let mut rest = f.clone();
    let mut quo = LaurentQA::zero();
    while let Some(top) = rest.max_v() {
        let shift = top - g_hi;
        // Any quotient term below f_lo - g_lo would leave a nonzero lowest slice.
        if shift < f_lo - g_lo {
            return Err(Error::NotDivisible { remainder: rest });
        }
        let (q, r) = rest.slices[&top].div_rem_exact(lead);
        if !r.is_zero() {
            return Err(Error::NotDivisible { remainder: rest });
        }
        let term = LaurentQA::from_slice(shift, q);
        rest = rest.sub(&g.mul(&term));
        quo = quo.add(&term);
    }
    Ok(quo)
}
