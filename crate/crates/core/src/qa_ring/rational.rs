//! Univariate rational functions in `s = q^(1/2)` and their a-graded extension.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Coeff, LaurentQ, LaurentQA, UPoly};
use crate::arith::BigRat;
use crate::error::{Error, Result};

/// Exact rational function `num / den` in `s = q^(1/2)`.
///
/// Canonical form: `den` is monic with nonzero constant term (all powers of
/// `s` live in the Laurent numerator) and `gcd(num, den) = 1`. Equal
/// functions therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalQ {
    num: LaurentQ,
    den: UPoly,
}

impl Default for RationalQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalQ {
    pub fn zero() -> Self {
        RationalQ {
            num: LaurentQ::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentQ::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_laurent(LaurentQ::constant(c))
    }

    pub fn from_laurent(num: LaurentQ) -> Self {
        RationalQ {
            num,
            den: UPoly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn new(num: LaurentQ, den: LaurentQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        let body = den.body();
        let lead = body.leading().expect("nonzero").clone();
        let num = num.shift(-den.low()).scale(&lead.recip());
        Ok(Self::reduce(num, body.monic()))
    }

    /// `num / den` for a polynomial denominator with nonzero constant term.
    fn reduce(num: LaurentQ, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let den = den.monic();
        if den.is_one() {
            return Self::from_laurent(num);
        }
        let g = num.body().gcd(&den);
        if g.is_one() {
            return RationalQ { num, den };
        }
        RationalQ {
            num: div_body(&num, &g),
            den: div_poly(&den, &g),
        }
    }

    pub fn numer(&self) -> &LaurentQ {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the function is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<&LaurentQ> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, other: &RationalQ) -> RationalQ {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.add(&other.num));
        }
        // Henrici: only the common factor g can cancel against the new numerator.
        let g = self.den.gcd(&other.den);
        let b1 = div_poly(&self.den, &g);
        let d1 = div_poly(&other.den, &g);
        let t = self.num.mul(&from_poly(&d1)).add(&other.num.mul(&from_poly(&b1)));
        if t.is_zero() {
            return Self::zero();
        }
        let h = t.body().gcd(&g);
        let g_h = div_poly(&g, &h);
        RationalQ {
            num: div_body(&t, &h),
            den: b1.mul(&d1).mul(&g_h),
        }
    }

    pub fn neg(&self) -> RationalQ {
        RationalQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalQ) -> RationalQ {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> RationalQ {
        if c.is_zero() {
            return Self::zero();
        }
        RationalQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalQ) -> RationalQ {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.body().gcd(&other.den);
        let g2 = other.num.body().gcd(&self.den);
        RationalQ {
            num: div_body(&self.num, &g1).mul(&div_body(&other.num, &g2)),
            den: div_poly(&self.den, &g2).mul(&div_poly(&other.den, &g1)),
        }
    }

    pub fn mul_laurent(&self, p: &LaurentQ) -> RationalQ {
        self.mul(&Self::from_laurent(p.clone()))
    }

    pub fn inv(&self) -> Result<RationalQ> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Self::new(LaurentQ::from_upoly(&self.den, 0), self.num.clone())
    }

    pub fn div(&self, other: &RationalQ) -> Result<RationalQ> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> RationalQ {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Substitutes `q -> q^d`.
    pub fn adams(&self, d: u32) -> RationalQ {
        // Inflation preserves coprimality, monicity and the nonzero constant term.
        RationalQ {
            num: self.num.inflate(d),
            den: self.den.inflate(d as usize),
        }
    }

    /// Multiplies by `s^e`.
    pub fn shift(&self, e: i64) -> RationalQ {
        RationalQ {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    /// Substitutes `q -> 1/q`.
    pub fn invert_q(&self) -> RationalQ {
        let den = LaurentQ::from_upoly(&self.den, 0).invert_variable();
        Self::new(self.num.invert_variable(), den).expect("nonzero denominator")
    }

    /// Substitutes `s -> -s`, i.e. `q^(1/2) -> -q^(1/2)`.
    pub fn negate_s(&self) -> RationalQ {
        let den = LaurentQ::from_upoly(&self.den, 0).negate_variable();
        Self::new(self.num.negate_variable(), den).expect("nonzero denominator")
    }

    /// Multiplies by `(1 - q)`.
    pub fn times_one_minus_q(&self) -> RationalQ {
        self.mul_laurent(&LaurentQ::from_terms([(0, BigRat::one()), (2, -BigRat::one())]))
    }
}

fn from_poly(p: &UPoly) -> LaurentQ {
    LaurentQ::from_upoly(p, 0)
}

fn div_poly(a: &UPoly, b: &UPoly) -> UPoly {
    if b.is_one() {
        return a.clone();
    }
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact polynomial division");
    q
}

fn div_body(a: &LaurentQ, b: &UPoly) -> LaurentQ {
    if b.is_one() {
        return a.clone();
    }
    LaurentQ::from_upoly(&div_poly(&a.body(), b), a.low())
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = LaurentQA::from_q(self.num.clone());
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let den = LaurentQA::from_q(from_poly(&self.den));
        write!(f, "({num}) / ({den})")
    }
}

impl Coeff for RationalQ {
    fn zero() -> Self {
        RationalQ::zero()
    }
    fn one() -> Self {
        RationalQ::one()
    }
    fn is_zero(&self) -> bool {
        RationalQ::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalQ::add(self, other)
    }
    fn neg(&self) -> Self {
        RationalQ::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalQ::mul(self, other)
    }
    fn scale(&self, c: &BigRat) -> Self {
        RationalQ::scale(self, c)
    }
    fn adams(&self, d: u32) -> Self {
        RationalQ::adams(self, d)
    }
    fn as_constant(&self) -> Option<BigRat> {
        let p = self.as_laurent()?;
        if p.is_zero() {
            Some(BigRat::zero())
        } else if p.low() == 0 && p.high() == Some(0) {
            Some(p.coeff(0))
        } else {
            None
        }
    }
}

/// A finite sum `sum_v R_v(q) a^(v/2)` with `R_v` rational in `q^(1/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalQA {
    slices: BTreeMap<i64, RationalQ>,
}

impl RationalQA {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_q(RationalQ::one())
    }

    pub fn from_q(r: RationalQ) -> Self {
        Self::from_slice(0, r)
    }

    pub fn from_slice(v: i64, r: RationalQ) -> Self {
        let mut slices = BTreeMap::new();
        if !r.is_zero() {
            slices.insert(v, r);
        }
        RationalQA { slices }
    }

    pub fn from_laurent(f: &LaurentQA) -> Self {
        RationalQA {
            slices: f
                .slices()
                .iter()
                .map(|(v, p)| (*v, RationalQ::from_laurent(p.clone())))
                .collect(),
        }
    }

    pub fn slices(&self) -> &BTreeMap<i64, RationalQ> {
        &self.slices
    }

    pub fn slice(&self, v: i64) -> RationalQ {
        self.slices.get(&v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn min_v(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    pub fn max_v(&self) -> Option<i64> {
        self.slices.keys().next_back().copied()
    }

    /// `Some` when every slice is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<LaurentQA> {
        let mut out = LaurentQA::zero();
        for (v, r) in &self.slices {
            out = out.add(&LaurentQA::from_slice(*v, r.as_laurent()?.clone()));
        }
        Some(out)
    }

    pub fn add(&self, other: &RationalQA) -> RationalQA {
        let mut slices = self.slices.clone();
        for (v, r) in &other.slices {
            let sum = match slices.get(v) {
                Some(x) => x.add(r),
                None => r.clone(),
            };
            if sum.is_zero() {
                slices.remove(v);
            } else {
                slices.insert(*v, sum);
            }
        }
        RationalQA { slices }
    }

    pub fn neg(&self) -> RationalQA {
        RationalQA {
            slices: self.slices.iter().map(|(v, r)| (*v, r.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &RationalQA) -> RationalQA {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> RationalQA {
        if c.is_zero() {
            return Self::zero();
        }
        RationalQA {
            slices: self.slices.iter().map(|(v, r)| (*v, r.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &RationalQA) -> RationalQA {
        let mut out: BTreeMap<i64, RationalQ> = BTreeMap::new();
        for (v1, r1) in &self.slices {
            for (v2, r2) in &other.slices {
                let e = out.entry(v1 + v2).or_default();
                *e = e.add(&r1.mul(r2));
            }
        }
        out.retain(|_, r| !r.is_zero());
        RationalQA { slices: out }
    }

    /// Multiplies every slice by an a-free factor.
    pub fn mul_q(&self, r: &RationalQ) -> RationalQA {
        RationalQA {
            slices: self
                .slices
                .iter()
                .map(|(v, x)| (*v, x.mul(r)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn mul_laurent(&self, f: &LaurentQA) -> RationalQA {
        self.mul(&Self::from_laurent(f))
    }

    pub fn adams(&self, d: u32) -> RationalQA {
        RationalQA {
            slices: self
                .slices
                .iter()
                .map(|(v, r)| (v * i64::from(d), r.adams(d)))
                .collect(),
        }
    }

    pub fn invert_q(&self) -> RationalQA {
        RationalQA {
            slices: self.slices.iter().map(|(v, r)| (*v, r.invert_q())).collect(),
        }
    }
}

impl fmt::Display for RationalQA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (v, r)) in self.slices.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{r}]*a^({v}/2)")?;
        }
        Ok(())
    }
}

impl Coeff for RationalQA {
    fn zero() -> Self {
        RationalQA::zero()
    }
    fn one() -> Self {
        RationalQA::one()
    }
    fn is_zero(&self) -> bool {
        RationalQA::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalQA::add(self, other)
    }
    fn neg(&self) -> Self {
        RationalQA::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalQA::mul(self, other)
    }
    fn scale(&self, c: &BigRat) -> Self {
        RationalQA::scale(self, c)
    }
    fn adams(&self, d: u32) -> Self {
        RationalQA::adams(self, d)
    }
    fn as_constant(&self) -> Option<BigRat> {
        match self.slices.len() {
            0 => Some(BigRat::zero()),
            1 => self.slices.get(&0).and_then(Coeff::as_constant),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn lq(t: &[(i64, i64)]) -> LaurentQ {
        LaurentQ::from_terms(t.iter().map(|&(e, c)| (e, rat(c))))
    }

    /// `1 - q^k` in s-units.
    fn one_minus_q(k: i64) -> LaurentQ {
        lq(&[(0, 1), (2 * k, -1)])
    }

    #[test]
    fn canonical_form() {
        let r = RationalQ::new(one_minus_q(2), one_minus_q(1)).unwrap();
        assert_eq!(r.as_laurent(), Some(&lq(&[(0, 1), (2, 1)])));
        let a = RationalQ::new(LaurentQ::one(), one_minus_q(1)).unwrap();
        let b = RationalQ::new(lq(&[(0, 1), (2, 1)]), one_minus_q(2)).unwrap();
        assert_eq!(a, b);
        // denominators with s-powers are moved into the numerator
        let c = RationalQ::new(LaurentQ::one(), lq(&[(3, 2)])).unwrap();
        assert_eq!(c.as_laurent(), Some(&LaurentQ::monomial(BigRat::new(1.into(), 2.into()), -3)));
        assert!(RationalQ::new(LaurentQ::one(), LaurentQ::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RationalQ::new(lq(&[(1, 1)]), one_minus_q(1)).unwrap();
        let b = RationalQ::new(lq(&[(0, 3), (4, -1)]), one_minus_q(3)).unwrap();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&a.inv().unwrap()), RationalQ::one());
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        let sum = a.add(&b);
        assert_eq!(sum.mul(&a), a.mul(&a).add(&b.mul(&a)));
    }

    #[test]
    fn adams_on_rational() {
        let a = RationalQ::new(LaurentQ::one(), one_minus_q(1)).unwrap();
        let b = RationalQ::new(LaurentQ::one(), one_minus_q(2)).unwrap();
        assert_eq!(a.adams(2), b);
        assert_eq!(a.adams(1), a);
    }

    #[test]
    fn graded_products() {
        let x = RationalQA::from_slice(1, RationalQ::new(LaurentQ::one(), one_minus_q(1)).unwrap());
        let y = RationalQA::from_slice(-1, RationalQ::from_laurent(one_minus_q(1)));
        assert_eq!(x.mul(&y), RationalQA::one());
        assert_eq!(x.adams(3).max_v(), Some(3));
        assert!(x.as_laurent().is_none());
        assert!(y.as_laurent().is_some());
    }
}
