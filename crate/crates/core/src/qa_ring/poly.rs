//! Dense univariate polynomials and Laurent polynomials over the rationals.

use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::BigRat;

/// Dense polynomial `sum c_i t^i` with exact rational coefficients.
/// The coefficient vector never has trailing zeros.
#[derive(Clone, Debug, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<BigRat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![BigRat::one()] }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigRat::from_integer(x.into())).collect())
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: BigRat, k: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRat> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Number of trailing factors of `t`, or `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(rat_add(a, b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|x| rat_mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        Self::from_coeffs(convolve(&self.coeffs, &other.coeffs))
    }

    /// Writes `self = (1/den) * sum a_i t^i` with integer `a_i`.
    pub(crate) fn to_integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        integer_parts(&self.coeffs)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if nd < dd {
            return (UPoly::zero(), self.clone());
        }
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// The polynomial scaled to integer coefficients with content one and
    /// positive leading coefficient. Keeps remainder sequences small.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let (ints, _) = self.to_integer_parts();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign_fix = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let d = content * sign_fix;
        Self::from_coeffs(
            ints.into_iter()
                .map(|c| BigRat::from_integer(c / &d))
                .collect(),
        )
    }

    /// Substitutes `t -> t^d`.
    pub fn inflate(&self, d: usize) -> UPoly {
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRat::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * d] = c.clone();
        }
        UPoly { coeffs }
    }

    /// Removes the factor `t^v` where `v` is the valuation.
    pub fn strip_low(&self) -> (usize, UPoly) {
        match self.valuation() {
            None => (0, UPoly::zero()),
            Some(0) => (0, self.clone()),
            Some(v) => (
                v,
                UPoly {
                    coeffs: self.coeffs[v..].to_vec(),
                },
            ),
        }
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }
}

/// Laurent polynomial `sum c_i s^(low + i)` in one variable.
///
/// Throughout the crate the variable is `s = q^(1/2)`, so exponents count
/// half-powers of `q`. Invariant: `coeffs` is empty or has nonzero first and
/// last entries.
#[derive(Clone, Debug, Eq, Default)]
pub struct LaurentQ {
    low: i64,
    coeffs: Vec<BigRat>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRat::one(), 0)
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    /// `c s^e`.
    pub fn monomial(c: BigRat, e: i64) -> Self {
        Self::from_parts(e, vec![c])
    }

    /// Builds `sum coeffs[i] s^(low+i)` and normalizes.
    pub fn from_parts(low: i64, coeffs: Vec<BigRat>) -> Self {
        let (v, p) = UPoly::from_coeffs(coeffs).strip_low();
        if p.is_zero() {
            return Self::zero();
        }
        LaurentQ {
            low: low + v as i64,
            coeffs: p.into_coeffs(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRat)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigRat)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().expect("nonempty");
        let mut coeffs = vec![BigRat::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_parts(lo, coeffs)
    }

    pub fn from_upoly(p: &UPoly, low: i64) -> Self {
        Self::from_parts(low, p.coeffs().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (0 for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present, `None` for zero.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, e: i64) -> BigRat {
        if e < self.low {
            return BigRat::zero();
        }
        self.coeffs
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// The polynomial part after dividing out `s^low`.
    pub fn body(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn add(&self, other: &LaurentQ) -> LaurentQ {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(other.low);
        let hi = self.high().unwrap().max(other.high().unwrap());
        let mut coeffs = vec![BigRat::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            add_assign(&mut coeffs[(self.low - lo) as usize + i], c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            add_assign(&mut coeffs[(other.low - lo) as usize + i], c);
        }
        Self::from_parts(lo, coeffs)
    }

    pub fn neg(&self) -> LaurentQ {
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentQ) -> LaurentQ {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> LaurentQ {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQ {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| rat_mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentQ) -> LaurentQ {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.low + other.low, convolve(&self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, n: u32) -> LaurentQ {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `s^e`.
    pub fn shift(&self, e: i64) -> LaurentQ {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentQ {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `s -> s^d` for `d >= 1`.
    pub fn inflate(&self, d: u32) -> LaurentQ {
        if self.is_zero() {
            return Self::zero();
        }
        let d = d as usize;
        LaurentQ {
            low: self.low * d as i64,
            coeffs: self.body().inflate(d).into_coeffs(),
        }
    }

    /// Substitutes `s -> 1/s`.
    pub fn invert_variable(&self) -> LaurentQ {
        let Some(hi) = self.high() else {
            return Self::zero();
        };
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentQ { low: -hi, coeffs }
    }

    /// Substitutes `s -> -s`.
    pub fn negate_variable(&self) -> LaurentQ {
        Self::from_terms(self.terms().map(|(e, c)| {
            let c = if e.rem_euclid(2) == 1 { -c } else { c.clone() };
            (e, c)
        }))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Exact division in `Q[s, 1/s]`; returns the quotient and the remainder
    /// of the underlying polynomial division (zero iff divisible).
    pub fn div_rem_exact(&self, divisor: &LaurentQ) -> (LaurentQ, LaurentQ) {
        assert!(!divisor.is_zero(), "division by zero");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        // Both bodies have nonzero constant term, and s is a unit, so
        // divisibility in the Laurent ring equals polynomial divisibility.
        let (q, r) = self.body().div_rem(&divisor.body());
        (
            Self::from_upoly(&q, self.low - divisor.low),
            Self::from_upoly(&r, self.low),
        )
    }
}

/// `(a_i, den)` with `coeffs[i] = a_i / den`.
fn integer_parts(coeffs: &[BigRat]) -> (Vec<BigInt>, BigInt) {
    if coeffs.iter().all(|c| c.denom().is_one()) {
        return (coeffs.iter().map(|c| c.numer().clone()).collect(), BigInt::one());
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

/// Product of two dense coefficient vectors. Works over a common integer
/// denominator: rational products with per-term gcd reduction dominate the
/// cost otherwise.
fn convolve(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, da) = integer_parts(a);
    let (b, db) = integer_parts(b);
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    let den = da * db;
    if den.is_one() {
        out.into_iter().map(BigRat::from_integer).collect()
    } else {
        out.into_iter().map(|n| BigRat::new(n, den.clone())).collect()
    }
}

/// Coefficients are kept in lowest terms, so equality can compare numerators
/// and denominators directly instead of going through `Ratio::cmp`.
fn same_coeffs(a: &[BigRat], b: &[BigRat]) -> bool {
    a.len() == b.len()
        && a
            .iter()
            .zip(b)
            .all(|(x, y)| x.numer() == y.numer() && x.denom() == y.denom())
}

impl PartialEq for UPoly {
    fn eq(&self, other: &Self) -> bool {
        same_coeffs(&self.coeffs, &other.coeffs)
    }
}

impl PartialEq for LaurentQ {
    fn eq(&self, other: &Self) -> bool {
        self.low == other.low && same_coeffs(&self.coeffs, &other.coeffs)
    }
}

impl Hash for UPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Hash for LaurentQ {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.low.hash(state);
        self.coeffs.hash(state);
    }
}

// Integer fast paths: `Ratio` arithmetic always reduces by a gcd, which
// dominates the cost when every coefficient is an integer.

fn rat_add(a: &BigRat, b: &BigRat) -> BigRat {
    if a.denom().is_one() && b.denom().is_one() {
        BigRat::new_raw(a.numer() + b.numer(), BigInt::one())
    } else {
        a + b
    }
}

fn add_assign(a: &mut BigRat, b: &BigRat) {
    *a = rat_add(a, b);
}

fn rat_mul(a: &BigRat, b: &BigRat) -> BigRat {
    if a.denom().is_one() && b.denom().is_one() {
        BigRat::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn poly_division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UPoly::from_ints(&[-1, 1]); // t - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let c = UPoly::from_ints(&[1, 2, 1]); // (t+1)^2
        assert_eq!(a.gcd(&c), UPoly::from_ints(&[1, 1]));
        assert_eq!(a.gcd(&UPoly::from_ints(&[2])), UPoly::one());
    }

    #[test]
    fn laurent_basics() {
        let z = LaurentQ::from_terms([(1, rat(1)), (-1, rat(-1))]); // s - 1/s
        let z2 = z.mul(&z);
        assert_eq!(z2, LaurentQ::from_terms([(2, rat(1)), (0, rat(-2)), (-2, rat(1))]));
        assert_eq!(z.invert_variable(), z.neg());
        assert_eq!(z.inflate(2), LaurentQ::from_terms([(2, rat(1)), (-2, rat(-1))]));
        let (q, r) = z.inflate(2).div_rem_exact(&z);
        assert!(r.is_zero());
        assert_eq!(q, LaurentQ::from_terms([(1, rat(1)), (-1, rat(1))]));
    }
}
