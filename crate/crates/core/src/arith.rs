//! Number-theoretic and combinatorial primitives.
//!
//! Everything here is exact: integers are arbitrary precision and rationals
//! are kept in lowest terms with a positive denominator (guaranteed by
//! [`num_rational::BigRational`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qa_ring::UPoly;

/// Exact rational number.
pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` for any integer exponent.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Returns the integer value of `r` if it has denominator one.
pub fn as_integer(r: &BigRat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// The Möbius function.
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("moebius: n must be positive".into()));
    }
    let mut n = n;
    let mut value = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            value = -value;
        }
        p += 1;
    }
    if n > 1 {
        value = -value;
    }
    Ok(value)
}

/// Möbius function for arguments already known to be positive.
pub(crate) fn mu(n: u64) -> i64 {
    moebius(n).expect("positive argument")
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Domain("divisors: n must be positive".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub(crate) fn divs(n: u64) -> Vec<u64> {
    divisors(n).expect("positive argument")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient with arbitrary integer upper index.
///
/// Uses the falling-factorial product `n(n-1)...(n-k+1)/k!`, which for
/// negative `n` equals `(-1)^k binomial(-n+k-1, k)`.
pub fn binomial_ext(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Gaussian binomial coefficient `[m choose r]_q` as a polynomial in `q`.
pub fn gaussian_binomial(m: u64, r: u64) -> Result<UPoly> {
    if r > m {
        return Err(Error::Domain(format!(
            "gaussian_binomial: r = {r} exceeds m = {m}"
        )));
    }
    // Pascal recurrence [m, r] = [m-1, r-1] + q^r [m-1, r] keeps everything integral.
    let r = r.min(m - r) as usize;
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=m as usize {
        let mut next = Vec::with_capacity(r + 1);
        for j in 0..=r.min(n) {
            let mut c: Vec<BigInt> = Vec::new();
            if j > 0 {
                add_shifted(&mut c, &row[j - 1], 0);
            }
            if j < n && j < row.len() {
                add_shifted(&mut c, &row[j], j);
            }
            next.push(c);
        }
        row = next;
    }
    let coeffs = row.swap_remove(r);
    Ok(UPoly::from_coeffs(
        coeffs.into_iter().map(BigRat::from_integer).collect(),
    ))
}

fn add_shifted(acc: &mut Vec<BigInt>, p: &[BigInt], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// Product of the integers in `[1, n]` not divisible by the prime `p`.
pub fn fp_factor(p: u64, n: u64) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("fp_factor: {p} is not prime")));
    }
    Ok((1..=n)
        .filter(|i| i % p != 0)
        .fold(BigInt::one(), |acc, i| acc * i))
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(p: u64, n: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_divisor_sum() {
        for n in 1..=10_000u64 {
            let s: i64 = divs(n).into_iter().map(mu).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn extended_binomials() {
        assert_eq!(binomial_ext(5, 2), BigInt::from(10));
        assert_eq!(binomial_ext(-1, 0), BigInt::from(1));
        assert_eq!(binomial_ext(-2, 3), BigInt::from(-4));
        assert_eq!(binomial_ext(3, 5), BigInt::from(0));
        // (-1)^k binomial(-n+k-1, k) for n < 0
        for n in -6..0i64 {
            for k in 0..6i64 {
                let expect = BigInt::from(sign(k)) * binomial_ext(-n + k - 1, k);
                assert_eq!(binomial_ext(n, k), expect);
            }
        }
    }

    #[test]
    fn gaussian_small_cases() {
        let g = gaussian_binomial(4, 2).unwrap();
        assert_eq!(g, UPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert_eq!(gaussian_binomial(2, 1).unwrap(), UPoly::from_ints(&[1, 1]));
        assert_eq!(gaussian_binomial(7, 0).unwrap(), UPoly::from_ints(&[1]));
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn gaussian_matches_product_quotient() {
        // Independent route: prod (1-q^{m-i}) / prod (1-q^{i+1}) by exact division.
        for m in 0..=12u64 {
            for r in 0..=m {
                let mut num = UPoly::one();
                let mut den = UPoly::one();
                for i in 0..r {
                    num = num.mul(&one_minus_q_pow(m - i));
                    den = den.mul(&one_minus_q_pow(i + 1));
                }
                let (quo, rem) = num.div_rem(&den);
                assert!(rem.is_zero());
                assert_eq!(gaussian_binomial(m, r).unwrap(), quo, "m={m} r={r}");
            }
        }
    }

    fn one_minus_q_pow(k: u64) -> UPoly {
        let mut c = vec![0i64; k as usize + 1];
        c[0] = 1;
        c[k as usize] -= 1;
        UPoly::from_ints(&c)
    }

    #[test]
    fn gaussian_at_one_and_symmetry() {
        for m in 0..=30u64 {
            for r in 0..=m {
                let g = gaussian_binomial(m, r).unwrap();
                let at_one: BigRat = g.coeffs().iter().cloned().sum();
                assert_eq!(at_one, BigRat::from_integer(binomial_ext(m as i64, r as i64)));
                assert_eq!(g, gaussian_binomial(m, m - r).unwrap());
                assert!(g.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()));
            }
        }
    }

    #[test]
    fn fp_values() {
        assert_eq!(fp_factor(5, 0).unwrap(), BigInt::one());
        assert_eq!(fp_factor(2, 4).unwrap(), BigInt::from(3));
        assert_eq!(fp_factor(3, 3).unwrap(), BigInt::from(2));
        assert!(fp_factor(4, 3).is_err());
        for p in [2u64, 3, 5, 7] {
            for n in 0..40u64 {
                let closed = factorial(n)
                    / (BigInt::from(p).pow((n / p) as u32) * factorial(n / p));
                assert_eq!(fp_factor(p, n).unwrap(), closed);
            }
        }
    }

    #[test]
    fn fp_congruences() {
        for p in [3u64, 5] {
            for alpha in 1..=2u32 {
                let pa = p.pow(alpha);
                let modulus = BigInt::from(p).pow(2 * alpha);
                let base = fp_factor(p, pa).unwrap();
                for n in 0..=6u64 {
                    let diff = fp_factor(p, pa * n).unwrap() - base.pow(n as u32);
                    assert!(diff.mod_floor(&modulus).is_zero(), "p={p} a={alpha} n={n}");
                }
            }
        }
        // p = 2, alpha >= 2 holds as well
        let modulus = BigInt::from(16);
        let base = fp_factor(2, 4).unwrap();
        for n in 0..=6u64 {
            let diff = fp_factor(2, 4 * n).unwrap() - base.pow(n as u32);
            assert!(diff.mod_floor(&modulus).is_zero());
        }
        for n in 0..=50u64 {
            let v = fp_factor(2, 2 * n).unwrap().mod_floor(&BigInt::from(4));
            let expect = BigInt::from(sign((n / 2) as i64)).mod_floor(&BigInt::from(4));
            assert_eq!(v, expect, "n={n}");
        }
    }
}
