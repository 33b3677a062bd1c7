//! Extremal BPS invariants `b^-` and `b^+` of the twist knots `K_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial_ext, divs, mu, sign};
use crate::error::{Error, Result};

/// A twist knot `K_p` together with a winding number `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TwistParams {
    pub p: i64,
    pub r: u32,
}

impl TwistParams {
    pub fn new(p: i64, r: u32) -> Result<Self> {
        if p == 0 || p == 1 {
            return Err(Error::Domain(format!("twist knots need p <= -1 or p >= 2, got {p}")));
        }
        if r == 0 {
            return Err(Error::Domain("r must be positive".into()));
        }
        Ok(TwistParams { p, r })
    }
}

/// `(1/r^2) sum_{d | r} mu(r/d) term(d)`, certified integral.
fn moebius_average(r: u32, what: &str, term: impl Fn(i64) -> BigInt) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for d in divs(u64::from(r)) {
        let m = mu(u64::from(r) / d);
        if m != 0 {
            acc += term(d as i64) * m;
        }
    }
    let r2 = BigInt::from(r) * BigInt::from(r);
    let (q, rem) = acc.div_rem(&r2);
    if !rem.is_zero() {
        return Err(Error::TheoremViolation(format!(
            "{what}: {acc} is not divisible by r^2 = {r2}"
        )));
    }
    Ok(q)
}

/// `b^-_{K_p,r}`.
pub fn b_minus(p: i64, r: u32) -> Result<BigInt> {
    let t = TwistParams::new(p, r)?;
    let what = format!("b^-(p = {p}, r = {r})");
    let sum = if t.p <= -1 {
        moebius_average(r, &what, |d| binomial_ext(3 * d - 1, d - 1))?
    } else {
        moebius_average(r, &what, |d| binomial_ext(2 * d - 1, d - 1) * sign(d + 1))?
    };
    Ok(-sum)
}

/// `b^+_{K_p,r}`.
pub fn b_plus(p: i64, r: u32) -> Result<BigInt> {
    let t = TwistParams::new(p, r)?;
    let what = format!("b^+(p = {p}, r = {r})");
    if t.p <= -1 {
        let k = 2 * t.p.abs() + 1;
        moebius_average(r, &what, |d| binomial_ext(k * d - 1, d - 1))
    } else {
        let k = 2 * t.p + 2;
        moebius_average(r, &what, |d| binomial_ext(k * d - 1, d - 1) * sign(d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRow {
    pub p: i64,
    pub r: u32,
    #[serde(with = "crate::table::bigint_json")]
    pub b_minus: BigInt,
    #[serde(with = "crate::table::bigint_json")]
    pub b_plus: BigInt,
}

pub fn twist_row(p: i64, r: u32) -> Result<TwistRow> {
    Ok(TwistRow {
        p,
        r,
        b_minus: b_minus(p, r)?,
        b_plus: b_plus(p, r)?,
    })
}

/// `(-1)^((k+1)m) binom(km-1, m-1) - (-1)^((k+1)m/q) binom(km/q-1, m/q-1)`,
/// which the integrality proof shows is divisible by `q^(2 alpha)` when `q^alpha || m`.
pub fn congruence_difference(k: i64, m: i64, q: i64) -> BigInt {
    let n = m / q;
    binomial_ext(k * m - 1, m - 1) * sign((k + 1) * m) - binomial_ext(k * n - 1, n - 1) * sign((k + 1) * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(b_minus(-1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(b_minus(-3, 2).unwrap(), BigInt::from(-1));
        assert_eq!(b_plus(-1, 2).unwrap(), BigInt::from(1));
        assert_eq!(b_plus(2, 1).unwrap(), BigInt::from(-1));
        // -(1/1) (-1)^2 binom(1, 0)
        assert_eq!(b_minus(2, 1).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn rejects_bad_p() {
        assert!(b_minus(0, 3).is_err());
        assert!(b_plus(1, 3).is_err());
        assert!(b_plus(2, 0).is_err());
    }

    #[test]
    fn p_minus_one_symmetry() {
        for r in 1..=20 {
            assert_eq!(b_plus(-1, r).unwrap(), -b_minus(-4, r).unwrap());
        }
    }

    #[test]
    fn congruence() {
        for q in [2i64, 3, 5] {
            for alpha in 1..=2u32 {
                let qa = q.pow(alpha);
                for a in (1..=6).filter(|a| a % q != 0) {
                    for k in 1..=4 {
                        let diff = congruence_difference(k, qa * a, q);
                        assert!((diff % (qa * qa)).is_zero(), "q={q} alpha={alpha} a={a} k={k}");
                    }
                }
            }
        }
    }
}
