//! Genus-zero invariants of the framed unknot: disc, annulus and three or
//! more holes.
//!
//! Disc and annulus amplitudes come from the mirror curve
//! `y - 1 = X y^tau (a y - 1)` with `X = (-1)^tau a^(-1/2) x`. Writing
//! `Y = 1 - y` this is `Y = X (1 - Y)^tau (1 - a (1 - Y))`, solved as a
//! power series. Coefficients are polynomials in `a`, held in [`LaurentQA`]
//! with `a^l` stored at half-unit exponent `v = 2l`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{binomial_ext, divs, mu, rat, sign, BigRat};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qa_ring::{exact_div, LaurentQA};
use crate::series::{solve_functional, BiSeries, Series};
use crate::table::{Formula, InvariantTable};

/// `n_{m,l}` or `c_{m,l}` keyed by `(m, l)`.
pub type DiscTable = InvariantTable<(u32, u32)>;
/// `n_{(m1,m2),l}` keyed by `(m1, m2, l)`, `l` the power of `a`.
pub type AnnulusTable = InvariantTable<(u32, u32, u32)>;
/// `n_{mu,0,|mu|/2}` keyed by the partition.
pub type MultiHoleTable = InvariantTable<Partition>;

fn a_pow(l: i64) -> LaurentQA {
    LaurentQA::monomial(rat(1), 0, 2 * l)
}

/// Coefficient of `a^l` in an a-polynomial.
fn a_coeff(f: &LaurentQA, l: u32) -> BigRat {
    f.coeff(0, 2 * i64::from(l))
}

/// `c_{m,l}(tau) = -(-1)^(m tau + m + l) / m^2 * C(m,l) C(m tau + l - 1, m - 1)`.
pub fn disc_c(m: u32, l: u32, tau: i64) -> Result<BigRat> {
    if m == 0 {
        return Err(Error::Domain("disc: m must be positive".into()));
    }
    if l > m {
        return Err(Error::Domain(format!("disc: l = {l} exceeds m = {m}")));
    }
    let (m, l) = (i64::from(m), i64::from(l));
    let num = binomial_ext(m, l) * binomial_ext(m * tau + l - 1, m - 1) * -sign(m * tau + m + l);
    Ok(BigRat::new(num, BigInt::from(m * m)))
}

/// `n_{m,l}(tau) = sum_{d | m, d | l} mu(d)/d^2 c_{m/d, l/d}(tau)`, certified integral.
pub fn disc_n(m: u32, l: u32, tau: i64) -> Result<BigInt> {
    let mut acc = disc_c(m, l, tau)?;
    for d in divs(u64::from(m)).into_iter().skip(1) {
        let d32 = d as u32;
        if l % d32 != 0 || mu(d) == 0 {
            continue;
        }
        let c = disc_c(m / d32, l / d32, tau)?;
        acc += c * BigRat::new(BigInt::from(mu(d)), BigInt::from(d * d));
    }
    if !acc.is_integer() {
        return Err(Error::TheoremViolation(format!(
            "disc invariant n_({m},{l})({tau}) = {acc} is not an integer"
        )));
    }
    Ok(acc.to_integer())
}

/// All `n_{m,l}(tau)` with `1 <= m <= max_m`, `0 <= l <= m`.
pub fn disc_table(tau: i64, max_m: u32) -> Result<DiscTable> {
    let mut t = DiscTable::new(Formula::Disc, Some(tau));
    for m in 1..=max_m {
        for l in 0..=m {
            t.insert((m, l), BigRat::from_integer(disc_n(m, l, tau)?));
        }
    }
    Ok(t)
}

/// `Y(X)` from the mirror curve, to order `order`.
pub fn mirror_series(tau: i64, order: usize) -> Result<Series<LaurentQA>> {
    let a = a_pow(1);
    solve_functional(
        |y: &Series<LaurentQA>| {
            let one_minus = Series::one(order).sub(y);
            let t = Series::one(order).sub(&one_minus.mul_coeff(&a));
            Ok(one_minus.pow_int(tau)?.mul(&t))
        },
        order,
    )
}

/// Disc coefficients read off the series `int log y dx/x`: the value at
/// `(m, l)` is the coefficient of `x^m a^(l - m/2)`.
pub fn disc_series_coeffs(tau: i64, max_m: u32) -> Result<BTreeMap<(u32, u32), BigRat>> {
    let order = max_m as usize;
    let y = mirror_series(tau, order)?;
    let log_y = Series::one(order).sub(&y).log()?;
    let mut out = BTreeMap::new();
    for m in 1..=max_m {
        // X^m = (-1)^(m tau) a^(-m/2) x^m, then divide by m for the integral.
        let f = log_y.coeff(m as usize);
        let factor = BigRat::new(BigInt::from(sign(i64::from(m) * tau)), BigInt::from(m));
        for l in 0..=m {
            out.insert((m, l), a_coeff(f, l) * &factor);
        }
    }
    Ok(out)
}

/// Result of comparing the series-derived disc amplitude with the closed form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscCheckReport {
    pub checked: usize,
    /// `(m, l, expected -c_{m,l}, series value)` for every disagreement.
    pub mismatches: Vec<(u32, u32, BigRat, BigRat)>,
}

impl DiscCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks that the series coefficient of `x^m a^(l - m/2)` is `-c_{m,l}(tau)`.
pub fn disc_series_check(tau: i64, max_m: u32) -> Result<DiscCheckReport> {
    if max_m == 0 {
        return Err(Error::Domain("disc_series_check: max_m must be positive".into()));
    }
    let series = disc_series_coeffs(tau, max_m)?;
    let mut report = DiscCheckReport::default();
    for ((m, l), got) in series {
        let expect = -disc_c(m, l, tau)?;
        report.checked += 1;
        if expect != got {
            report.mismatches.push((m, l, expect, got));
        }
    }
    Ok(report)
}

/// `c_{(m1,m2)}` as a polynomial in `a`, for every `m1, m2 >= 1` with
/// `m1 + m2 <= max_total`: the `X1^m1 X2^m2` coefficient of
/// `log((Y(X2) - Y(X1)) / ((1 - a)(X2 - X1)))`.
///
/// Every coefficient of `Y` is divisible by `1 - a` (the right side of the
/// functional equation vanishes at `a = 1, Y = 0`), so the quotient has
/// constant term one and its log is a series of polynomials in `a`.
pub fn annulus_c_table(
    tau: i64,
    max_total: u32,
) -> Result<BTreeMap<(u32, u32), BTreeMap<u32, BigRat>>> {
    let order = max_total as usize;
    let y = mirror_series(tau, order + 1)?;
    let one_minus_a = LaurentQA::one().sub(&a_pow(1));
    let dd = BiSeries::divided_difference(&y, order)?;
    let normalized = dd.map(|c| exact_div(c, &one_minus_a).map_err(theorem("coefficient of Y not divisible by 1 - a")))?;
    let log = normalized.log()?;
    let mut out = BTreeMap::new();
    for m1 in 1..max_total {
        for m2 in 1..=max_total - m1 {
            let c = log.coeff(m1 as usize, m2 as usize);
            let slices: BTreeMap<u32, BigRat> = (0..=m1 + m2)
                .map(|l| (l, a_coeff(c, l)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            debug_assert_eq!(
                slices.values().count(),
                c.num_terms(),
                "annulus coefficient outside 0 <= l <= m1 + m2"
            );
            out.insert((m1, m2), slices);
        }
    }
    Ok(out)
}

fn theorem(msg: &'static str) -> impl Fn(Error) -> Error {
    move |e| Error::TheoremViolation(format!("{msg}: {e}"))
}

/// `c_{(m1,m2),l}` for a single pair, keyed by the power `l` of `a`.
pub fn annulus_c(m1: u32, m2: u32, tau: i64) -> Result<BTreeMap<u32, BigRat>> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::Domain("annulus: winding numbers must be positive".into()));
    }
    let mut table = annulus_c_table(tau, m1 + m2)?;
    Ok(table.remove(&(m1, m2)).unwrap_or_default())
}

/// The closed form for the top a-power `l = m1 + m2` of `c_{(m1,m2)}`:
/// `C(m1 tau + m1 - 1, m1) C(m2 tau + m2, m2) / (m1 + m2)`.
pub fn annulus_top_closed(m1: u32, m2: u32, tau: i64) -> BigRat {
    let (a, b) = (i64::from(m1), i64::from(m2));
    BigRat::new(
        binomial_ext(a * tau + a - 1, a) * binomial_ext(b * tau + b, b),
        BigInt::from(a + b),
    )
}

/// `n_{(m1,m2),l} = sum_{d | m1,m2,l} mu(d)/d (-1)^((m1+m2) tau / d) c_{(m1/d,m2/d),l/d}`
/// for every cell of a table from [`annulus_c_table`].
///
/// Integrality is proved only at the top power `l = m1 + m2` (charge
/// `Q = (m1+m2)/2`); a fractional value there is a theorem violation, while
/// other slices are only reported through the table certificate.
pub fn annulus_n_table(tau: i64, max_total: u32) -> Result<AnnulusTable> {
    let c = annulus_c_table(tau, max_total)?;
    let mut t = AnnulusTable::new(Formula::Annulus, Some(tau));
    for &(m1, m2) in c.keys() {
        for l in 0..=m1 + m2 {
            let v = annulus_mobius(&c, m1, m2, l, tau);
            if l == m1 + m2 && !v.is_integer() {
                return Err(Error::TheoremViolation(format!(
                    "annulus invariant n_(({m1},{m2}),{l})({tau}) = {v} is not an integer"
                )));
            }
            if !v.is_zero() {
                t.insert((m1, m2, l), v);
            }
        }
    }
    Ok(t)
}

fn annulus_mobius(
    c: &BTreeMap<(u32, u32), BTreeMap<u32, BigRat>>,
    m1: u32,
    m2: u32,
    l: u32,
    tau: i64,
) -> BigRat {
    let g = m1.gcd(&m2);
    let g = if l == 0 { g } else { g.gcd(&l) };
    let mut acc = BigRat::zero();
    for d in divs(u64::from(g)) {
        let md = mu(d);
        if md == 0 {
            continue;
        }
        let d32 = d as u32;
        let cell = c
            .get(&(m1 / d32, m2 / d32))
            .and_then(|s| s.get(&(l / d32)))
            .cloned()
            .unwrap_or_else(BigRat::zero);
        let e = i64::from(m1 + m2) * tau / d as i64;
        acc += cell * BigRat::new(BigInt::from(md * sign(e)), BigInt::from(d));
    }
    acc
}

/// `n_{(m1,m2),l}` for a single cell.
pub fn annulus_n(m1: u32, m2: u32, l: u32, tau: i64) -> Result<BigRat> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::Domain("annulus: winding numbers must be positive".into()));
    }
    let c = annulus_c_table(tau, m1 + m2)?;
    let v = annulus_mobius(&c, m1, m2, l, tau);
    if l == m1 + m2 && !v.is_integer() {
        return Err(Error::TheoremViolation(format!(
            "annulus invariant n_(({m1},{m2}),{l})({tau}) = {v} is not an integer"
        )));
    }
    Ok(v)
}

fn check_multihole(mu_: &Partition) -> Result<()> {
    if mu_.len() < 3 {
        return Err(Error::Domain(format!(
            "multi-hole formula needs at least three parts, got {mu_}"
        )));
    }
    Ok(())
}

/// `K_mu = (-1)^(|mu| tau) [tau(tau+1)]^(l-1) prod C(mu_i(tau+1) - 1, mu_i - 1) |mu|^(l-3)`.
pub fn multihole_k(mu_: &Partition, tau: i64) -> Result<BigInt> {
    check_multihole(mu_)?;
    let l = mu_.len() as u32;
    let size = i64::from(mu_.size());
    let mut k = BigInt::from(sign(size * tau)) * BigInt::from(tau * (tau + 1)).pow(l - 1);
    for &p in mu_.parts() {
        let p = i64::from(p);
        k *= binomial_ext(p * (tau + 1) - 1, p - 1);
    }
    Ok(k * BigInt::from(size).pow(l - 3))
}

/// `n_mu = (-1)^l sum_{d | mu} mu(d) d^(l-3) K_{mu/d}`, the inverse of the
/// multiple-cover relation `K_mu = sum_{d | mu} (-1)^l d^(l-3) n_{mu/d}`.
pub fn multihole_n(mu_: &Partition, tau: i64) -> Result<BigInt> {
    check_multihole(mu_)?;
    let l = mu_.len() as u32;
    let mut acc = BigInt::zero();
    for d in divs(u64::from(mu_.parts_gcd())) {
        let md = mu(d);
        if md == 0 {
            continue;
        }
        let sub = mu_.scale_down(d as u32).expect("d divides every part");
        acc += BigInt::from(md) * BigInt::from(d).pow(l - 3) * multihole_k(&sub, tau)?;
    }
    Ok(if l % 2 == 1 { -acc } else { acc })
}

/// `sum_{d | mu} (-1)^l d^(l-3) n_{mu/d}`, which must reproduce `K_mu`.
pub fn multihole_cover_sum(mu_: &Partition, tau: i64) -> Result<BigInt> {
    check_multihole(mu_)?;
    let l = mu_.len() as u32;
    let mut acc = BigInt::zero();
    for d in divs(u64::from(mu_.parts_gcd())) {
        let sub = mu_.scale_down(d as u32).expect("d divides every part");
        acc += BigInt::from(d).pow(l - 3) * multihole_n(&sub, tau)?;
    }
    Ok(if l % 2 == 1 { -acc } else { acc })
}

/// `n_mu` for every partition with `3 <= l(mu)` and `|mu| <= max_size`.
pub fn multihole_table(tau: i64, max_size: u32) -> Result<MultiHoleTable> {
    let mut t = MultiHoleTable::new(Formula::MultiHole, Some(tau));
    for n in 3..=max_size {
        for p in crate::partition::partitions_of(n) {
            if p.len() >= 3 {
                let v = multihole_n(&p, tau)?;
                t.insert(p, BigRat::from_integer(v));
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn disc_c_examples() {
        for tau in -3..=3 {
            assert_eq!(disc_c(1, 0, tau).unwrap(), rat(sign(tau)));
            assert_eq!(disc_n(1, 0, tau).unwrap(), BigInt::from(sign(tau)));
        }
        for m in 1..6 {
            assert_eq!(disc_c(m, m, 0).unwrap(), rat_frac(-1, i64::from(m * m)));
        }
        assert_eq!(disc_c(2, 1, 1).unwrap(), rat(1));
        assert_eq!(disc_n(2, 1, 1).unwrap(), BigInt::from(1));
        assert_eq!(disc_n(2, 2, 0).unwrap(), BigInt::from(0));
        assert!(disc_c(2, 3, 0).is_err());
        assert!(disc_c(0, 0, 0).is_err());
    }

    #[test]
    fn disc_series_small() {
        for tau in [-1, 0, 3] {
            let r = disc_series_check(tau, 6).unwrap();
            assert!(r.passed(), "tau = {tau}: {:?}", r.mismatches);
            assert_eq!(r.checked, (2..=7).sum::<usize>());
        }
    }

    #[test]
    fn annulus_examples() {
        for tau in -3..=3i64 {
            let c = annulus_c(1, 1, tau).unwrap();
            assert_eq!(c.get(&2).cloned().unwrap_or_default(), rat_frac(tau * (tau + 1), 2));
            assert_eq!(
                annulus_n(1, 1, 2, tau).unwrap(),
                rat_frac(tau * (tau + 1), 2),
                "tau = {tau}"
            );
        }
        assert_eq!(annulus_n(1, 1, 2, 2).unwrap(), rat(3));
        assert_eq!(annulus_n(1, 1, 2, 1).unwrap(), rat(1));
        let t = annulus_c_table(2, 6).unwrap();
        for (&(m1, m2), s) in &t {
            assert_eq!(Some(s), t.get(&(m2, m1)));
            assert_eq!(
                s.get(&(m1 + m2)).cloned().unwrap_or_default(),
                annulus_top_closed(m1, m2, 2)
            );
        }
    }

    #[test]
    fn multihole_examples() {
        assert_eq!(multihole_k(&p(&[1, 1, 1]), 1).unwrap(), BigInt::from(-4));
        assert_eq!(multihole_n(&p(&[1, 1, 1]), 1).unwrap(), BigInt::from(4));
        for tau in -3..=3i64 {
            let k = multihole_k(&p(&[1, 1, 1]), tau).unwrap();
            assert_eq!(k, BigInt::from(sign(tau) * tau * tau * (tau + 1) * (tau + 1)));
            assert!(multihole_k(&p(&[3, 2, 2, 1]), 0).unwrap().is_zero());
        }
        // gcd 1: only d = 1 contributes
        for tau in -2..=2 {
            assert_eq!(
                multihole_n(&p(&[2, 1, 1]), tau).unwrap(),
                -multihole_k(&p(&[2, 1, 1]), tau).unwrap()
            );
        }
        // (2,2,2), tau = 1: -(K_(2,2,2) - K_(1,1,1))
        let k222 = multihole_k(&p(&[2, 2, 2]), 1).unwrap();
        let k111 = multihole_k(&p(&[1, 1, 1]), 1).unwrap();
        assert_eq!(multihole_n(&p(&[2, 2, 2]), 1).unwrap(), -(k222 - k111));
        assert!(multihole_k(&p(&[1, 1]), 1).is_err());
        for mu_ in [p(&[2, 2, 2]), p(&[4, 2, 2, 2]), p(&[3, 3, 3])] {
            assert_eq!(
                multihole_cover_sum(&mu_, 2).unwrap(),
                multihole_k(&mu_, 2).unwrap()
            );
        }
    }
}
