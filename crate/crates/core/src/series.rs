//! Truncated power series in one or two variables over a [`Coeff`] ring.
//!
//! A [`Series`] of order `N` stores the coefficients of `x^0..=x^N`; a
//! [`BiSeries`] of order `N` stores every monomial `X1^i X2^j` with
//! `i + j <= N`, grouped by total degree. No operation reads past `N`.

use crate::arith::{divs, mu, rat, rat_frac, BigRat};
use crate::error::{Error, Result};
use crate::qa_ring::Coeff;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Pads or truncates `coeffs` to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Truncation {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Series {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(Coeff::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiplies by `x`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series { coeffs }
    }

    /// Substitutes `x -> c x`.
    pub fn rescale_var(&self, c: &C) -> Self {
        let mut power = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.mul(&power));
            power = power.mul(c);
        }
        Series { coeffs }
    }

    /// Applies the Adams operation to every coefficient.
    pub fn adams_coeffs(&self, d: u32) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.adams(d)).collect(),
        }
    }

    fn unit_constant(&self) -> Result<BigRat> {
        match self.coeffs[0].as_constant() {
            Some(c) if c != rat(0) => Ok(c),
            _ => Err(Error::ConstantTerm),
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inv(&self) -> Result<Self> {
        let c_inv = self.unit_constant()?.recip();
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::from_rat(c_inv.clone()));
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(acc.scale(&-c_inv.clone()));
        }
        Ok(Series { coeffs: out })
    }

    /// `self^k` for any integer `k`; negative powers need an invertible constant.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `log S` for `S(0) = 1`, from `n L_n = n S_n - sum_{k<n} k L_k S_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if self.unit_constant()? != rat(1) {
            return Err(Error::ConstantTerm);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&rat(m as i64));
            for (k, lk) in out.iter().enumerate().take(m).skip(1) {
                if !lk.is_zero() && !self.coeffs[m - k].is_zero() {
                    acc = acc.sub(&lk.mul(&self.coeffs[m - k]).scale(&rat(k as i64)));
                }
            }
            out[m] = acc.scale(&rat_frac(1, m as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// `exp F` for `F(0) = 0`, from `n E_n = sum_k k F_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm);
        }
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        out[0] = C::one();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !out[m - k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[m - k]).scale(&rat(k as i64)));
                }
            }
            out[m] = acc.scale(&rat_frac(1, m as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// `f(self)` for a series `f`; needs `self(0) = 0`.
    pub fn compose_into(&self, f: &Series<C>) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("inner series must have zero constant term".into()));
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for k in (0..=f.order().min(n)).rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].add(&f.coeffs[k]);
        }
        Ok(acc)
    }
}

/// The unique `Y = x phi(Y)` to the given order, by fixed-point iteration.
///
/// Each pass fixes one more coefficient, so `order` passes suffice.
pub fn solve_functional<C, F>(phi: F, order: usize) -> Result<Series<C>>
where
    C: Coeff,
    F: Fn(&Series<C>) -> Result<Series<C>>,
{
    let at_zero = phi(&Series::zero(order))?;
    if at_zero.coeff(0).is_zero() {
        return Err(Error::Domain("solve_functional: phi(0) = 0".into()));
    }
    let mut y = Series::zero(order);
    for _ in 0..order {
        y = phi(&y)?.shift_up();
    }
    Ok(y)
}

/// Single-cover coefficients `f_1..=f_N` with `Z = exp(sum_{m,d} f_m(q^d,a^d) x^{dm} / d)`.
///
/// Index 0 of the result is unused and always zero.
pub fn plethystic_log<C: Coeff>(z: &Series<C>) -> Result<Vec<C>> {
    let big_f = z.log()?;
    let n = z.order();
    let mut out = vec![C::zero(); n + 1];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = C::zero();
        for d in divs(m as u64) {
            let md = mu(d);
            let term = big_f.coeff(m / d as usize);
            if md != 0 && !term.is_zero() {
                acc = acc.add(&term.adams(d as u32).scale(&rat_frac(md, d as i64)));
            }
        }
        *slot = acc;
    }
    Ok(out)
}

/// Inverse of [`plethystic_log`]: rebuilds `Z` to `order` from `f_1..`.
pub fn plethystic_exp<C: Coeff>(f: &[C], order: usize) -> Result<Series<C>> {
    let mut big_f: Series<C> = Series::zero(order);
    for (m, fm) in f.iter().enumerate().skip(1).take(order) {
        if fm.is_zero() {
            continue;
        }
        for d in 1..=order / m {
            let term = fm.adams(d as u32).scale(&rat_frac(1, d as i64));
            let k = d * m;
            big_f.set(k, big_f.coeff(k).add(&term));
        }
    }
    big_f.exp()
}

/// Truncated series in `X1, X2`, total degree at most `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C: Coeff> {
    /// `comps[n][i]` is the coefficient of `X1^i X2^(n-i)`.
    comps: Vec<Vec<C>>,
}

impl<C: Coeff> BiSeries<C> {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            comps: (0..=order).map(|n| vec![C::zero(); n + 1]).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.comps[0][0] = C::one();
        s
    }

    pub fn order(&self) -> usize {
        self.comps.len() - 1
    }

    /// Coefficient of `X1^i X2^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &C {
        &self.comps[i + j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.comps[i + j][i] = c;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        BiSeries {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        BiSeries {
            comps: self
                .comps
                .iter()
                .map(|a| a.iter().map(|x| x.scale(c)).collect())
                .collect(),
        }
    }

    fn comp_mul(a: &[C], b: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let p = Self::comp_mul(&self.comps[i], &other.comps[j]);
                for (k, c) in p.into_iter().enumerate() {
                    out.comps[i + j][k] = out.comps[i + j][k].add(&c);
                }
            }
        }
        out
    }

    /// `log S` for `S(0,0) = 1`, using the Euler operator in total degree.
    pub fn log(&self) -> Result<Self> {
        if self.comps[0][0].as_constant() != Some(rat(1)) {
            return Err(Error::ConstantTerm);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for m in 1..=n {
            let mut acc: Vec<C> = self.comps[m].iter().map(|c| c.scale(&rat(m as i64))).collect();
            for k in 1..m {
                let p = Self::comp_mul(&out.comps[k], &self.comps[m - k]);
                for (slot, c) in acc.iter_mut().zip(p) {
                    *slot = slot.sub(&c.scale(&rat(k as i64)));
                }
            }
            out.comps[m] = acc.into_iter().map(|c| c.scale(&rat_frac(1, m as i64))).collect();
        }
        Ok(out)
    }

    /// `exp F` for `F(0,0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.comps[0][0].is_zero() {
            return Err(Error::ConstantTerm);
        }
        let n = self.order();
        let mut out = Self::one(n);
        for m in 1..=n {
            let mut acc = vec![C::zero(); m + 1];
            for k in 1..=m {
                let p = Self::comp_mul(&self.comps[k], &out.comps[m - k]);
                for (slot, c) in acc.iter_mut().zip(p) {
                    *slot = slot.add(&c.scale(&rat(k as i64)));
                }
            }
            out.comps[m] = acc.into_iter().map(|c| c.scale(&rat_frac(1, m as i64))).collect();
        }
        Ok(out)
    }

    /// The divided difference `(Y(X2) - Y(X1)) / (X2 - X1)` of a univariate
    /// series, to total degree `order`; needs `y` of order at least `order + 1`.
    pub fn divided_difference(y: &Series<C>, order: usize) -> Result<Self> {
        if y.order() < order + 1 {
            return Err(Error::Truncation {
                requested: order + 1,
                available: y.order(),
            });
        }
        // (X2^n - X1^n)/(X2 - X1) = sum_{i+j=n-1} X1^i X2^j
        Ok(BiSeries {
            comps: (0..=order).map(|m| vec![y.coeff(m + 1).clone(); m + 1]).collect(),
        })
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&C) -> Result<C>) -> Result<Self> {
        Ok(BiSeries {
            comps: self
                .comps
                .iter()
                .map(|a| a.iter().map(&f).collect::<Result<Vec<C>>>())
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qa_ring::{LaurentQ, LaurentQA, RationalQ};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(n: i64) -> LaurentQA {
        LaurentQA::constant(rat(n))
    }

    fn geometric(order: usize) -> Series<LaurentQA> {
        Series::from_fn(order, |_| c(1))
    }

    #[test]
    fn log_examples() {
        assert_eq!(Series::<LaurentQA>::one(6).log().unwrap(), Series::zero(6));
        let l = geometric(8).log().unwrap();
        for n in 1..=8 {
            assert_eq!(*l.coeff(n), LaurentQA::constant(rat_frac(1, n as i64)));
        }
        let x = Series::<LaurentQA>::var(7);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        assert!(matches!(
            Series::constant(c(2), 3).log(),
            Err(Error::ConstantTerm)
        ));
    }

    fn random_series(rng: &mut ChaCha8Rng, order: usize) -> Series<LaurentQA> {
        Series::from_fn(order, |n| {
            if n == 0 {
                return LaurentQA::zero();
            }
            LaurentQA::from_terms((0..3).map(|_| {
                (
                    rng.gen_range(-3..=3),
                    rng.gen_range(-2..=2),
                    rat_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                )
            }))
        })
    }

    #[test]
    fn exp_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let f = random_series(&mut rng, 8);
            let e = f.exp().unwrap();
            assert_eq!(e.log().unwrap(), f);
            let one_plus = Series::one(8).add(&f);
            assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
        }
    }

    #[test]
    fn inverse_and_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Series::one(7).add(&random_series(&mut rng, 7));
        assert_eq!(s.mul(&s.inv().unwrap()), Series::one(7));
        assert_eq!(s.pow_int(3).unwrap(), s.mul(&s).mul(&s));
        assert_eq!(s.pow_int(-2).unwrap().mul(&s.pow_int(2).unwrap()), Series::one(7));
        assert_eq!(s.pow_int(0).unwrap(), Series::one(7));
    }

    #[test]
    fn solve_functional_examples() {
        let y = solve_functional(|_: &Series<LaurentQA>| Ok(Series::one(6)), 6).unwrap();
        assert_eq!(y, Series::var(6));
        // Y = X (1 - Y)^tau (1 - a (1 - Y)), a carried as a^(2/2)
        let a = LaurentQA::monomial(rat(1), 0, 2);
        for tau in [-2i64, 0, 3] {
            let phi = |y: &Series<LaurentQA>| -> Result<Series<LaurentQA>> {
                let one_minus = Series::one(6).sub(y);
                let t = Series::one(6).sub(&one_minus.mul_coeff(&a));
                Ok(one_minus.pow_int(tau)?.mul(&t))
            };
            let y = solve_functional(phi, 6).unwrap();
            assert_eq!(*y.coeff(1), c(1).sub(&a));
            let residual = y.sub(&phi(&y).unwrap().shift_up());
            assert_eq!(residual, Series::zero(6));
        }
        assert!(solve_functional(|y: &Series<LaurentQA>| Ok(y.clone()), 4).is_err());
    }

    fn rq(t: &[(i64, i64)], den: &[(i64, i64)]) -> RationalQ {
        let f = |t: &[(i64, i64)]| LaurentQ::from_terms(t.iter().map(|&(e, c)| (e, rat(c))));
        RationalQ::new(f(t), f(den)).unwrap()
    }

    #[test]
    fn plethystic_examples() {
        let z: Series<RationalQ> = Series::from_fn(8, |_| RationalQ::one());
        let f = plethystic_log(&z).unwrap();
        assert_eq!(f[1], RationalQ::one());
        assert!(f[2..].iter().all(|x| x.is_zero()));

        // exp(sum_d x^d c(q^d)/d) has f_1 = c
        let cq = rq(&[(1, 1)], &[(0, 1), (2, -1)]);
        let mut big = Series::zero(8);
        for d in 1..=8 {
            big.set(d, cq.adams(d as u32).scale(&rat_frac(1, d as i64)));
        }
        let z = big.exp().unwrap();
        let f = plethystic_log(&z).unwrap();
        assert_eq!(f[1], cq);
        assert!(f[2..].iter().all(|x| x.is_zero()));
        assert_eq!(plethystic_exp(&f, 8).unwrap(), z);

        // f_2 = Z_2 - Z_1^2/2 - Psi_2(Z_1)/2
        let z1 = rq(&[(3, 2)], &[(0, 1), (2, -1)]);
        let z2 = rq(&[(1, 1), (4, -1)], &[(0, 1), (4, -1)]);
        let z = Series::from_coeffs(vec![RationalQ::one(), z1.clone(), z2.clone()], 2);
        let f = plethystic_log(&z).unwrap();
        let expect = z2
            .sub(&z1.mul(&z1).scale(&rat_frac(1, 2)))
            .sub(&z1.adams(2).scale(&rat_frac(1, 2)));
        assert_eq!(f[2], expect);
    }

    #[test]
    fn plethystic_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let z = Series::one(10).add(&random_series(&mut rng, 10));
        let f = plethystic_log(&z).unwrap();
        assert_eq!(plethystic_exp(&f, 10).unwrap(), z);
    }

    #[test]
    fn bivariate_log_exp() {
        let mut s = BiSeries::<LaurentQA>::one(6);
        s.set(1, 0, c(2));
        s.set(0, 1, LaurentQA::monomial(rat(1), 1, 0));
        s.set(2, 1, c(-3));
        let l = s.log().unwrap();
        assert_eq!(l.exp().unwrap(), s);
        assert_eq!(*l.coeff(1, 0), c(2));
        // log of a product is the sum of logs
        assert_eq!(s.mul(&s).log().unwrap(), l.add(&l));
    }

    #[test]
    fn divided_difference_of_geometric() {
        // Y = x/(1-x): (Y2-Y1)/(X2-X1) = 1/((1-X1)(1-X2))
        let y = geometric(6).shift_up();
        let dd = BiSeries::divided_difference(&y, 5).unwrap();
        for i in 0..=5 {
            for j in 0..=5 - i {
                assert_eq!(*dd.coeff(i, j), c(1));
            }
        }
        assert!(BiSeries::divided_difference(&y, 6).is_err());
    }
}
