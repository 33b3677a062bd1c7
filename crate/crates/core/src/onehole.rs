//! All-genus one-hole invariants of the framed unknot on the Chern–Simons side.
//!
//! The pipeline for a winding number `m` is
//!
//! 1. `N_k = (-1)^(k tau) {k}{k tau} Z_k`, computed term by term so that no
//!    rational function is ever formed;
//! 2. `{m}{m tau} g_m = sum_{d | m} mu(d) Psi_d(N_{m/d})`;
//! 3. exact division by `({m}/{1})({m tau}/{1})` gives `z^2 g_m`;
//! 4. rewriting in powers of `z^2` yields the integers `n_{m,g,Q}(tau)`.
//!
//! At `tau = 0` the product `{m}{m tau}` vanishes. Only `nu = (m)` survives
//! the limit, `Z_m = {m}_a / {m}^2`, and `{m}^2` takes the place of
//! `{m}{m tau}` throughout.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{divs, gaussian_binomial, mu, rat, sign, BigRat};
use crate::error::{Error, Result};
use crate::partition::{mn_character, partitions_of, Partition};
use crate::qa_ring::{
    exact_div, qint, qint_ratio, quantum_int, quantum_prod, to_z_basis, LaurentQ, LaurentQA,
    RationalQ, RationalQA, Var, ZBasisTable,
};

/// `a^(1/2) q^(e/2) - a^(-1/2) q^(-e/2)`.
fn a_q_binomial(e: i64) -> LaurentQA {
    LaurentQA::from_terms([(e, 1, rat(1)), (-e, -1, rat(-1))])
}

/// `prod_{i=1..n} (a^(1/2) q^((i-1)/2) - a^(-1/2) q^(-(i-1)/2))`.
fn row_numerator(n: u32) -> LaurentQA {
    (1..=i64::from(n)).fold(LaurentQA::one(), |acc, i| acc.mul(&a_q_binomial(i - 1)))
}

/// `prod_{i=1..n} {i}`.
fn row_denominator(n: u32) -> LaurentQ {
    (1..=i64::from(n)).fold(LaurentQ::one(), |acc, i| acc.mul(&qint(i)))
}

fn divide_slices(num: &LaurentQA, den: &LaurentQ) -> RationalQA {
    num.slices()
        .iter()
        .fold(RationalQA::zero(), |acc, (v, p)| {
            let r = RationalQ::new(p.clone(), den.clone()).expect("nonzero denominator");
            acc.add(&RationalQA::from_slice(*v, r))
        })
}

/// The colored unknot invariant `W_n(q, a)` for the one-row partition `(n)`.
pub fn unknot_row(n: u32) -> RationalQA {
    divide_slices(&row_numerator(n), &row_denominator(n))
}

/// `H_n(U_tau) = (-1)^(n tau) q^(n(n-1) tau / 2) W_n`.
pub fn framed_row(n: u32, tau: i64) -> RationalQA {
    let n64 = i64::from(n);
    let num = row_numerator(n)
        .shift(n64 * (n64 - 1) * tau, 0)
        .scale(&rat(sign(n64 * tau)));
    divide_slices(&num, &row_denominator(n))
}

/// Outcome of checking the framing recursion for `n < max_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub tau: i64,
    pub checked: u32,
    pub failures: Vec<u32>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `(-1)^tau (q^(n+1) - 1) H_{n+1} = (a^(1/2) q^(n+1/2) - a^(-1/2) q^(1/2)) q^(n tau) H_n`
/// exactly for `0 <= n < max_n`.
///
/// Both sides are multiplied by `prod_{i <= n+1} {i}`, which turns each
/// `H_k` into its Laurent numerator, so the comparison is in the polynomial ring.
pub fn verify_recursion(tau: i64, max_n: u32) -> Result<RecursionReport> {
    if max_n == 0 {
        return Err(Error::Domain("verify_recursion: max_n must be positive".into()));
    }
    let mut report = RecursionReport {
        tau,
        ..Default::default()
    };
    // numer(H_k) = (-1)^(k tau) s^(k(k-1) tau) prod_{i<=k}(...)
    let numer = |k: i64, base: &LaurentQA| base.shift(k * (k - 1) * tau, 0).scale(&rat(sign(k * tau)));
    let mut base = LaurentQA::one();
    for n in 0..i64::from(max_n) {
        let next_base = base.mul(&a_q_binomial(n));
        let q_pow_minus_one = LaurentQA::from_terms([(2 * (n + 1), 0, rat(1)), (0, 0, rat(-1))]);
        let lhs = q_pow_minus_one
            .mul(&numer(n + 1, &next_base))
            .scale(&rat(sign(tau)));
        let factor = LaurentQA::from_terms([(2 * n + 1, 1, rat(1)), (1, -1, rat(-1))]);
        let rhs = factor
            .mul(&numer(n, &base))
            .shift(2 * n * tau, 0)
            .mul_q(&qint(n + 1));
        if lhs != rhs {
            report.failures.push(n as u32);
        }
        report.checked += 1;
        base = next_base;
    }
    Ok(report)
}

/// `{m}{m tau}`, or `{m}^2` at `tau = 0`.
pub fn clearing_factor(m: u32, tau: i64) -> LaurentQ {
    let m = i64::from(m);
    if tau == 0 {
        qint(m).mul(&qint(m))
    } else {
        qint(m).mul(&qint(m * tau))
    }
}

/// `{m}{m tau} Z_m` as a Laurent polynomial (with `{m}^2` at `tau = 0`).
pub fn cal_z_cleared(m: u32, tau: i64) -> Result<LaurentQA> {
    if m == 0 {
        return Err(Error::Domain("cal_Z: m must be positive".into()));
    }
    let mm = i64::from(m);
    if tau == 0 {
        return Ok(quantum_int(mm, Var::A));
    }
    let mut acc = LaurentQA::zero();
    for nu in partitions_of(m) {
        let mut term = quantum_prod(&nu, Var::A);
        for &p in nu.parts() {
            let p = i64::from(p);
            term = term.mul_q(&qint_ratio(mm * tau * p, p));
        }
        acc = acc.add(&term.scale(&BigRat::new(BigInt::from(1), nu.z_factor())));
    }
    Ok(acc.scale(&rat(sign(mm * tau))))
}

/// `Z_m(q, a)` as an a-graded rational function.
pub fn cal_z(m: u32, tau: i64) -> Result<RationalQA> {
    Ok(divide_slices(&cal_z_cleared(m, tau)?, &clearing_factor(m, tau)))
}

/// The closed form of `(-1)^(m tau) {m}{m tau} Z_m` for `tau >= 1`:
/// `sum_{j+k=m} (-1)^j q^((j(j-1) - (m tau - 1) m)/2) a^((k-j)/2) [m tau, j]_q [m tau + k - 1, k]_q`.
pub fn cal_z_gaussian(m: u32, tau: i64) -> Result<LaurentQA> {
    if tau < 1 {
        return Err(Error::Domain("Gaussian closed form needs tau >= 1".into()));
    }
    let mt = u64::from(m) * tau as u64;
    let mut acc = LaurentQA::zero();
    for j in 0..=u64::from(m) {
        let k = u64::from(m) - j;
        if j > mt {
            continue;
        }
        let g = gaussian_binomial(mt, j)?.mul(&gaussian_binomial(mt + k - 1, k)?);
        // polynomial in q -> polynomial in s = q^(1/2)
        let body = LaurentQ::from_upoly(&g.inflate(2), 0);
        let (j, k, mt, m) = (j as i64, k as i64, mt as i64, i64::from(m));
        let u = j * (j - 1) - (mt - 1) * m;
        acc = acc.add(&LaurentQA::from_slice(k - j, body.shift(u)).scale(&rat(sign(j))));
    }
    Ok(acc)
}

/// `{m}{m tau} g_m = sum_{d | m} mu(d) Psi_d({m/d}{m tau/d} Z_{m/d})`.
pub fn g_m_cleared(m: u32, tau: i64) -> Result<LaurentQA> {
    let mut acc = LaurentQA::zero();
    for d in divs(u64::from(m)) {
        let md = mu(d);
        if md != 0 {
            let z = cal_z_cleared(m / d as u32, tau)?;
            acc = acc.add(&z.adams(d as u32).scale(&rat(md)));
        }
    }
    Ok(acc)
}

/// `g_m(q, a) = sum_{d | m} mu(d) Z_{m/d}(q^d, a^d)`.
pub fn g_m(m: u32, tau: i64) -> Result<RationalQA> {
    Ok(divide_slices(&g_m_cleared(m, tau)?, &clearing_factor(m, tau)))
}

/// `({m}/{1})({m tau}/{1})`, or `({m}/{1})^2` at `tau = 0`.
pub fn lemma_divisor(m: u32, tau: i64) -> LaurentQ {
    let m = i64::from(m);
    let second = if tau == 0 { m } else { m * tau };
    qint_ratio(m, 1).mul(&qint_ratio(second, 1))
}

/// `z^2 g_m` as a Laurent polynomial, by exact division.
pub fn z2_g_m(m: u32, tau: i64) -> Result<LaurentQA> {
    let cleared = g_m_cleared(m, tau)?;
    exact_div(&cleared, &LaurentQA::from_q(lemma_divisor(m, tau))).map_err(|e| {
        Error::TheoremViolation(format!(
            "{{m}}{{m tau}} g_m not divisible by the cyclotomic factor (m = {m}, tau = {tau}): {e}"
        ))
    })
}

/// The table `n_{m,g,Q}(tau)` for one winding number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneHoleTable {
    pub m: u32,
    pub tau: i64,
    pub entries: ZBasisTable,
}

impl OneHoleTable {
    /// `n_{m,g,Q}` with `Q` given doubled.
    pub fn get(&self, g: u32, two_q: i64) -> BigRat {
        self.entries.get(g, two_q)
    }
}

/// Runs the full chain and certifies every `n_{m,g,Q}(tau)` as an integer.
/// Any failure along the way is a theorem violation.
pub fn lmov_one_hole(m: u32, tau: i64) -> Result<OneHoleTable> {
    if m == 0 {
        return Err(Error::Domain("one-hole invariants need m >= 1".into()));
    }
    for d in divs(u64::from(m)) {
        let z = cal_z_cleared(m / d as u32, tau)?;
        if !z.is_integral() {
            return Err(Error::TheoremViolation(format!(
                "{{k}}{{k tau}} Z_k has a fractional coefficient (k = {}, tau = {tau})",
                m / d as u32
            )));
        }
    }
    let f = z2_g_m(m, tau)?;
    let entries = to_z_basis(&f).map_err(|e| {
        Error::TheoremViolation(format!("z^2 g_m outside Q[z^2, a^(1/2)] (m = {m}, tau = {tau}): {e}"))
    })?;
    if !entries.is_integral() {
        return Err(Error::TheoremViolation(format!(
            "fractional one-hole invariant (m = {m}, tau = {tau})"
        )));
    }
    Ok(OneHoleTable { m, tau, entries })
}

/// `M_{lambda mu}(q) = sum_nu chi_lambda(nu) chi_mu(nu) / z_nu prod_j (q^(-nu_j/2) - q^(nu_j/2))`.
pub fn m_matrix(lambda: &Partition, mu_: &Partition) -> Result<LaurentQA> {
    if lambda.size() != mu_.size() {
        return Err(Error::Domain(format!(
            "M matrix needs equal sizes: |{lambda}| != |{mu_}|"
        )));
    }
    let mut acc = LaurentQA::zero();
    for nu in partitions_of(lambda.size()) {
        let chi = mn_character(lambda, &nu)? * mn_character(mu_, &nu)?;
        if chi.is_zero() {
            continue;
        }
        let prod = quantum_prod(&nu, Var::Q).scale(&rat(sign(nu.len() as i64)));
        acc = acc.add(&prod.scale(&BigRat::new(chi, nu.z_factor())));
    }
    Ok(acc)
}

/// `phi_{mu,sigma}(s^tau) = sum_lambda chi_lambda(mu) chi_lambda(sigma) s^(kappa_lambda tau)`.
fn phi(mu_: &Partition, sigma: &Partition, tau: i64) -> Result<LaurentQ> {
    let mut terms = Vec::new();
    for lambda in partitions_of(mu_.size()) {
        let c = mn_character(&lambda, mu_)? * mn_character(&lambda, sigma)?;
        if !c.is_zero() {
            terms.push((lambda.kappa() * tau, BigRat::from_integer(c)));
        }
    }
    Ok(LaurentQ::from_terms(terms))
}

/// `Z_nu(U_tau) = (-1)^(|nu| tau) sum_sigma phi_{nu,sigma}(q^(tau/2)) {sigma}_a / (z_sigma {sigma})`.
pub fn cal_z_partition(nu: &Partition, tau: i64) -> Result<RationalQA> {
    let mut acc = RationalQA::zero();
    for sigma in partitions_of(nu.size()) {
        let ph = phi(nu, &sigma, tau)?;
        if ph.is_zero() {
            continue;
        }
        let den = quantum_prod(&sigma, Var::Q)
            .as_q()
            .expect("a-free")
            .scale(&BigRat::from_integer(sigma.z_factor()));
        let num = quantum_prod(&sigma, Var::A).mul_q(&ph);
        acc = acc.add(&divide_slices(&num, &den));
    }
    Ok(acc.scale(&rat(sign(i64::from(nu.size()) * tau))))
}

/// All distinct nonempty sub-multisets of the parts of `rho`.
pub fn sub_partitions(rho: &Partition) -> Vec<Partition> {
    let mult = rho.multiplicities();
    let mut out = Vec::new();
    let mut counts = vec![0u32; mult.len()];
    loop {
        // odometer over 0..=a_i for each distinct part
        let mut i = 0;
        while i < mult.len() {
            if counts[i] < mult[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        if i == mult.len() {
            break;
        }
        let parts: Vec<u32> = mult
            .iter()
            .zip(&counts)
            .flat_map(|(&(v, _), &c)| std::iter::repeat(v).take(c as usize))
            .collect();
        out.push(Partition::new(parts).expect("positive parts"));
    }
    out.sort();
    out
}

/// Removes the parts of `nu` from `rho` (multiset difference).
fn remove_parts(rho: &Partition, nu: &Partition) -> Partition {
    let mut parts = rho.parts().to_vec();
    for p in nu.parts() {
        let i = parts.iter().position(|x| x == p).expect("nu is a sub-multiset");
        parts.remove(i);
    }
    Partition::new(parts).expect("positive parts")
}

/// Ordered decompositions `(nu^1, ..., nu^n)` of `mu` into nonempty partitions.
pub fn decompositions(mu_: &Partition, n: usize) -> Vec<Vec<Partition>> {
    if n == 0 {
        return if mu_.is_empty() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for nu in sub_partitions(mu_) {
        let rest = remove_parts(mu_, &nu);
        for mut tail in decompositions(&rest, n - 1) {
            tail.insert(0, nu.clone());
            out.push(tail);
        }
    }
    out
}

/// Result of the general-partition integrality check (a conjecture, so
/// failures are reported rather than raised).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralOneHole {
    pub mu: Partition,
    pub tau: i64,
    /// `z_mu g^_mu`.
    pub value: RationalQA,
    /// The `z^2`-basis table when extraction succeeded.
    pub table: Option<ZBasisTable>,
    /// Why the table is missing or not integral.
    pub issue: Option<String>,
}

impl GeneralOneHole {
    pub fn holds(&self) -> bool {
        self.issue.is_none()
    }
}

/// `F_mu = sum_n sum_{nu^1 u ... u nu^n = mu} (-1)^(n-1)/n prod Z_{nu^i} / z_{nu^i}`.
fn f_mu(mu_: &Partition, tau: i64, cache: &mut HashMap<Partition, RationalQA>) -> Result<RationalQA> {
    // T_n(rho): sum over ordered n-tuples with union rho of prod A_nu.
    let subs = {
        let mut all = sub_partitions(mu_);
        all.push(Partition::empty());
        all
    };
    let mut a = HashMap::new();
    for nu in &subs {
        if nu.is_empty() {
            continue;
        }
        if !cache.contains_key(nu) {
            cache.insert(nu.clone(), cal_z_partition(nu, tau)?);
        }
        let v = cache[nu].scale(&BigRat::new(BigInt::from(1), nu.z_factor()));
        a.insert(nu.clone(), v);
    }
    let mut t: HashMap<Partition, RationalQA> = HashMap::new();
    t.insert(Partition::empty(), RationalQA::one());
    let mut total = RationalQA::zero();
    for n in 1..=mu_.len() {
        let mut next: HashMap<Partition, RationalQA> = HashMap::new();
        for rho in &subs {
            if rho.len() < n {
                continue;
            }
            let mut acc = RationalQA::zero();
            for nu in sub_partitions(rho) {
                let rest = remove_parts(rho, &nu);
                if let Some(prev) = t.get(&rest) {
                    acc = acc.add(&a[&nu].mul(prev));
                }
            }
            if !acc.is_zero() {
                next.insert(rho.clone(), acc);
            }
        }
        if let Some(v) = next.get(mu_) {
            let w = BigRat::new(BigInt::from(sign(n as i64 - 1)), BigInt::from(n));
            total = total.add(&v.scale(&w));
        }
        t = next;
    }
    Ok(total)
}

/// `z_mu g^_mu(U_tau)` with `g^_mu = sum_{d | mu} mu(d)/d Psi_d(F_{mu/d} / {mu/d})`,
/// followed by an attempted integral `z^2`-basis extraction.
pub fn g_mu_general(mu_: &Partition, tau: i64) -> Result<GeneralOneHole> {
    if mu_.is_empty() {
        return Err(Error::Domain("g_mu needs a nonempty partition".into()));
    }
    let mut cache = HashMap::new();
    let mut g_hat = RationalQA::zero();
    for d in divs(u64::from(mu_.parts_gcd())) {
        let md = mu(d);
        if md == 0 {
            continue;
        }
        let sub = mu_.scale_down(d as u32).expect("d divides every part");
        let f = f_mu(&sub, tau, &mut cache)?;
        let den = quantum_prod(&sub, Var::Q).as_q().expect("a-free");
        let f_hat = f.mul_q(&RationalQ::new(LaurentQ::one(), den)?);
        g_hat = g_hat.add(&f_hat.adams(d as u32).scale(&BigRat::new(BigInt::from(md), BigInt::from(d))));
    }
    let value = g_hat.scale(&BigRat::from_integer(mu_.z_factor()));
    let z2 = LaurentQA::from_q(qint(1).mul(&qint(1)));
    let (table, issue) = match value.mul_laurent(&z2).as_laurent() {
        None => (None, Some("z^2 z_mu g_mu is not a Laurent polynomial".to_string())),
        Some(f) => match to_z_basis(&f) {
            Err(e) => (None, Some(e.to_string())),
            Ok(t) if !t.is_integral() => (Some(t), Some("fractional coefficient".to_string())),
            Ok(t) => (Some(t), None),
        },
    };
    Ok(GeneralOneHole {
        mu: mu_.clone(),
        tau,
        value,
        table,
        issue,
    })
}
