//! Reduced open-string partition functions of the framed brane in C^3, their
//! Ooguri–Vafa factorization, the Hilbert–Poincaré series of the m-loop
//! quiver CoHA, its DT factorization, and the identity relating the two.
//!
//! Every "is a Laurent polynomial" claim is an exact division by `1 - q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{rat, sign};
use crate::error::{Error, Result};
use crate::qa_ring::{LaurentQ, RationalQ};
use crate::series::{plethystic_log, Series};

/// `prod_{i=1..n} (1 - q^i)` in the variable `s = q^(1/2)`.
fn q_pochhammer(n: u32) -> LaurentQ {
    (1..=i64::from(n)).fold(LaurentQ::one(), |acc, i| {
        acc.mul(&LaurentQ::from_terms([(0, rat(1)), (2 * i, rat(-1))]))
    })
}

fn monomial_over_pochhammer(c: i64, e: i64, n: u32) -> RationalQ {
    RationalQ::new(LaurentQ::monomial(rat(c), e), q_pochhammer(n)).expect("nonzero denominator")
}

/// `H_n(q) = (-1)^(n(tau-1)) q^(n(n-1)tau/2 + n^2/2) / ((1-q)...(1-q^n))`.
pub fn h_top(n: u32, tau: i64) -> RationalQ {
    let n64 = i64::from(n);
    monomial_over_pochhammer(sign(n64 * (tau - 1)), n64 * (n64 - 1) * tau + n64 * n64, n)
}

/// `sum_{n <= order} H_n x^n`.
pub fn z_tau_series(tau: i64, order: usize) -> Series<RationalQ> {
    Series::from_fn(order, |n| h_top(n as u32, tau))
}

/// `P_m(q, t) = sum_n q^(-(m-1) n(n-1)/2) / ((1-q)...(1-q^n)) t^n`.
pub fn coha_series(loops: u32, order: usize) -> Result<Series<RationalQ>> {
    if loops == 0 {
        return Err(Error::Domain("the m-loop quiver needs m >= 1".into()));
    }
    let m = i64::from(loops);
    Ok(Series::from_fn(order, |n| {
        let n64 = n as i64;
        monomial_over_pochhammer(1, -(m - 1) * n64 * (n64 - 1), n as u32)
    }))
}

/// `(1 - q) f` as a Laurent polynomial, or `None` when it is not one.
fn clear_one_minus_q(f: &RationalQ) -> Option<LaurentQ> {
    f.times_one_minus_q().as_laurent().cloned()
}

fn integer_coeffs(p: &LaurentQ) -> Option<BTreeMap<i64, BigInt>> {
    p.terms()
        .map(|(e, c)| c.is_integer().then(|| (e, c.to_integer())))
        .collect()
}

/// Ooguri–Vafa invariants `N_{m,k}(tau)` of the framed brane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvTable {
    pub tau: i64,
    pub rows: BTreeMap<u32, BTreeMap<i64, BigInt>>,
    /// Conjecture failures (non-polynomial or fractional rows); expected empty.
    pub violations: Vec<String>,
}

impl OvTable {
    pub fn get(&self, m: u32, k: i64) -> BigInt {
        self.rows
            .get(&m)
            .and_then(|r| r.get(&k))
            .cloned()
            .unwrap_or_default()
    }

    /// `(m, k)` with `N_{m,k} < 0`.
    pub fn negative_entries(&self) -> Vec<(u32, i64)> {
        self.rows
            .iter()
            .flat_map(|(&m, r)| r.iter().filter(|(_, n)| n.is_negative()).map(move |(&k, _)| (m, k)))
            .collect()
    }
}

#[derive(Serialize)]
struct KEntry<'a> {
    k: i64,
    #[serde(rename = "N", with = "crate::table::bigint_json")]
    n: &'a BigInt,
}

#[derive(Serialize)]
struct OvRow<'a> {
    m: u32,
    entries: Vec<KEntry<'a>>,
}

impl Serialize for OvTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<OvRow> = self
            .rows
            .iter()
            .map(|(&m, r)| OvRow {
                m,
                entries: r.iter().map(|(&k, n)| KEntry { k, n }).collect(),
            })
            .collect();
        let mut st = s.serialize_struct("OvTable", 2)?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Extracts `N_{m,k}(tau)` for `m <= max_m` from `f_m = -sum_k N_{m,k} q^((k+1)/2) / (1-q)`.
pub fn ooguri_vafa(tau: i64, max_m: usize) -> Result<OvTable> {
    if max_m == 0 {
        return Err(Error::Domain("ooguri_vafa needs max m >= 1".into()));
    }
    let f = plethystic_log(&z_tau_series(tau, max_m))?;
    let mut table = OvTable {
        tau,
        rows: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (m, fm) in f.iter().enumerate().skip(1) {
        let Some(p) = clear_one_minus_q(fm) else {
            table.violations.push(format!("(1-q) f_{m} is not a Laurent polynomial"));
            continue;
        };
        let Some(coeffs) = integer_coeffs(&p) else {
            table.violations.push(format!("(1-q) f_{m} has a fractional coefficient"));
            continue;
        };
        // s^(k+1) carries -N_{m,k}
        let row = coeffs.into_iter().map(|(e, c)| (e - 1, -c)).collect();
        table.rows.insert(m as u32, row);
    }
    Ok(table)
}

/// Quantum DT invariants `c_{n,k}` of the m-loop quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtTable {
    pub loops: u32,
    pub rows: BTreeMap<u32, BTreeMap<i64, BigInt>>,
}

impl DtTable {
    pub fn get(&self, n: u32, k: i64) -> BigInt {
        self.rows
            .get(&n)
            .and_then(|r| r.get(&k))
            .cloned()
            .unwrap_or_default()
    }
}

#[derive(Serialize)]
struct CEntry<'a> {
    k: i64,
    #[serde(with = "crate::table::bigint_json")]
    c: &'a BigInt,
}

#[derive(Serialize)]
struct DtRow<'a> {
    n: u32,
    entries: Vec<CEntry<'a>>,
}

impl Serialize for DtTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<DtRow> = self
            .rows
            .iter()
            .map(|(&n, r)| DtRow {
                n,
                entries: r.iter().map(|(&k, c)| CEntry { k, c }).collect(),
            })
            .collect();
        let mut st = s.serialize_struct("DtTable", 2)?;
        st.serialize_field("loops", &self.loops)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Reads `c_{n,k}` off `P_m((-1)^(m-1) t)`, whose single-cover terms are
/// `L_n = (-1)^((m-1)n) sum_k c_{n,k} q^(-k) / (1-q)`.
pub fn dt_extract(loops: u32, order: usize) -> Result<DtTable> {
    let p = coha_series(loops, order)?;
    let twist = rat(sign(i64::from(loops) - 1));
    let mut pow = rat(1);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coeffs.push(p.coeff(n).scale(&pow));
        pow *= &twist;
    }
    let l = plethystic_log(&Series::from_coeffs(coeffs, order))?;
    let mut table = DtTable {
        loops,
        rows: BTreeMap::new(),
    };
    for (n, ln) in l.iter().enumerate().skip(1) {
        let viol = |what: &str| Error::TheoremViolation(format!("m = {loops}, n = {n}: {what}"));
        let poly = clear_one_minus_q(ln).ok_or_else(|| viol("(1-q) L_n is not a Laurent polynomial"))?;
        let ints = integer_coeffs(&poly).ok_or_else(|| viol("fractional DT invariant"))?;
        let eps = BigInt::from(sign((i64::from(loops) - 1) * n as i64));
        let mut row = BTreeMap::new();
        for (e, c) in ints {
            // only integral powers of q occur: e = -2k
            if e % 2 != 0 || e > 0 {
                return Err(viol("unexpected q-exponent in (1-q) L_n"));
            }
            let c = &eps * c;
            if c.is_negative() {
                return Err(viol("negative DT invariant"));
            }
            row.insert(-e / 2, c);
        }
        table.rows.insert(n as u32, row);
    }
    Ok(table)
}

/// Result of comparing `Z_tau(q, x)` with `P_{-tau}(q, (-1)^(tau-1) x q^(1/2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GwDtReport {
    pub tau: i64,
    pub order: usize,
    pub first_failure: Option<usize>,
}

impl GwDtReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn gwdt_check(tau: i64, order: usize) -> Result<GwDtReport> {
    if tau > -1 {
        return Err(Error::Domain(format!("GW/DT identity needs tau <= -1, got {tau}")));
    }
    let z = z_tau_series(tau, order);
    let p = coha_series((-tau) as u32, order)?;
    let first_failure = (0..=order).find(|&n| {
        let n64 = n as i64;
        let sub = p.coeff(n).shift(n64).scale(&rat(sign((tau - 1) * n64)));
        &sub != z.coeff(n)
    });
    Ok(GwDtReport {
        tau,
        order,
        first_failure,
    })
}

/// Truncated Laurent series in `s` for each power of `x`.
type Window = Vec<BTreeMap<i64, BigInt>>;

fn window_mul(a: &Window, b: &Window, caps: &[i64]) -> Window {
    let mut out: Window = vec![BTreeMap::new(); caps.len()];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(caps.len() - i) {
            let slot = &mut out[i + j];
            for (ea, ca) in ai {
                for (eb, cb) in bj {
                    let e = ea + eb;
                    if e <= caps[i + j] {
                        *slot.entry(e).or_insert_with(BigInt::zero) += ca * cb;
                    }
                }
            }
        }
    }
    for slot in &mut out {
        slot.retain(|_, c| !c.is_zero());
    }
    out
}

/// Generalized binomial `binom(n, j)` for any integer `n`.
fn binom_big(n: &BigInt, j: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `1 / prod_{i<=n} (1 - s^(2i))` as a power series in `s` up to degree `cap`.
fn inverse_pochhammer(n: u32, cap: i64) -> Vec<BigInt> {
    let len = cap.max(-1) + 1;
    let mut c = vec![BigInt::zero(); len as usize];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for i in 1..=n as usize {
        let step = 2 * i;
        for e in step..c.len() {
            let prev = c[e - step].clone();
            c[e] += prev;
        }
    }
    c
}

/// Outcome of the independent product-form reconstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub tau: i64,
    pub x_order: usize,
    pub q_order: i64,
    /// `(x-degree, doubled q-exponent)` of the first mismatch.
    pub first_mismatch: Option<(usize, i64)>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Expands `prod_{m,k,l >= 0} (1 - q^((k+1)/2 + l) x^m)^(N_{m,k})` with
/// integer arithmetic and compares it with `sum H_n x^n` through `x^x_order`
/// and `q^q_order`.
pub fn ov_reconstruct(table: &OvTable, x_order: usize, q_order: i64) -> ReconstructionReport {
    let hi = 2 * q_order;
    // lowest s-exponent per unit of x-degree over all factors (as a ceiling)
    let drop = table
        .rows
        .iter()
        .filter(|(&m, _)| m as usize <= x_order)
        .flat_map(|(&m, r)| r.keys().map(move |&k| (k + 1, i64::from(m))))
        .map(|(e, m)| if e < 0 { (-e + m - 1) / m } else { 0 })
        .max()
        .unwrap_or(0);
    let caps: Vec<i64> = (0..=x_order).map(|n| hi + (x_order - n) as i64 * drop).collect();

    let mut prod: Window = vec![BTreeMap::new(); x_order + 1];
    prod[0].insert(0, BigInt::one());
    for (&m, row) in table.rows.iter().filter(|(&m, _)| m as usize <= x_order) {
        let m = m as usize;
        for (&k, n_mk) in row {
            let e_cap = hi + (x_order - m) as i64 * drop;
            let mut e = k + 1;
            while e <= e_cap {
                // (1 - s^e x^m)^N
                let mut factor: Window = vec![BTreeMap::new(); x_order + 1];
                for j in 0..=x_order / m {
                    let c = binom_big(n_mk, j);
                    if !c.is_zero() {
                        let c = if j % 2 == 1 { -c } else { c };
                        factor[j * m].insert(e * j as i64, c);
                    }
                }
                prod = window_mul(&prod, &factor, &caps);
                e += 2;
            }
        }
    }

    let mut first_mismatch = None;
    'outer: for (n, got) in prod.iter().enumerate() {
        let n64 = n as i64;
        let lead = n64 * (n64 - 1) * table.tau + n64 * n64;
        let sgn = BigInt::from(sign(n64 * (table.tau - 1)));
        let series = inverse_pochhammer(n as u32, hi - lead);
        let mut want: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (i, c) in series.iter().enumerate() {
            if !c.is_zero() {
                want.insert(lead + i as i64, &sgn * c);
            }
        }
        let lo = want
            .keys()
            .chain(got.keys())
            .copied()
            .min()
            .unwrap_or(0);
        for e in lo..=hi {
            let a = got.get(&e).cloned().unwrap_or_default();
            let b = want.get(&e).cloned().unwrap_or_default();
            if a != b {
                first_mismatch = Some((n, e));
                break 'outer;
            }
        }
    }
    ReconstructionReport {
        tau: table.tau,
        x_order,
        q_order,
        first_mismatch,
    }
}

/// Checks `N_{n, n-2k-1}(tau) = -(-1)^((tau-1)n) c_{n,k}` against the DT table
/// of `-tau` loops, for `tau <= -1` and `n <= order`. Returns the failing `n`.
pub fn ov_dt_correspondence(ov: &OvTable, dt: &DtTable) -> Vec<u32> {
    let tau = ov.tau;
    dt.rows
        .iter()
        .filter(|(n, _)| ov.rows.contains_key(n))
        .filter_map(|(&n, row)| {
            let eps = BigInt::from(sign((tau - 1) * i64::from(n)));
            let mapped: BTreeMap<i64, BigInt> = row
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(&k, c)| (i64::from(n) - 2 * k - 1, -&eps * c))
                .collect();
            let ov_row: BTreeMap<i64, BigInt> = ov.rows[&n]
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(&k, c)| (k, c.clone()))
                .collect();
            (mapped != ov_row).then_some(n)
        })
        .collect()
}
