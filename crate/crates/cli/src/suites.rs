//! Verification suites, one per acceptance criterion. Each suite runs at a
//! configurable scale and reports a single outcome.

use std::time::Instant;

use lmov_core::arith::{rat, rat_frac, sign, BigRat};
use lmov_core::genus0::{
    annulus_c_table, annulus_n_table, annulus_top_closed, disc_series_check, disc_table,
    multihole_cover_sum, multihole_k, multihole_n,
};
use lmov_core::gwdt::{dt_extract, gwdt_check, ooguri_vafa, ov_reconstruct};
use lmov_core::onehole::{
    cal_z_cleared, cal_z_gaussian, g_mu_general, lmov_one_hole, verify_recursion,
};
use lmov_core::partition::{mn_character, partitions_of};
use lmov_core::qa_ring::{to_z_basis, LaurentQA, ZBasisTable};
use lmov_core::series::{plethystic_exp, plethystic_log};
use lmov_core::twist::{b_minus, b_plus};
use lmov_core::{BigInt, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How a suite ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A soft (conjectural) check found counterexamples.
    SoftFail,
    Fail,
    /// A proved theorem failed to hold: always a bug.
    Violation,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::SoftFail)
    }

    fn tag(&self) -> &'static str {
        match self.status {
            Status::Pass => "PASS",
            Status::SoftFail => "SOFT-FAIL",
            Status::Fail => "FAIL",
            Status::Violation => "VIOLATION",
        }
    }

    /// Report line without timing, so that output is reproducible.
    pub fn line(&self) -> String {
        format!("{} [{:>2}] {}: {}", self.tag(), self.id, self.name, self.detail)
    }

    pub fn timed_line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.1}s): {}",
            self.tag(),
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

/// Bounds for every suite.
#[derive(Clone, Debug)]
pub struct Scale {
    pub disc_m: u32,
    pub disc_tau: i64,
    pub disc_series_m: u32,
    pub disc_series_tau: i64,
    pub annulus_total: u32,
    pub annulus_tau: i64,
    pub multihole_size: u32,
    pub multihole_tau: i64,
    pub recursion_n: u32,
    pub recursion_tau: i64,
    pub onehole_m: u32,
    pub onehole_tau: i64,
    pub gaussian_m: u32,
    pub gaussian_tau: i64,
    pub general_size: u32,
    pub general_tau: i64,
    pub gwdt_tau: i64,
    pub gwdt_order: usize,
    pub dt_loops: u32,
    pub dt_order: usize,
    pub ov_tau: i64,
    pub ov_m: usize,
    pub ov_q_order: i64,
    pub twist_p: i64,
    pub twist_r: u32,
    pub characters_n: u32,
    pub zbasis_cases: usize,
    pub plethystic_order: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            disc_m: 40,
            disc_tau: 8,
            disc_series_m: 12,
            disc_series_tau: 4,
            annulus_total: 16,
            annulus_tau: 6,
            multihole_size: 10,
            multihole_tau: 5,
            recursion_n: 50,
            recursion_tau: 5,
            onehole_m: 8,
            onehole_tau: 5,
            gaussian_m: 8,
            gaussian_tau: 4,
            general_size: 5,
            general_tau: 3,
            gwdt_tau: 5,
            gwdt_order: 12,
            dt_loops: 5,
            dt_order: 6,
            ov_tau: 5,
            ov_m: 8,
            ov_q_order: 20,
            twist_p: 6,
            twist_r: 40,
            characters_n: 7,
            zbasis_cases: 200,
            plethystic_order: 12,
        }
    }

    pub fn quick() -> Self {
        Scale {
            disc_m: 12,
            disc_tau: 3,
            disc_series_m: 6,
            disc_series_tau: 2,
            annulus_total: 8,
            annulus_tau: 2,
            multihole_size: 7,
            multihole_tau: 2,
            recursion_n: 15,
            recursion_tau: 2,
            onehole_m: 4,
            onehole_tau: 2,
            gaussian_m: 4,
            gaussian_tau: 2,
            general_size: 3,
            general_tau: 1,
            gwdt_tau: 2,
            gwdt_order: 6,
            dt_loops: 3,
            dt_order: 4,
            ov_tau: 2,
            ov_m: 4,
            ov_q_order: 10,
            twist_p: 3,
            twist_r: 12,
            characters_n: 5,
            zbasis_cases: 40,
            plethystic_order: 6,
        }
    }
}

type Check = std::result::Result<String, (Status, String)>;

fn fail(msg: impl Into<String>) -> (Status, String) {
    (Status::Fail, msg.into())
}

/// Maps a library error to a suite failure, keeping theorem violations distinct.
fn lift(e: Error) -> (Status, String) {
    if e.is_theorem_violation() {
        (Status::Violation, e.to_string())
    } else {
        (Status::Fail, e.to_string())
    }
}

fn taus(bound: i64) -> Vec<i64> {
    (-bound..=bound).collect()
}

/// Runs `f` on every item in parallel; the first failure in input order wins.
fn all_of<T: Sync>(items: &[T], f: impl Fn(&T) -> Check + Sync + Send) -> Check {
    let results: Vec<Check> = items.par_iter().map(f).collect();
    let mut notes = Vec::new();
    for r in results {
        notes.push(r?);
    }
    Ok(notes.into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("; "))
}

fn run(id: u32, name: &'static str, body: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let (status, detail) = match body() {
        Ok(d) => (Status::Pass, d),
        Err((s, d)) => (s, d),
    };
    Outcome {
        id,
        name,
        status,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn disc_integrality(s: &Scale) -> Outcome {
    run(1, "disc integrality", || {
        let ts = taus(s.disc_tau);
        let counts = ts
            .par_iter()
            .map(|&t| {
                let table = disc_table(t, s.disc_m).map_err(lift)?;
                if !table.is_integral() {
                    return Err(fail(format!("tau {t}: fractional entries")));
                }
                Ok(table.values.len())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(format!(
            "{} values, m <= {}, tau in [-{},{}]",
            counts.iter().sum::<usize>(),
            s.disc_m,
            s.disc_tau,
            s.disc_tau
        ))
    })
}

pub fn disc_oracle(s: &Scale) -> Outcome {
    run(2, "disc series equals closed form", || {
        all_of(&taus(s.disc_series_tau), |&t| {
            let r = disc_series_check(t, s.disc_series_m).map_err(lift)?;
            match r.mismatches.first() {
                None => Ok(String::new()),
                Some((m, l, want, got)) => {
                    Err(fail(format!("tau {t}, (m,l)=({m},{l}): expected {want}, series {got}")))
                }
            }
        })?;
        Ok(format!(
            "m <= {}, tau in [-{},{}]",
            s.disc_series_m, s.disc_series_tau, s.disc_series_tau
        ))
    })
}

pub fn annulus(s: &Scale) -> Outcome {
    run(3, "annulus top slice and integrality", || {
        all_of(&taus(s.annulus_tau), |&t| {
            let c = annulus_c_table(t, s.annulus_total).map_err(lift)?;
            for (&(m1, m2), slices) in &c {
                let top = slices.get(&(m1 + m2)).cloned().unwrap_or_else(|| rat(0));
                if top != annulus_top_closed(m1, m2, t) {
                    return Err(fail(format!("tau {t}, ({m1},{m2}): top slice {top}")));
                }
            }
            let n = annulus_n_table(t, s.annulus_total).map_err(lift)?;
            let n11 = n.values.get(&(1, 1, 2)).cloned().unwrap_or_else(|| rat(0));
            if n11 != rat_frac(t * (t + 1), 2) {
                return Err(fail(format!("tau {t}: n_(1,1) = {n11}")));
            }
            let mut fractional = 0;
            for (&(m1, m2, l), v) in &n.values {
                if !v.is_integer() {
                    if l == m1 + m2 {
                        return Err((Status::Violation, format!("tau {t}: n_(({m1},{m2}),{l}) = {v}")));
                    }
                    fractional += 1;
                }
            }
            Ok(if fractional > 0 {
                format!("tau {t}: {fractional} fractional lower slices")
            } else {
                String::new()
            })
        })
        .map(|notes| {
            let base = format!(
                "m1+m2 <= {}, tau in [-{},{}], every slice integral",
                s.annulus_total, s.annulus_tau, s.annulus_tau
            );
            if notes.is_empty() {
                base
            } else {
                format!("{base} except: {notes}")
            }
        })
    })
}

pub fn multihole(s: &Scale) -> Outcome {
    run(4, "multi-hole integrality and multiple covers", || {
        let mut count = 0usize;
        let parts: Vec<_> = (3..=s.multihole_size)
            .flat_map(partitions_of)
            .filter(|p| p.len() >= 3)
            .collect();
        for t in taus(s.multihole_tau) {
            all_of(&parts, |p| {
                multihole_n(p, t).map_err(lift)?;
                let k = multihole_k(p, t).map_err(lift)?;
                if multihole_cover_sum(p, t).map_err(lift)? != k {
                    return Err(fail(format!("tau {t}, mu {p}: cover sum differs from K")));
                }
                Ok(String::new())
            })?;
            count += parts.len();
        }
        Ok(format!("{count} cells, |mu| <= {}, tau in [-{},{}]", s.multihole_size, s.multihole_tau, s.multihole_tau))
    })
}

pub fn recursion(s: &Scale) -> Outcome {
    run(5, "framed recursion identity", || {
        all_of(&taus(s.recursion_tau), |&t| {
            let r = verify_recursion(t, s.recursion_n + 1).map_err(lift)?;
            match r.failures.first() {
                None => Ok(String::new()),
                Some(n) => Err((Status::Violation, format!("tau {t}: fails at n = {n}"))),
            }
        })?;
        Ok(format!("n <= {}, tau in [-{},{}]", s.recursion_n, s.recursion_tau, s.recursion_tau))
    })
}

pub fn one_hole(s: &Scale) -> Outcome {
    run(6, "one-hole all-genus chain", || {
        let cells: Vec<(u32, i64)> = (1..=s.onehole_m)
            .flat_map(|m| taus(s.onehole_tau).into_iter().map(move |t| (m, t)))
            .collect();
        all_of(&cells, |&(m, t)| {
            let table = lmov_one_hole(m, t).map_err(lift)?;
            if m == 1 {
                let mut want = ZBasisTable::new();
                want.insert(0, 1, rat(sign(t)));
                want.insert(0, -1, rat(-sign(t)));
                if table.entries != want {
                    return Err(fail(format!("tau {t}: m = 1 table differs")));
                }
            }
            Ok(String::new())
        })?;
        Ok(format!("{} cells, m <= {}, tau in [-{},{}]", cells.len(), s.onehole_m, s.onehole_tau, s.onehole_tau))
    })
}

pub fn gaussian(s: &Scale) -> Outcome {
    run(7, "Gaussian closed form of the cleared numerator", || {
        let cells: Vec<(u32, i64)> = (1..=s.gaussian_m)
            .flat_map(|m| (1..=s.gaussian_tau).map(move |t| (m, t)))
            .collect();
        all_of(&cells, |&(m, t)| {
            let lhs = cal_z_cleared(m, t).map_err(lift)?.scale(&rat(sign(i64::from(m) * t)));
            if lhs != cal_z_gaussian(m, t).map_err(lift)? {
                return Err(fail(format!("m {m}, tau {t}")));
            }
            Ok(String::new())
        })?;
        Ok(format!("m <= {}, tau in [1,{}]", s.gaussian_m, s.gaussian_tau))
    })
}

pub fn general_partitions(s: &Scale) -> Outcome {
    run(8, "general partitions (soft)", || {
        let cells: Vec<_> = (1..=s.general_size)
            .flat_map(partitions_of)
            .flat_map(|p| taus(s.general_tau).into_iter().map(move |t| (p.clone(), t)))
            .collect();
        let results: Vec<_> = cells
            .par_iter()
            .map(|(p, t)| g_mu_general(p, *t).map_err(lift))
            .collect::<Result<_, _>>()?;
        let bad: Vec<String> = results
            .iter()
            .filter(|g| !g.holds())
            .map(|g| format!("mu {} tau {}: {}", g.mu, g.tau, g.issue.clone().unwrap_or_default()))
            .collect();
        if bad.is_empty() {
            Ok(format!(
                "{} cells, |mu| <= {}, tau in [-{},{}], report empty",
                cells.len(),
                s.general_size,
                s.general_tau,
                s.general_tau
            ))
        } else {
            Err((Status::SoftFail, bad.join("; ")))
        }
    })
}

pub fn gwdt(s: &Scale) -> Outcome {
    run(9, "GW/DT identity", || {
        let ts: Vec<i64> = (-s.gwdt_tau..=-1).collect();
        all_of(&ts, |&t| {
            let r = gwdt_check(t, s.gwdt_order).map_err(lift)?;
            match r.first_failure {
                None => Ok(String::new()),
                Some(n) => Err((Status::Violation, format!("tau {t}: differs at x^{n}"))),
            }
        })?;
        Ok(format!("tau in [-{},-1], order x^{}", s.gwdt_tau, s.gwdt_order))
    })
}

pub fn dt(s: &Scale) -> Outcome {
    run(10, "DT extraction", || {
        let loops: Vec<u32> = (1..=s.dt_loops).collect();
        all_of(&loops, |&m| {
            let t = dt_extract(m, s.dt_order).map_err(lift)?;
            if t.get(1, 0) != BigInt::from(1) || t.rows[&1].len() != 1 {
                return Err(fail(format!("m {m}: first row is not c_(1,0) = 1")));
            }
            Ok(String::new())
        })?;
        Ok(format!("loops <= {}, n <= {}", s.dt_loops, s.dt_order))
    })
}

pub fn ov(s: &Scale) -> Outcome {
    run(11, "Ooguri-Vafa extraction and reconstruction", || {
        let notes = all_of(&taus(s.ov_tau), |&t| {
            let table = ooguri_vafa(t, s.ov_m).map_err(lift)?;
            if let Some(v) = table.violations.first() {
                return Err(fail(format!("tau {t}: {v}")));
            }
            if table.get(1, 0) != BigInt::from(sign(t)) || table.rows[&1].len() != 1 {
                return Err(fail(format!("tau {t}: N_(1,0) is not (-1)^tau")));
            }
            let r = ov_reconstruct(&table, s.ov_m, s.ov_q_order);
            if let Some((n, e)) = r.first_mismatch {
                return Err(fail(format!("tau {t}: product differs at x^{n} q^({e}/2)")));
            }
            let neg = table.negative_entries().len();
            Ok(if neg > 0 { format!("tau {t}: {neg} negative") } else { String::new() })
        })?;
        let base = format!("tau in [-{},{}], m <= {}, q-order {}", s.ov_tau, s.ov_tau, s.ov_m, s.ov_q_order);
        Ok(if notes.is_empty() { base } else { format!("{base}; negative N: {notes}") })
    })
}

pub fn twist(s: &Scale) -> Outcome {
    run(12, "twist knot integrality", || {
        let cells: Vec<(i64, u32)> = (-s.twist_p..=s.twist_p)
            .filter(|&p| p <= -1 || p >= 2)
            .flat_map(|p| (1..=s.twist_r).map(move |r| (p, r)))
            .collect();
        all_of(&cells, |&(p, r)| {
            b_minus(p, r).map_err(lift)?;
            b_plus(p, r).map_err(lift)?;
            Ok(String::new())
        })?;
        Ok(format!("{} cells, r <= {}", cells.len(), s.twist_r))
    })
}

/// Character orthogonality, random z-basis round trips and plethystic round trips.
pub fn infrastructure(s: &Scale, seed: u64) -> Outcome {
    run(13, "infrastructure", || {
        for n in 1..=s.characters_n {
            let parts = partitions_of(n);
            for a in &parts {
                for b in &parts {
                    let row: BigRat = parts
                        .iter()
                        .map(|mu| -> Result<BigRat, (Status, String)> {
                            let c = mn_character(a, mu).map_err(lift)? * mn_character(b, mu).map_err(lift)?;
                            Ok(BigRat::new(c, mu.z_factor()))
                        })
                        .sum::<Result<BigRat, _>>()?;
                    if row != rat(i64::from(a == b)) {
                        return Err(fail(format!("orthogonality fails for {a}, {b}")));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for case in 0..s.zbasis_cases {
            let mut table = ZBasisTable::new();
            for _ in 0..rng.gen_range(1..=3) {
                let v = rng.gen_range(-6i64..=6);
                for g in 0..rng.gen_range(1u32..=5) {
                    let c = rng.gen_range(-50i64..=50);
                    if c != 0 {
                        table.insert(g, v, rat(c));
                    }
                }
            }
            if to_z_basis(&table.to_laurent()).map_err(lift)? != table {
                return Err(fail(format!("z-basis round trip fails on case {case}")));
            }
        }
        let order = s.plethystic_order;
        let mut f = vec![LaurentQA::zero()];
        for _ in 1..=order {
            let terms: Vec<(i64, i64, BigRat)> = (0..3)
                .map(|_| (rng.gen_range(-4..=4), rng.gen_range(-2..=2), rat(rng.gen_range(-3..=3))))
                .collect();
            f.push(LaurentQA::from_terms(terms));
        }
        let z = plethystic_exp(&f, order).map_err(lift)?;
        let back = plethystic_log(&z).map_err(lift)?;
        if back[1..] != f[1..] {
            return Err(fail("plethystic round trip fails"));
        }
        Ok(format!(
            "characters n <= {}, {} z-basis cases, plethystic order {}",
            s.characters_n, s.zbasis_cases, order
        ))
    })
}

/// Every suite in criterion order.
pub fn all(s: &Scale, seed: u64) -> Vec<Outcome> {
    vec![
        disc_integrality(s),
        disc_oracle(s),
        annulus(s),
        multihole(s),
        recursion(s),
        one_hole(s),
        gaussian(s),
        general_partitions(s),
        gwdt(s),
        dt(s),
        ov(s),
        twist(s),
        infrastructure(s, seed),
    ]
}
