//! Table-producing commands. Each returns a [`Report`] that renders to JSON
//! or CSV; cells are computed in parallel and assembled in key order.

use lmov_core::genus0::{annulus_n_table, disc_table, multihole_table};
use lmov_core::gwdt::{dt_extract, gwdt_check, ooguri_vafa};
use lmov_core::onehole::{g_mu_general, lmov_one_hole};
use lmov_core::qa_ring::ZBasisTable;
use lmov_core::table::{bigint_number, rat_string, rat_value};
use lmov_core::twist::twist_row;
use lmov_core::{BigRat, Partition};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::range::{half_string, IntRange};
use crate::CliError;

/// How to write `Q` in one-hole tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QStyle {
    /// `two_q` as an integer.
    Doubled,
    /// `Q` as a string such as `"3/2"`.
    Half,
}

/// A rendered table: a JSON document plus a flat CSV view.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn positive(name: &str, v: u32) -> Result<u32, CliError> {
    if v == 0 {
        Err(CliError::Usage(format!("--{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn cell(v: &BigRat) -> (Value, String, bool) {
    (rat_value(v), rat_string(v), v.is_integer())
}

pub fn disc(taus: IntRange, max_m: u32) -> Result<Report, CliError> {
    positive("max-m", max_m)?;
    let tables = taus
        .values()
        .into_par_iter()
        .map(|t| disc_table(t, max_m))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        let tau = t.tau.expect("tagged");
        for (&(m, l), v) in &t.values {
            let (jv, sv, int) = cell(v);
            json.push(json!({"m": m, "l": l, "tau": tau, "value": jv, "integral": int}));
            rows.push(vec![m.to_string(), l.to_string(), tau.to_string(), sv, int.to_string()]);
        }
    }
    Ok(Report::new(Value::Array(json), &["m", "l", "tau", "value", "integral"], rows))
}

pub fn annulus(taus: IntRange, max_total: u32) -> Result<Report, CliError> {
    if max_total < 2 {
        return Err(CliError::Usage("--max-m must be at least 2 for the annulus".into()));
    }
    let tables = taus
        .values()
        .into_par_iter()
        .map(|t| annulus_n_table(t, max_total))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        let tau = t.tau.expect("tagged");
        for (&(m1, m2, l), v) in &t.values {
            let (jv, sv, int) = cell(v);
            json.push(json!({"m1": m1, "m2": m2, "l": l, "tau": tau, "value": jv, "integral": int}));
            rows.push(vec![
                m1.to_string(),
                m2.to_string(),
                l.to_string(),
                tau.to_string(),
                sv,
                int.to_string(),
            ]);
        }
    }
    Ok(Report::new(
        Value::Array(json),
        &["m1", "m2", "l", "tau", "value", "integral"],
        rows,
    ))
}

fn parts_string(p: &Partition) -> String {
    p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn multihole(taus: IntRange, max_size: u32) -> Result<Report, CliError> {
    positive("max-m", max_size)?;
    let tables = taus
        .values()
        .into_par_iter()
        .map(|t| multihole_table(t, max_size))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        let tau = t.tau.expect("tagged");
        for (p, v) in &t.values {
            let (jv, sv, int) = cell(v);
            json.push(json!({"mu": p.parts(), "tau": tau, "value": jv, "integral": int}));
            rows.push(vec![parts_string(p), tau.to_string(), sv, int.to_string()]);
        }
    }
    Ok(Report::new(Value::Array(json), &["mu", "tau", "value", "integral"], rows))
}

fn z_entries(table: &ZBasisTable, q: QStyle) -> (Vec<Value>, Vec<(u32, String, String)>) {
    let mut json = Vec::new();
    let mut flat = Vec::new();
    for (&(g, two_q), n) in table.entries() {
        let q_json = match q {
            QStyle::Doubled => json!({"g": g, "two_q": two_q, "n": rat_value(n)}),
            QStyle::Half => json!({"g": g, "Q": half_string(two_q), "n": rat_value(n)}),
        };
        json.push(q_json);
        let q_text = match q {
            QStyle::Doubled => two_q.to_string(),
            QStyle::Half => half_string(two_q),
        };
        flat.push((g, q_text, rat_string(n)));
    }
    (json, flat)
}

fn q_column(q: QStyle) -> &'static str {
    match q {
        QStyle::Doubled => "two_q",
        QStyle::Half => "Q",
    }
}

pub fn onehole(taus: IntRange, max_m: u32, q: QStyle) -> Result<Report, CliError> {
    positive("max-m", max_m)?;
    let cells: Vec<(i64, u32)> = taus
        .values()
        .into_iter()
        .flat_map(|t| (1..=max_m).map(move |m| (t, m)))
        .collect();
    let tables = cells
        .into_par_iter()
        .map(|(t, m)| lmov_one_hole(m, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        let (entries, flat) = z_entries(&t.entries, q);
        json.push(json!({"m": t.m, "tau": t.tau, "entries": entries}));
        for (g, qq, n) in flat {
            rows.push(vec![t.m.to_string(), t.tau.to_string(), g.to_string(), qq, n]);
        }
    }
    Ok(Report::new(Value::Array(json), &["m", "tau", "g", q_column(q), "n"], rows))
}

pub fn onehole_general(taus: IntRange, mu: &Partition, q: QStyle) -> Result<Report, CliError> {
    let results = taus
        .values()
        .into_par_iter()
        .map(|t| g_mu_general(mu, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for r in &results {
        let empty = ZBasisTable::new();
        let (entries, flat) = z_entries(r.table.as_ref().unwrap_or(&empty), q);
        json.push(json!({"mu": r.mu.parts(), "tau": r.tau, "entries": entries, "issue": r.issue}));
        for (g, qq, n) in flat {
            rows.push(vec![parts_string(&r.mu), r.tau.to_string(), g.to_string(), qq, n]);
        }
    }
    Ok(Report::new(Value::Array(json), &["mu", "tau", "g", q_column(q), "n"], rows))
}

pub fn ov(taus: IntRange, max_m: u32) -> Result<Report, CliError> {
    positive("max-m", max_m)?;
    let tables = taus
        .values()
        .into_par_iter()
        .map(|t| ooguri_vafa(t, max_m as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        if let Some(v) = t.violations.first() {
            return Err(CliError::Core(lmov_core::Error::TheoremViolation(format!(
                "tau {}: {v}",
                t.tau
            ))));
        }
        json.push(serde_json::to_value(t)?);
        for (m, row) in &t.rows {
            for (k, n) in row {
                rows.push(vec![t.tau.to_string(), m.to_string(), k.to_string(), n.to_string()]);
            }
        }
    }
    let json = if taus.is_single() { json.remove(0) } else { Value::Array(json) };
    Ok(Report::new(json, &["tau", "m", "k", "N"], rows))
}

pub fn dt(loops: IntRange, order: u32) -> Result<Report, CliError> {
    positive("order", order)?;
    if loops.lo < 1 {
        return Err(CliError::Usage("--loops must be positive".into()));
    }
    let tables = loops
        .values()
        .into_par_iter()
        .map(|m| dt_extract(m as u32, order as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for t in &tables {
        json.push(serde_json::to_value(t)?);
        for (n, row) in &t.rows {
            for (k, c) in row {
                rows.push(vec![t.loops.to_string(), n.to_string(), k.to_string(), c.to_string()]);
            }
        }
    }
    let json = if loops.is_single() { json.remove(0) } else { Value::Array(json) };
    Ok(Report::new(json, &["loops", "n", "k", "c"], rows))
}

/// `PASS`, or the first failing framing and degree.
pub fn gwdt(taus: IntRange, order: u32) -> Result<(bool, String), CliError> {
    if taus.hi > -1 {
        return Err(CliError::Usage("gwdt-check needs tau <= -1".into()));
    }
    let reports = taus
        .values()
        .into_par_iter()
        .map(|t| gwdt_check(t, order as usize))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        if let Some(n) = r.first_failure {
            return Ok((false, format!("FAIL tau {} differs at x^{n}", r.tau)));
        }
    }
    Ok((true, "PASS".to_string()))
}

pub fn twist(ps: IntRange, max_r: u32) -> Result<Report, CliError> {
    positive("max-r", max_r)?;
    let cells: Vec<(i64, u32)> = ps
        .values()
        .into_iter()
        .filter(|&p| p <= -1 || p >= 2)
        .flat_map(|p| (1..=max_r).map(move |r| (p, r)))
        .collect();
    if cells.is_empty() {
        return Err(CliError::Usage("--p range contains no twist knot (p <= -1 or p >= 2)".into()));
    }
    let out = cells
        .into_par_iter()
        .map(|(p, r)| twist_row(p, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for r in &out {
        json.push(json!({
            "p": r.p,
            "r": r.r,
            "b_minus": bigint_number(&r.b_minus),
            "b_plus": bigint_number(&r.b_plus),
        }));
        rows.push(vec![r.p.to_string(), r.r.to_string(), r.b_minus.to_string(), r.b_plus.to_string()]);
    }
    Ok(Report::new(Value::Array(json), &["p", "r", "b_minus", "b_plus"], rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_rows() {
        let r = disc(IntRange::single(-2), 12).unwrap();
        assert_eq!(r.rows.len(), 90);
        assert!(r.rows.iter().all(|row| row[4] == "true"));
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("m,l,tau,value,integral\n"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn onehole_half_q() {
        let r = onehole(IntRange::single(1), 1, QStyle::Half).unwrap();
        assert_eq!(r.header[3], "Q");
        assert_eq!(r.json[0]["entries"][0]["Q"], "-1/2");
        let r = onehole(IntRange::single(1), 1, QStyle::Doubled).unwrap();
        assert_eq!(r.json[0]["entries"][0]["two_q"], -1);
        assert_eq!(r.json[0]["entries"][0]["n"], 1);
    }

    #[test]
    fn gwdt_pass() {
        assert_eq!(gwdt(IntRange::single(-1), 12).unwrap(), (true, "PASS".into()));
        assert!(gwdt(IntRange::single(0), 4).is_err());
    }

    #[test]
    fn json_shapes() {
        let r = ov(IntRange::single(-1), 3).unwrap();
        assert_eq!(r.json["tau"], -1);
        assert!(r.json["rows"][0]["entries"][0].get("N").is_some());
        let r = dt(IntRange::single(2), 3).unwrap();
        assert_eq!(r.json["loops"], 2);
        assert_eq!(r.json["rows"][0]["entries"][0]["c"], 1);
        let r = twist(IntRange { lo: -1, hi: 2 }, 2).unwrap();
        assert_eq!(r.rows.len(), 4);
    }
}
