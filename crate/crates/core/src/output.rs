//! CSV and JSON emission (and parsing back) for tables, curves, walks,
//! mistake counts, simulation summaries and reports.
//!
//! Every CSV starts with one `#` metadata line carrying `schema_version` and
//! whatever else is needed to rebuild the structure. Floats are written in
//! shortest round-trip form.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundsReport, CurveEntry, Grid, KRule, RegretCurve};
use crate::dp::{DpTables, PolicyKind};
use crate::error::{domain, Result};
use crate::table::TriangularTable;
use crate::walk::{MistakeStats, WalkRow};
use crate::SCHEMA_VERSION;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Key/value pairs from a CSV metadata line.
pub type Meta = BTreeMap<String, String>;

fn write_meta<W: Write>(out: &mut W, pairs: &[(&str, String)]) -> Result<()> {
    write!(out, "# schema_version={SCHEMA_VERSION}")?;
    for (k, v) in pairs {
        write!(out, " {k}={v}")?;
    }
    writeln!(out)?;
    Ok(())
}

/// Split off the metadata line and return it with the remaining CSV text.
fn split_meta<R: Read>(input: R) -> Result<(Meta, String)> {
    let mut reader = BufReader::new(input);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let line = first
        .trim_end()
        .strip_prefix('#')
        .ok_or_else(|| domain("csv input lacks the '#' metadata line"))?;
    let meta: Meta = line
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut rest = String::new();
    reader.read_to_string(&mut rest)?;
    Ok((meta, rest))
}

fn meta_get<T: std::str::FromStr>(meta: &Meta, key: &str) -> Result<T> {
    meta.get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| domain(format!("metadata field {key} missing or malformed")))
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<T: DeserializeOwned>(body: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(body.as_bytes());
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

/// Table dump: `t,w,p,r` (plus `v` when values are present), one row per
/// state in increasing (t, w) order.
pub fn write_tables_csv<W: Write>(mut out: W, tables: &DpTables) -> Result<()> {
    write_meta(
        &mut out,
        &[("kind", "tables".into()), ("policy", tables.policy.to_string()), ("n_max", tables.n_max.to_string())],
    )?;
    let mut w = csv::Writer::from_writer(out);
    if tables.v.is_some() {
        w.write_record(["t", "w", "p", "r", "v"])?;
    } else {
        w.write_record(["t", "w", "p", "r"])?;
    }
    for (t, wi, r) in tables.r.iter() {
        let p = tables.p.get(t, wi);
        let mut rec = vec![t.to_string(), wi.to_string(), p.to_string(), r.to_string()];
        if let Some(v) = &tables.v {
            rec.push(v.get(t, wi).to_string());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_tables_csv<R: Read>(input: R) -> Result<DpTables> {
    let (meta, body) = split_meta(input)?;
    let n_max: usize = meta_get(&meta, "n_max")?;
    let policy: PolicyKind = meta_get(&meta, "policy")?;
    let mut r = TriangularTable::zeros(n_max);
    let mut p = TriangularTable::zeros(n_max);
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let has_v = reader.headers()?.len() == 5;
    let mut v = has_v.then(|| TriangularTable::zeros(n_max));
    let mut count = 0;
    for rec in reader.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<&str> { rec.get(i).ok_or_else(|| domain("short table row")) };
        let t: usize = field(0)?.parse().map_err(|_| domain("bad t"))?;
        let wi: usize = field(1)?.parse().map_err(|_| domain("bad w"))?;
        if wi > t || t > n_max {
            return Err(domain(format!("state ({t}, {wi}) outside the table")));
        }
        p.set(t, wi, field(2)?.parse().map_err(|_| domain("bad p"))?);
        r.set(t, wi, field(3)?.parse().map_err(|_| domain("bad r"))?);
        if let Some(v) = v.as_mut() {
            v.set(t, wi, field(4)?.parse().map_err(|_| domain("bad v"))?);
        }
        count += 1;
    }
    if count != r.len() {
        return Err(domain(format!("expected {} table rows, read {count}", r.len())));
    }
    Ok(DpTables { n_max, policy, r, p, v })
}

pub fn write_curve_csv<W: Write>(mut out: W, curve: &RegretCurve) -> Result<()> {
    write_meta(
        &mut out,
        &[("kind", "curve".into()), ("k_rule", curve.k_rule.to_string()), ("grid", serde_json::to_string(&curve.grid)?)],
    )?;
    write_rows(out, &curve.entries)
}

pub fn read_curve_csv<R: Read>(input: R) -> Result<RegretCurve> {
    let (meta, body) = split_meta(input)?;
    let k_rule: KRule = meta_get(&meta, "k_rule")?;
    let grid: Grid = serde_json::from_str(meta.get("grid").ok_or_else(|| domain("metadata field grid missing"))?)?;
    let entries: Vec<CurveEntry> = read_rows(&body)?;
    Ok(RegretCurve { grid, k_rule, entries })
}

pub fn write_walk_csv<W: Write>(mut out: W, n: usize, k: usize, policy: PolicyKind, rows: &[WalkRow]) -> Result<()> {
    write_meta(
        &mut out,
        &[("kind", "walk".into()), ("n", n.to_string()), ("k", k.to_string()), ("policy", policy.to_string())],
    )?;
    write_rows(out, rows)
}

pub fn read_walk_csv<R: Read>(input: R) -> Result<(Meta, Vec<WalkRow>)> {
    let (meta, body) = split_meta(input)?;
    Ok((meta, read_rows(&body)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct MistakeRow {
    t: usize,
    mistake_probability: f64,
}

/// Per-period expected mistakes for t = 1..=n; the total goes in the metadata line.
pub fn write_mistakes_csv<W: Write>(mut out: W, n: usize, k: usize, stats: &MistakeStats) -> Result<()> {
    write_meta(
        &mut out,
        &[
            ("kind", "mistakes".into()),
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("total", stats.total.to_string()),
        ],
    )?;
    let rows: Vec<MistakeRow> = stats
        .per_period
        .iter()
        .enumerate()
        .skip(1)
        .map(|(t, &mistake_probability)| MistakeRow { t, mistake_probability })
        .collect();
    write_rows(out, &rows)
}

pub fn read_mistakes_csv<R: Read>(input: R) -> Result<MistakeStats> {
    let (meta, body) = split_meta(input)?;
    let total: f64 = meta_get(&meta, "total")?;
    let rows: Vec<MistakeRow> = read_rows(&body)?;
    let mut per_period = vec![0.0; rows.len() + 1];
    for row in rows {
        *per_period
            .get_mut(row.t)
            .ok_or_else(|| domain(format!("period {} out of order", row.t)))? = row.mistake_probability;
    }
    Ok(MistakeStats { per_period, total })
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json<R: Read, T: DeserializeOwned>(input: R) -> Result<T> {
    Ok(serde_json::from_reader(input)?)
}

/// JSON envelope for payloads that do not carry their own schema version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: T,
}

impl<T> Versioned<T> {
    pub fn new(payload: T) -> Self {
        Self { schema_version: SCHEMA_VERSION, payload }
    }
}

/// One-row CSV of a serializable record (used for simulation summaries).
pub fn write_record_csv<W: Write, T: Serialize>(mut out: W, kind: &str, record: &T) -> Result<()> {
    write_meta(&mut out, &[("kind", kind.into())])?;
    write_rows(out, std::slice::from_ref(record))
}

pub fn read_record_csv<R: Read, T: DeserializeOwned>(input: R) -> Result<T> {
    let (_, body) = split_meta(input)?;
    let mut rows: Vec<T> = read_rows(&body)?;
    if rows.len() != 1 {
        return Err(domain(format!("expected one record, found {}", rows.len())));
    }
    Ok(rows.remove(0))
}

/// Report JSON reader, for symmetry with [`write_json`].
pub fn read_report_json<R: Read>(input: R) -> Result<BoundsReport> {
    read_json(input)
}
