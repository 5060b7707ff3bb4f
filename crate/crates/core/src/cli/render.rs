//! Table, JSON and CSV output of evaluation records.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::value::RawValue;

use super::eval::{Record, RecordStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

const COLUMNS: [&str; 9] = [
    "family",
    "orders",
    "momenta",
    "analytic",
    "oracle",
    "abs_diff",
    "rel_diff",
    "status",
    "equation_tag",
];

/// 17 significant digits, enough to round-trip any double.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => number(v),
        _ => String::new(),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn momenta_text(record: &Record) -> String {
    join(&record.request.momenta)
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    family: &'a str,
    orders: &'a [u32],
    momenta: Vec<Box<RawValue>>,
    analytic: Option<Box<RawValue>>,
    oracle: Option<Box<RawValue>>,
    abs_diff: Option<Box<RawValue>>,
    rel_diff: Option<Box<RawValue>>,
    status: &'a str,
    equation_tag: &'a str,
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(number(x)).expect("formatted float is valid JSON")
}

fn raw_optional(x: Option<f64>) -> Option<Box<RawValue>> {
    x.filter(|v| v.is_finite()).map(raw)
}

fn json_record(record: &Record) -> JsonRecord<'_> {
    JsonRecord {
        family: record.request.family.as_str(),
        orders: &record.request.orders,
        momenta: record.request.momenta.iter().copied().map(raw).collect(),
        analytic: raw_optional(record.analytic),
        oracle: raw_optional(record.oracle_estimate()),
        abs_diff: raw_optional(record.abs_diff()),
        rel_diff: raw_optional(record.rel_diff()),
        status: record.status.as_str(),
        equation_tag: record.request.formula.tag(),
    }
}

fn status_text(record: &Record) -> String {
    let base = record.status.as_str().replace('_', " ");
    match &record.reason {
        Some(reason) => format!("{base} ({reason})"),
        None => base,
    }
}

/// A single evaluation: one object in JSON, one row otherwise.
pub fn single(out: &mut dyn Write, record: &Record, format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &json_record(record))?;
            writeln!(out)
        }
        _ => many(out, std::slice::from_ref(record), format),
    }
}

/// A grid of evaluations: a JSON array, or a table or CSV with one header.
pub fn many(out: &mut dyn Write, records: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<JsonRecord<'_>> = records.iter().map(json_record).collect();
            serde_json::to_writer(&mut *out, &rows)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in records {
                w.write_record([
                    r.request.family.as_str().to_string(),
                    join(&r.request.orders),
                    momenta_text(r),
                    optional(r.analytic),
                    optional(r.oracle_estimate()),
                    optional(r.abs_diff()),
                    optional(r.rel_diff()),
                    r.status.as_str().to_string(),
                    r.request.formula.tag().to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Table => table(out, records),
    }
}

fn table(out: &mut dyn Write, records: &[Record]) -> io::Result<()> {
    let header: Vec<String> = [
        "family", "orders", "momenta", "analytic", "oracle", "abs_diff", "rel_diff", "status",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let short = |x: Option<f64>| x.map(|v| format!("{v:.10e}")).unwrap_or_else(|| "-".into());
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut status = status_text(r);
            if r.status == RecordStatus::NotApplicable {
                status.push_str(" [skipped]");
            }
            vec![
                r.request.family.as_str().to_string(),
                join(&r.request.orders),
                momenta_text(r),
                short(r.analytic),
                short(r.oracle_estimate()),
                short(r.abs_diff()),
                short(r.rel_diff()),
                status,
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let last = cells.len() - 1;
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == last {
                    c.clone()
                } else {
                    format!("{c:<width$}", width = widths[i])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(&header))?;
    for row in &rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}
