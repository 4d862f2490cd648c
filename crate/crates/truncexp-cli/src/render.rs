//! Decimal rendering and the three output encodings.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// `x` with 12 significant digits, trailing zeros kept.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        return format!("{x:.11e}");
    }
    let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
    // rounding may carry into a new leading digit
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
    let leading_zeros = s
        .trim_start_matches('-')
        .chars()
        .take_while(|&c| c == '0' || c == '.')
        .filter(|&c| c == '0')
        .count();
    if digits - leading_zeros > 12 && exp < 11 {
        format!("{:.*}", (10 - exp).max(0) as usize, x)
    } else {
        s
    }
}

/// One cell of an output record.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Nums(Vec<f64>),
    Flag(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => sig12(*x),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Nums(v) => v.iter().map(|x| sig12(*x)).collect::<Vec<_>>().join(";"),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        let num = |x: f64| {
            sig12(x)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number)
        };
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(k) => Value::from(*k),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Nums(v) => Value::Array(v.iter().map(|x| num(*x)).collect()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

pub type Record = Vec<(String, Cell)>;

/// How human output lays records out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    KeyValue,
    Table,
}

pub fn emit(out: &mut dyn Write, format: Format, layout: Layout, records: &[Record]) -> io::Result<()> {
    match format {
        Format::Human => match layout {
            Layout::KeyValue => human_key_value(out, records),
            Layout::Table => human_table(out, records),
        },
        Format::Json => {
            for r in records {
                let obj: Map<String, Value> = r.iter().map(|(k, c)| (k.clone(), c.json())).collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = records.first() {
                w.write_record(first.iter().map(|(k, _)| k.as_str()))?;
            }
            for r in records {
                w.write_record(r.iter().map(|(_, c)| c.text()))?;
            }
            let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
            out.write_all(&bytes)
        }
    }
}

fn human_key_value(out: &mut dyn Write, records: &[Record]) -> io::Result<()> {
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let width = r.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, c) in r {
            let text = match c {
                Cell::Nums(v) => v.iter().map(|x| sig12(*x)).collect::<Vec<_>>().join(", "),
                other => other.text(),
            };
            writeln!(out, "{k:<width$}  {text}")?;
        }
    }
    Ok(())
}

fn human_table(out: &mut dyn Write, records: &[Record]) -> io::Result<()> {
    let Some(first) = records.first() else {
        return Ok(());
    };
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| r.iter().map(|(_, c)| c.text()).collect())
        .collect();
    let widths: Vec<usize> = first
        .iter()
        .enumerate()
        .map(|(j, (k, _))| rows.iter().map(|r| r[j].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let left: Vec<bool> = first
        .iter()
        .map(|(_, c)| matches!(c, Cell::Text(_) | Cell::Flag(_)))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .zip(&left)
            .map(|((c, w), &l)| if l { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(first.iter().map(|(k, _)| k.as_str()).collect()))?;
    for r in &rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
