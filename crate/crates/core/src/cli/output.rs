//! Tabular output in CSV, JSON or aligned-text form.
//!
//! CSV files start with a `# units: ...` comment line, then the column
//! header, then data. Numbers are printed with a fixed count of significant
//! digits, so a file parsed and re-emitted at the same precision (up to 15
//! digits) is byte-identical.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::hydrogen::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    /// `None` writes to standard output.
    pub destination: Option<PathBuf>,
    /// Significant digits, 4..=17.
    pub precision: usize,
}

impl OutputSpec {
    pub fn open(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.destination {
            Some(path) => Box::new(io::BufWriter::new(File::create(path)?)),
            None => Box::new(io::BufWriter::new(io::stdout())),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn render(&self, precision: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_sig(*v, precision),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self, precision: usize) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => {
                // round through the printed form so JSON and CSV agree
                let rounded: f64 = format_sig(*v, precision).parse().unwrap_or(f64::NAN);
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Text(s) => json!(s),
        }
    }

    /// Inverse of [`Cell::render`] for re-reading emitted files.
    pub fn parse(field: &str) -> Cell {
        if let Ok(v) = field.parse::<i64>() {
            Cell::Int(v)
        } else if let Ok(v) = field.parse::<f64>() {
            Cell::Num(v)
        } else {
            Cell::Text(field.to_string())
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// `%g`-style formatting with `precision` significant digits; trailing
/// zeros are dropped.
pub fn format_sig(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let precision = precision.max(1);
    let sci = format!("{:.*e}", precision - 1, x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if x < 0.0 { "-" } else { "" };

    if exp < -5 || exp >= precision as i32 {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

pub fn units_line(params: &PhysicalParams, precision: usize) -> String {
    format!(
        "# units: hbar={} mu={} a0={} Z={}",
        format_sig(params.hbar, precision),
        format_sig(params.mu, precision),
        format_sig(params.a0, precision),
        format_sig(params.z, precision)
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub params: PhysicalParams,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `#` lines written after the data (CSV and table only).
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(params: PhysicalParams, columns: &[&str]) -> Self {
        Self {
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, precision: usize, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(precision, out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json(precision))?;
                writeln!(out)
            }
            Format::Table => self.write_text(precision, out),
        }
    }

    pub fn write_csv(&self, precision: usize, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", units_line(&self.params, precision))?;
        {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(|c| c.render(precision)))?;
            }
            w.flush()?;
        }
        for line in &self.footer {
            writeln!(out, "# {line}")?;
        }
        Ok(())
    }

    /// Reads back a file produced by [`Table::write_csv`]; the footer is dropped.
    pub fn read_csv(text: &str, params: PhysicalParams) -> Result<Table, csv::Error> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let columns = reader.headers()?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            rows.push(record?.iter().map(Cell::parse).collect());
        }
        Ok(Table { params, columns, rows, footer: Vec::new() })
    }

    pub fn to_json(&self, precision: usize) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.clone(), cell.to_json(precision));
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "units": {
                "hbar": self.params.hbar,
                "mu": self.params.mu,
                "a0": self.params.a0,
                "Z": self.params.z,
            },
            "rows": rows,
        })
    }

    fn write_text(&self, precision: usize, out: &mut dyn Write) -> io::Result<()> {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(precision)).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{cell:<w$}");
            }
            s.trim_end().to_string()
        };
        writeln!(out, "{}", units_line(&self.params, precision))?;
        writeln!(out, "{}", line(&self.columns))?;
        for row in &rendered {
            writeln!(out, "{}", line(row))?;
        }
        for l in &self.footer {
            writeln!(out, "# {l}")?;
        }
        Ok(())
    }
}
