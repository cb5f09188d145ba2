//! Tabular output shared by every subcommand: aligned text, CSV with a
//! formula comment line, or JSON.

use std::io::Write;

use anyhow::Result;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// Formats `x` with 12 significant digits, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Num(x) => sig12(*x),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Num(x) if x.is_finite() => json!(x),
            Value::Num(x) => json!(x.to_string()),
            Value::Bool(b) => json!(b),
            Value::Text(s) => json!(s),
            Value::Empty => Json::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    /// One-line description of what the columns are computed from.
    pub formula: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(formula: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            formula: formula.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Single-row table from named fields.
    pub fn record(formula: impl Into<String>, fields: Vec<(String, Value)>) -> Self {
        let (columns, row) = fields.into_iter().unzip();
        Table {
            formula: formula.into(),
            columns,
            rows: vec![row],
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Csv => {
                for line in self.formula.lines() {
                    writeln!(out, "# {line}")?;
                }
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Value::render))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Json> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Json> =
                            self.columns.iter().cloned().zip(row.iter().map(Value::to_json)).collect();
                        Json::Object(obj)
                    })
                    .collect();
                let doc = json!({ "formula": self.formula, "columns": self.columns, "rows": rows });
                serde_json::to_writer_pretty(&mut out, &doc)?;
                writeln!(out)?;
            }
            Format::Text if self.rows.len() == 1 => {
                let width = self.columns.iter().map(String::len).max().unwrap_or(0);
                for (c, v) in self.columns.iter().zip(&self.rows[0]) {
                    writeln!(out, "{c:<width$}  {}", v.render())?;
                }
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::render).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|k| cells.iter().map(|r| r[k].len()).chain([self.columns[k].len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: &mut dyn Iterator<Item = &str>| {
                    items
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(&mut self.columns.iter().map(String::as_str)))?;
                for r in &cells {
                    writeln!(out, "{}", line(&mut r.iter().map(String::as_str)))?;
                }
            }
        }
        Ok(())
    }
}
