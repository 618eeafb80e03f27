//! Tables and their json, csv and text renderings.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            // shortest representation that reads back to the same double
            Cell::Float(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Bool(v) => json!(v),
        }
    }

    fn to_plain(&self) -> String {
        match self {
            Cell::Float(v) => sig12(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
    /// Extra lines for the text rendering.
    pub notes: Vec<String>,
    /// Set by selftest when criteria failed.
    pub failed: Option<usize>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), ..Table::default() }
    }
}

/// Twelve significant digits.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

pub fn render(table: &Table, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        table.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                    Value::Object(obj)
                })
                .collect();
            let doc = json!({ "meta": table.meta, "rows": rows });
            let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::to_plain)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Text => {
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Cell::to_plain).collect()).collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([table.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: &[String]| {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = String::new();
            if !table.columns.is_empty() {
                out += &line(&table.columns);
                for row in &cells {
                    out += &line(row);
                }
            }
            for note in &table.notes {
                out += note;
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn emit(table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = render(table, format)?;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(-1.4603545088095868), "-1.46035450881");
        assert_eq!(sig12(1.5e-9), "1.50000000000e-9");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn csv_uses_plain_newlines() {
        let mut t = Table::new(&["a", "b"]);
        t.rows.push(vec![Cell::from(1.0), Cell::from("x,y".to_string())]);
        assert_eq!(render(&t, Format::Csv).unwrap(), "a,b\n1.00000000000,\"x,y\"\n");
    }

    #[test]
    fn json_round_trips_doubles() {
        let v = 0.1 + 0.2;
        let mut t = Table::new(&["v"]);
        t.rows.push(vec![Cell::from(v)]);
        let doc: Value = serde_json::from_str(&render(&t, Format::Json).unwrap()).unwrap();
        assert_eq!(doc["rows"][0]["v"].as_f64(), Some(v));
    }
}
