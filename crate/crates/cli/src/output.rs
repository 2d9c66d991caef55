//! JSON envelope and CSV encodings of a run.
//!
//! Every subcommand produces a [`Table`]; the JSON `results` array is built
//! from the same cells, so both encodings carry identical numbers.

use serde_json::{json, Map, Value};

use crate::args::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Cell {
    pub fn to_json_value(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
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

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Outcome of one subcommand before encoding.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub table: Table,
    pub diagnostics: Map<String, Value>,
}

pub fn render(config: &RunConfig, report: &Report) -> String {
    match config.format {
        Format::Json => render_json(config, report),
        Format::Csv => render_csv(config, report),
    }
}

fn render_json(config: &RunConfig, report: &Report) -> String {
    let results: Vec<Value> = report
        .table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = report
                .table
                .header
                .iter()
                .zip(row)
                .map(|(k, c)| (k.to_string(), c.to_json_value()))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let envelope = json!({
        "config": config,
        "results": results,
        "diagnostics": report.diagnostics,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut s = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
    s.push('\n');
    s
}

fn render_csv(config: &RunConfig, report: &Report) -> String {
    let mut s = format!(
        "# config: {}\n",
        serde_json::to_string(config).expect("config serializes")
    );
    s.push_str(&report.table.header.join(","));
    s.push('\n');
    for row in &report.table.rows {
        let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}
