//! Output records and their CSV / JSON renderings.
//!
//! Reals are written with 17 significant digits so every value survives a
//! text round trip bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    /// Undefined quantity, e.g. the Mandel parameter at zero mean.
    Undefined,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Undefined, Cell::Real)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_real(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Undefined => "undefined".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) if v.is_finite() => {
                Value::Number(Number::from_str(&format_real(*v)).expect("formatted float parses"))
            }
            Cell::Real(_) | Cell::Undefined => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One command's output: input parameters, scalar results and a table.
#[derive(Debug, Clone)]
pub struct Record {
    pub command: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub summary: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    schema_version: &'a str,
    command: &'a str,
    params: Map<String, Value>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    summary: Map<String, Value>,
    rows: Vec<Map<String, Value>>,
}

fn to_map(pairs: &[(&str, Cell)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.json()))
        .collect()
}

impl Record {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            params: vec![],
            summary: vec![],
            columns,
            rows: vec![],
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.params.push((key, value.into()));
    }

    pub fn summary(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// `# key=value` lines for metadata, then the header and data rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# schema_version={SCHEMA_VERSION}").unwrap();
        writeln!(out, "# command={}", self.command).unwrap();
        for (k, v) in self.params.iter().chain(&self.summary) {
            writeln!(out, "# {k}={}", v.csv()).unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect()
            })
            .collect();
        let record = JsonRecord {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            params: to_map(&self.params),
            summary: to_map(&self.summary),
            rows,
        };
        let mut s = serde_json::to_string_pretty(&record).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.5e-300, -7.0, 0.0, f64::MAX] {
            assert_eq!(format_real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_keeps_seventeen_digits() {
        let mut r = Record::new("x", vec!["v"]);
        r.row(vec![Cell::Real(0.1)]);
        r.row(vec![Cell::Undefined]);
        let json = r.to_json();
        assert!(json.contains("1.0000000000000001e-1"), "{json}");
        assert!(json.contains("null"));
        let back: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["schema_version"], "1");
    }

    #[test]
    fn csv_has_header() {
        let mut r = Record::new("x", vec!["a", "b"]);
        r.param("B", 1u32);
        r.row(vec![Cell::Int(1), Cell::Undefined]);
        assert_eq!(
            r.to_csv(),
            "# schema_version=1\n# command=x\n# B=1\na,b\n1,undefined\n"
        );
    }
}
