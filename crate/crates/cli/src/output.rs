use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};
use crate::CliError;

/// One table cell, kept typed so JSON output gets real numbers.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => json!(v),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))
                .map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_json(&self, meta: &Value) -> Result<Vec<u8>, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&json!({ "meta": meta, "rows": rows }))
            .map_err(|e| CliError::Io(e.to_string()))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn render(&self, format: Format, meta: &Value) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(meta),
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Prints the one-line summary, then writes the data to the output file or,
/// without one, to stdout after the summary.
pub fn emit(summary: &str, table: &Table, meta: &Value, out: &OutputArgs) -> Result<(), CliError> {
    let bytes = table.render(out.format, meta)?;
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let io_err = |e: io::Error| CliError::Io(format!("stdout: {e}"));
    writeln!(lock, "{summary}").map_err(io_err)?;
    match &out.output {
        Some(path) => write_file(path, &bytes)?,
        None => lock.write_all(&bytes).map_err(io_err)?,
    }
    lock.flush().map_err(io_err)
}

/// The `meta` object of JSON output: command, library version, config echo.
pub fn meta<C: serde::Serialize>(command: &str, config: &C, extra: Value) -> Value {
    let mut m = json!({
        "command": command,
        "version": feasor::VERSION,
        "config": config,
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut m, extra) {
        dst.extend(src);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(["k", "residual", "ok"]);
        t.push(vec![Cell::Int(0), Cell::Float(0.5), Cell::Bool(true)]);
        t.push(vec![Cell::Int(1), Cell::Float(f64::NAN), Cell::Bool(false)]);
        let csv = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(csv, "k,residual,ok\n0,0.5,true\n1,NaN,false\n");
        let v: Value = serde_json::from_slice(&t.to_json(&json!({"x": 1})).unwrap()).unwrap();
        assert_eq!(v["meta"]["x"], 1);
        assert_eq!(v["rows"][0]["residual"], 0.5);
        assert!(v["rows"][1]["residual"].is_null());
    }
}
