//! Rendering of command results as JSON, CSV or an aligned text table.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// What every command hands back: a verdict and a flat table.
#[derive(Debug)]
pub struct Output {
    pub command: &'static str,
    pub config: Value,
    pub passed: bool,
    pub rows: Vec<Map<String, Value>>,
}

impl Output {
    pub fn new(command: &'static str, config: Value) -> Self {
        Output {
            command,
            config,
            passed: true,
            rows: Vec::new(),
        }
    }

    /// Appends `value` as one row, nested objects flattened to dotted keys.
    pub fn push<T: Serialize>(&mut self, extra: &[(&str, Value)], value: &T) {
        let mut row = Map::new();
        for (k, v) in extra {
            row.insert((*k).to_string(), v.clone());
        }
        flatten("", serde_json::to_value(value).expect("reports serialize"), &mut row);
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "passed": self.passed,
            "rows": self.rows,
        })
    }

    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for row in &self.rows {
            for k in row.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
        cols
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Csv => {
                let cols = self.columns();
                let mut w = csv::Writer::from_writer(out);
                let mut header = vec!["schema_version".to_string(), "command".into(), "passed".into()];
                header.extend(cols.iter().cloned());
                w.write_record(&header)?;
                for row in &self.rows {
                    let mut rec = vec![SCHEMA_VERSION.to_string(), self.command.to_string(), self.passed.to_string()];
                    rec.extend(cols.iter().map(|c| cell(row.get(c).unwrap_or(&Value::Null))));
                    w.write_record(&rec)?;
                }
                w.flush()
            }
            Format::Pretty => self.write_pretty(out),
        }
    }

    fn write_pretty(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{} [{verdict}]", self.command)?;
        let cols = self.columns();
        if self.rows.len() == 1 {
            let width = cols.iter().map(|c| c.len()).max().unwrap_or(0);
            for c in &cols {
                writeln!(out, "  {c:width$}  {}", cell(&self.rows[0][c]))?;
            }
            return Ok(());
        }
        let table: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| table.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.len()))
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(&cols))?;
        for r in &table {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }
}

fn flatten(prefix: &str, v: Value, row: &mut Map<String, Value>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
                flatten(&key, v, row);
            }
        }
        other => {
            row.insert(if prefix.is_empty() { "value".into() } else { prefix.into() }, other);
        }
    }
}

/// Text of a JSON value as it appears in a CSV cell.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The record written on any error.
pub fn failure_record(command: &str, class: &str, message: &str, exit_code: i32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "passed": false,
        "error": { "class": class, "message": message, "exit_code": exit_code },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_fields_flatten() {
        let mut o = Output::new("t", Value::Null);
        o.push(&[("label", json!("x"))], &json!({"a": {"b": 1}, "c": [1, 2]}));
        let row = &o.rows[0];
        assert_eq!(row["label"], json!("x"));
        assert_eq!(row["a.b"], json!(1));
        assert_eq!(cell(&row["c"]), "[1,2]");
    }

    #[test]
    fn csv_header_carries_schema() {
        let mut o = Output::new("t", Value::Null);
        o.push(&[], &json!({"k": "v"}));
        let mut buf = Vec::new();
        o.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "schema_version,command,passed,k\n1,t,true,v\n");
    }
}
