//! Rendering of command results as JSON, aligned text or CSV.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// Rows of strings with a header; appears under `key` in JSON output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub key: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Doc {
    pub fields: Vec<(&'static str, Value)>,
    pub table: Option<Table>,
}

impl Doc {
    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        if let Some(t) = &self.table {
            let rows = t
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        t.headers.iter().zip(row).map(|(h, c)| (h.to_string(), Value::String(c.clone()))).collect(),
                    )
                })
                .collect();
            obj.insert(t.key.to_string(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            writeln!(out, "{k:<width$}  {}", plain(v))?;
        }
        if let Some(t) = &self.table {
            if !self.fields.is_empty() {
                writeln!(out)?;
            }
            let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
            for row in &t.rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(t.headers.clone()).trim_end())?;
            for row in &t.rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()).trim_end())?;
            }
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match &self.table {
            Some(t) => {
                w.write_record(&t.headers)?;
                for row in &t.rows {
                    w.write_record(row)?;
                }
            }
            None => {
                w.write_record(["field", "value"])?;
                for (k, v) in &self.fields {
                    w.write_record([k.to_string(), plain(v)])?;
                }
            }
        }
        w.flush()
    }
}

/// Strings without quotes, everything else as compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
