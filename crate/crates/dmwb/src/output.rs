use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Structured,
}

/// One output row; field order is the column and key order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    fn keys(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(k, _)| *k).collect()
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        Value::Object(map)
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Writes records sharing one shape; a record with different keys starts a new table.
pub fn emit(out: &mut dyn Write, format: Format, records: &[Record]) -> io::Result<()> {
    match format {
        Format::Structured => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            let mut header: Option<Vec<&str>> = None;
            for r in records {
                if header.as_ref() != Some(&r.keys()) {
                    w.write_record(r.keys())?;
                    header = Some(r.keys());
                }
                w.write_record(r.fields.iter().map(|(_, v)| plain(v)))?;
            }
            out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
        }
        Format::Table => {
            for group in records.chunk_by(|a, b| a.keys() == b.keys()) {
                let keys = group[0].keys();
                let cells: Vec<Vec<String>> = group
                    .iter()
                    .map(|r| r.fields.iter().map(|(_, v)| plain(v)).collect())
                    .collect();
                let widths: Vec<usize> = (0..keys.len())
                    .map(|i| {
                        cells
                            .iter()
                            .map(|row| row[i].chars().count())
                            .chain([keys[i].len()])
                            .max()
                            .unwrap()
                    })
                    .collect();
                let line = |items: Vec<&str>| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(keys.clone()))?;
                for row in &cells {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<Record> {
        vec![
            Record::new()
                .with("lattice", "3,8")
                .with("verdict", "Δ(2,3,24)"),
            Record::new().with("lattice", "10,5").with("verdict", "ok"),
        ]
    }

    fn render(f: Format) -> String {
        let mut v = Vec::new();
        emit(&mut v, f, &rows()).unwrap();
        String::from_utf8(v).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(
            render(Format::Structured).lines().next().unwrap(),
            r#"{"lattice":"3,8","verdict":"Δ(2,3,24)"}"#
        );
        assert_eq!(
            render(Format::Csv),
            "lattice,verdict\n\"3,8\",\"Δ(2,3,24)\"\n\"10,5\",ok\n"
        );
        assert_eq!(
            render(Format::Table).lines().nth(1).unwrap(),
            "3,8      Δ(2,3,24)"
        );
    }
}
