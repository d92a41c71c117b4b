use std::io::{self, Write};

use clap::ValueEnum;
use leafcount::{format_decimal, ExactRatio};

/// Digits after the decimal point in every decimal column.
pub const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub meaning: &'static str,
}

/// A titled table; every cell is already rendered text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[(&'static str, &'static str)]) -> Report {
        Report {
            title: title.into(),
            columns: columns
                .iter()
                .map(|&(name, meaning)| Column { name, meaning })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

pub fn decimal(r: &ExactRatio) -> String {
    format_decimal(r, DECIMAL_DIGITS)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

/// Writes the report; the output depends only on the report's contents.
pub fn emit_report<W: Write>(report: &Report, format: Format, mut out: W) -> io::Result<()> {
    match format {
        Format::Csv => {
            let header: Vec<String> = report.columns.iter().map(|c| csv_field(c.name)).collect();
            writeln!(out, "{}", header.join(","))?;
            for row in &report.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Jsonl => {
            for row in &report.rows {
                let fields: Vec<String> = report
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| format!("{}:{}", json_string(c.name), json_string(v)))
                    .collect();
                writeln!(out, "{{{}}}", fields.join(","))?;
            }
        }
        Format::Pretty => {
            writeln!(out, "{}", report.title)?;
            for c in &report.columns {
                writeln!(out, "  {:<18} {}", c.name, c.meaning)?;
            }
            writeln!(out)?;
            let widths: Vec<usize> = report
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    report
                        .rows
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([c.name.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(report.columns.iter().map(|c| c.name).collect()))?;
            for row in &report.rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    out.flush()
}
