//! One report per invocation, rendered as text, JSON or CSV.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Left-aligned columns separated by two spaces.
    pub fn render(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&self.header, &mut out);
        for r in &self.rows {
            line(r, &mut out);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub pass: bool,
    pub result: Value,
    /// Body of the text rendering, below the header line.
    pub text: String,
    pub table: Table,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    seed: u64,
    pass: bool,
    result: &'a Value,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, result: impl Serialize) -> Result<Self, CliError> {
        Ok(Report {
            command,
            seed,
            pass: true,
            result: serde_json::to_value(result)?,
            text: String::new(),
            table: Table::default(),
        })
    }

    pub fn json(&self) -> Result<String, CliError> {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            seed: self.seed,
            pass: self.pass,
            result: &self.result,
        };
        let mut s = serde_json::to_string_pretty(&env)?;
        s.push('\n');
        Ok(s)
    }

    pub fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["seed".to_owned()];
        header.extend(self.table.header.iter().cloned());
        w.write_record(&header)?;
        for r in &self.table.rows {
            let mut row = vec![self.seed.to_string()];
            row.extend(r.iter().cloned());
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn text(&self) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut s = format!("# {} seed={} {}\n", self.command, self.seed, verdict);
        s.push_str(&self.text);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text()),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }
}

/// Residuals in a fixed scientific format so text and CSV stay byte-stable.
pub fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "inf".to_owned()
    }
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_owned()
}
