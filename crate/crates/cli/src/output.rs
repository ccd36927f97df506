use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::args::Format;

/// One command result in every output format, plus the verdict that sets
/// the exit code.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn new(json: Value, text: String) -> Self {
        Output { json, header: Vec::new(), rows: Vec::new(), text, ok: true }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner().context("flushing csv")?)?
            }
        })
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let body = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

/// Components below `1e-12` of the modulus are shown as zero.
pub fn fmt_complex(re: f64, im: f64) -> String {
    let eps = 1e-12 * re.hypot(im);
    let re = if re.abs() <= eps { 0.0 } else { re };
    let im = if im.abs() <= eps { 0.0 } else { im };
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else {
        format!("{re}{im:+}i")
    }
}
