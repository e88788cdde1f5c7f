//! Assembles command output: `#` comment lines echoing the resolved
//! configuration, then CSV rows (or an aligned text table). Output is
//! buffered and written in one shot, so failures never leave partial
//! files.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

pub struct Output {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(command: &str) -> Output {
        Output {
            comments: vec![format!("wsd {command}")],
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    pub fn header(&mut self, fields: &[&str]) {
        self.header = fields.iter().map(|f| f.to_string()).collect();
    }

    pub fn row(&mut self, fields: Vec<String>) {
        self.rows.push(fields);
    }

    fn render_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        let body = String::from_utf8(writer.into_inner()?)?;
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&body);
        Ok(out)
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i < widths.len() {
                    widths[i] = widths[i].max(cell.len());
                } else {
                    widths.push(cell.len());
                }
            }
        }
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        let render = |cells: &[String], out: &mut String| {
            let line: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:width$}", width = widths[i]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        };
        render(&self.header, &mut out);
        for row in &self.rows {
            render(row, &mut out);
        }
        out
    }

    pub fn finish(self, path: Option<&Path>, table: bool) -> Result<()> {
        let text = if table {
            self.render_table()
        } else {
            self.render_csv()?
        };
        write_text(path, &text)
    }
}

/// Writes to the file (in one shot) or stdout.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write '{}'", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Full-precision float rendering; round-trips through parse.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Two-decimal rendering for the aligned tables.
pub fn num2(x: f64) -> String {
    format!("{x:.2}")
}
