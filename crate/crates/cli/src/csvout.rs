//! CSV emission with a fixed schema per command: header first, floats at 17
//! significant digits, newline-terminated final row.

use std::fmt::Write as _;
use std::path::Path;

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits round-trips every f64 exactly
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Str(s) => s.clone(),
        }
    }
}

pub fn render_csv(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len(), "ragged CSV row");
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{}", cell.render());
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> Result<(), HarnessError> {
    let text = render_csv(header, rows);
    std::fs::write(path, text)
        .map_err(|e| HarnessError::io(format!("cannot write {}: {e}", path.display())))
}

/// Parse a CSV produced by `render_csv` back into cells (floats only where
/// they round-trip); the emit/parse pair is the format's round-trip contract.
#[cfg(test)]
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}
