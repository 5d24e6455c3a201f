//! Output rendering: aligned plain text, RFC-4180-style CSV, and JSON
//! arrays.  All three are deterministic — identical inputs produce
//! byte-identical output.

use clap::ValueEnum;
use serde_json::Value;

/// How tabular results are written to standard output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-aligned columns; very long integers abbreviated.
    Plain,
    /// Header row plus one record per row, quoted where needed.
    Csv,
    /// A top-level array of objects; exact values as strings.
    Json,
}

/// Longest integer printed verbatim by the plain format.
const PLAIN_INT_LIMIT: usize = 40;

/// Digits kept in front of the abbreviation marker.
const PLAIN_INT_KEPT: usize = 20;

/// Shortens a decimal integer beyond [`PLAIN_INT_LIMIT`] digits to its
/// leading digits plus an explicit `…(d digits)` marker.  CSV and JSON
/// always carry the full value; this exists so plain tables stay readable
/// when coefficients reach thousands of digits.
pub fn abbreviate_integer(s: &str) -> String {
    let digit_count = s.strip_prefix('-').unwrap_or(s).len();
    if digit_count <= PLAIN_INT_LIMIT {
        return s.to_string();
    }
    let kept = if s.starts_with('-') { PLAIN_INT_KEPT + 1 } else { PLAIN_INT_KEPT };
    format!("{}…({digit_count} digits)", &s[..kept])
}

/// Abbreviates both sides of a `numerator/denominator` rational rendering.
pub fn abbreviate_rational(s: &str) -> String {
    match s.split_once('/') {
        Some((numer, denom)) => {
            format!("{}/{}", abbreviate_integer(numer), abbreviate_integer(denom))
        }
        None => abbreviate_integer(s),
    }
}

/// Writes an aligned table: every column as wide as its widest cell, cells
/// right-aligned, two spaces between columns.
pub fn print_plain(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: &mut dyn Iterator<Item = &str>| {
        for (i, (cell, w)) in cells.zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            for _ in cell.chars().count()..*w {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    };
    emit(&mut headers.iter().copied());
    for row in rows {
        emit(&mut row.iter().map(String::as_str));
    }
    print!("{out}");
}

/// Writes a CSV table with a header record.
pub fn print_csv(headers: &[&str], rows: &[Vec<String>]) {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(headers).expect("csv into memory");
    for row in rows {
        writer.write_record(row).expect("csv into memory");
    }
    let bytes = writer.into_inner().expect("csv into memory");
    print!("{}", String::from_utf8(bytes).expect("csv output is UTF-8"));
}

/// Writes a pretty-printed JSON array.
pub fn print_json(rows: Vec<Value>) {
    let text = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable rows");
    println!("{text}");
}
