//! Matrix text files and CSV output.
//!
//! Matrix file format:
//!
//! ```text
//! # comments run to end of line, blank lines are ignored
//! 3
//! 0.5 0 0
//! 0 0.25 0.1:-0.2
//! 0 0.1:0.2 0.25
//! ```
//!
//! The first content line is the dimension; each following content line is
//! one row of whitespace-separated entries, either `re` or `re:im`.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::families::SweepRow;
use crate::linalg::{ComplexMatrix, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: bad header: {message}")]
    BadHeader { line: usize, message: String },

    #[error("line {line}: {message}")]
    BadEntryCount { line: usize, message: String },

    #[error("line {line}, column {column}: bad number '{token}'")]
    BadNumber {
        line: usize,
        column: usize,
        token: String,
    },
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits into (1-based column, token) pairs.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

fn parse_real(token: &str) -> Option<f64> {
    let v: f64 = token.parse().ok()?;
    v.is_finite().then_some(v)
}

fn parse_entry(token: &str) -> Option<Complex64> {
    match token.split_once(':') {
        Some((re, im)) => Some(Complex64::new(parse_real(re)?, parse_real(im)?)),
        None => Some(Complex64::new(parse_real(token)?, 0.0)),
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::BadHeader {
        line: 1,
        message: "missing dimension".into(),
    })?;
    let dim: usize = header.trim().parse().map_err(|_| ParseError::BadHeader {
        line: header_line,
        message: format!("'{}' is not a dimension", header.trim()),
    })?;
    if dim == 0 || dim > MAX_DIM {
        return Err(ParseError::BadHeader {
            line: header_line,
            message: format!("dimension {dim} outside 1..={MAX_DIM}"),
        });
    }

    let mut rows = Vec::with_capacity(dim);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        if rows.len() == dim {
            return Err(ParseError::BadEntryCount {
                line: line_no,
                message: format!("extra row beyond the declared {dim}"),
            });
        }
        let toks = tokens(line);
        if toks.len() != dim {
            return Err(ParseError::BadEntryCount {
                line: line_no,
                message: format!("expected {dim} entries, found {}", toks.len()),
            });
        }
        let row = toks
            .into_iter()
            .map(|(column, tok)| {
                parse_entry(tok).ok_or_else(|| ParseError::BadNumber {
                    line: line_no,
                    column,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(ParseError::BadEntryCount {
            line: last_line,
            message: format!("expected {dim} rows, found {} before end of input", rows.len()),
        });
    }
    Ok(ComplexMatrix::from_rows(rows).expect("row lengths checked"))
}

/// 17 significant digits, which reproduces every f64 exactly on re-parse.
fn exact(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_entry(z: Complex64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        exact(z.re)
    } else {
        format!("{}:{}", exact(z.re), exact(z.im))
    }
}

pub fn write_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("{}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|&z| format_entry(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Fixed-point decimal with 12 significant digits. Magnitudes below 1e-15
/// print as zero and negative zero is normalized.
pub fn format_sig12(x: f64) -> String {
    const SIG: i32 = 12;
    const MAX_DECIMALS: i32 = 15;
    if !x.is_finite() {
        return format!("{x}");
    }
    if x.abs() < 1e-15 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (SIG - 1 - magnitude).clamp(0, MAX_DECIMALS) as usize;
    let s = format!("{x:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        return "0".into();
    }
    s
}

pub const CSV_HEADER: &str = "b,p,iq,negativity_sum,negativity_excess,concurrence,skipped";

pub fn write_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let p = row.p.map(format_sig12).unwrap_or_default();
        match &row.values {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},0",
                    format_sig12(row.b),
                    p,
                    format_sig12(v.iq),
                    format_sig12(v.negativity_sum),
                    format_sig12(v.negativity_excess()),
                    format_sig12(v.concurrence),
                );
            }
            None => {
                let _ = writeln!(out, "{},{},,,,,1", format_sig12(row.b), p);
            }
        }
    }
    out
}
