//! Plain-text matrix serialization.
//!
//! Line 1 is `rows cols field` with field `real` or `complex`, followed by
//! one line per row. Real entries are whitespace-separated decimals; complex
//! entries are consecutive `re im` pairs. Numbers are written with Rust's
//! shortest round-trip formatting, so reading back reproduces the doubles
//! bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::matrix::{Field, Matrix};
use crate::error::{Error, Result};

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.field());
    for r in 0..m.rows() {
        let mut line = String::new();
        for c in 0..m.cols() {
            if c > 0 {
                line.push(' ');
            }
            let z = m.get(r, c);
            match m.field() {
                Field::Real => {
                    let _ = write!(line, "{}", z.re);
                }
                Field::Complex => {
                    let _ = write!(line, "{} {}", z.re, z.im);
                }
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn read_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
    let mut parts = header.split_whitespace();
    let rows: usize = parse_token(parts.next(), "row count")?;
    let cols: usize = parse_token(parts.next(), "column count")?;
    let field: Field = parts
        .next()
        .ok_or_else(|| Error::Parse("missing field tag".into()))?
        .parse()?;
    if parts.next().is_some() {
        return Err(Error::Parse("trailing tokens in matrix header".into()));
    }

    let per_entry = match field {
        Field::Real => 1,
        Field::Complex => 2,
    };
    let mut m = Matrix::zeros(rows, cols, field);
    if cols == 0 {
        // Zero-width rows serialize as blank lines, which the line filter
        // above has already dropped.
        return Ok(m);
    }
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number `{tok}` in row {r}")))
            })
            .collect::<Result<_>>()?;
        if values.len() != cols * per_entry {
            return Err(Error::Parse(format!(
                "row {r} has {} numbers, expected {}",
                values.len(),
                cols * per_entry
            )));
        }
        for c in 0..cols {
            let z = match field {
                Field::Real => Complex64::new(values[c], 0.0),
                Field::Complex => Complex64::new(values[2 * c], values[2 * c + 1]),
            };
            m.set(r, c, z);
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after matrix body".into()));
    }
    Ok(m)
}

fn parse_token(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}

pub fn write_matrix_file(path: &Path, m: &Matrix) -> Result<()> {
    std::fs::write(path, write_matrix(m))?;
    Ok(())
}

pub fn read_matrix_file(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    read_matrix(&text)
}
