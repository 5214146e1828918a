//! Typed serialization of points, tangents and frames: a one-line header
//! naming the kind (and, for tangents, the base-point file) followed by the
//! plain matrix text format.

use std::path::Path;

use crate::error::{Error, Result};
use crate::numkernel::{read_matrix, write_matrix, Matrix};

/// A matrix together with the role recorded in a typed file.
#[derive(Debug, Clone, PartialEq)]
pub enum TypedMatrix {
    Point(Matrix),
    /// Tangent matrix plus the recorded base-point path, if any.
    Tangent(Matrix, Option<String>),
    Frame(Matrix),
    /// File had no type header.
    Bare(Matrix),
}

impl TypedMatrix {
    pub fn matrix(&self) -> &Matrix {
        match self {
            TypedMatrix::Point(m)
            | TypedMatrix::Tangent(m, _)
            | TypedMatrix::Frame(m)
            | TypedMatrix::Bare(m) => m,
        }
    }
}

pub fn write_typed_matrix(t: &TypedMatrix) -> String {
    match t {
        TypedMatrix::Point(m) => format!("point\n{}", write_matrix(m)),
        TypedMatrix::Tangent(m, base) => format!(
            "tangent {}\n{}",
            base.as_deref().unwrap_or("-"),
            write_matrix(m)
        ),
        TypedMatrix::Frame(m) => format!("frame\n{}", write_matrix(m)),
        TypedMatrix::Bare(m) => write_matrix(m),
    }
}

/// Reads a typed file; files without a header parse as [`TypedMatrix::Bare`].
pub fn read_typed_matrix(text: &str) -> Result<TypedMatrix> {
    let trimmed = text.trim_start();
    let first = trimmed
        .lines()
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    let mut tokens = first.split_whitespace();
    match tokens.next() {
        Some("point") => {
            let body = rest_after_first_line(trimmed);
            Ok(TypedMatrix::Point(read_matrix(body)?))
        }
        Some("tangent") => {
            let base = tokens.next().filter(|&b| b != "-").map(str::to_owned);
            let body = rest_after_first_line(trimmed);
            Ok(TypedMatrix::Tangent(read_matrix(body)?, base))
        }
        Some("frame") => {
            let body = rest_after_first_line(trimmed);
            Ok(TypedMatrix::Frame(read_matrix(body)?))
        }
        _ => Ok(TypedMatrix::Bare(read_matrix(trimmed)?)),
    }
}

fn rest_after_first_line(text: &str) -> &str {
    match text.find('\n') {
        Some(pos) => &text[pos + 1..],
        None => "",
    }
}

pub fn read_typed_matrix_file(path: &Path) -> Result<TypedMatrix> {
    read_typed_matrix(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Field;

    #[test]
    fn typed_round_trips() {
        let m = Matrix::diagonal(&[1.0, 0.0]);
        for t in [
            TypedMatrix::Point(m.clone()),
            TypedMatrix::Tangent(m.clone(), Some("base.txt".into())),
            TypedMatrix::Tangent(m.clone(), None),
            TypedMatrix::Frame(m.clone()),
            TypedMatrix::Bare(m.clone()),
        ] {
            assert_eq!(read_typed_matrix(&write_typed_matrix(&t)).unwrap(), t);
        }
    }

    #[test]
    fn bare_matrix_parses_without_header() {
        let text = write_matrix(&Matrix::identity(2, Field::Complex));
        match read_typed_matrix(&text).unwrap() {
            TypedMatrix::Bare(m) => assert_eq!(m, Matrix::identity(2, Field::Complex)),
            other => panic!("expected bare matrix, got {other:?}"),
        }
    }
}
