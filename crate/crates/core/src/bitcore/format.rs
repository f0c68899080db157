//! Text formats.
//!
//! `.bm`: one row per line written with `0`/`1`, every line the same length.
//! Lines whose first non-blank character is `#` are comments; blank lines are
//! ignored.
//!
//! `.fam`: a `ground <m>` header, then one member per line as space-separated
//! 1-based elements, with `-` for the empty set. Same comment rules.
//!
//! Both formats preserve row order, and writing then re-reading is exact.

use super::family::SetFamily;
use super::matrix::BinaryMatrix;
use super::row::{BitRow, MAX_WIDTH};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_bm(text: &str) -> Result<BinaryMatrix> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut width = None;
    for (line, content) in content_lines(text) {
        let row: BitRow = content.parse().map_err(|e| match e {
            Error::Parse { message, .. } => parse_err(line, message),
            other => parse_err(line, other.to_string()),
        })?;
        match width {
            None => width = Some(row.width()),
            Some(w) if w != row.width() => {
                return Err(parse_err(
                    line,
                    format!("row has {} columns, expected {w}", row.width()),
                ))
            }
            _ => {}
        }
        rows.push(row);
        lines.push(line);
    }
    BinaryMatrix::new(rows).map_err(|e| match e {
        Error::DuplicateRow { index, first } => parse_err(
            lines[index],
            format!("duplicate of the row on line {}", lines[first]),
        ),
        Error::Empty => parse_err(0, "no rows"),
        other => other,
    })
}

pub fn parse_fam(text: &str) -> Result<SetFamily> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `ground <m>` header"))?;
    let ground: usize = header
        .strip_prefix("ground")
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(header_line, "expected `ground <m>`"))?;
    if ground == 0 || ground > MAX_WIDTH {
        return Err(parse_err(
            header_line,
            format!("ground size must be in 1..={MAX_WIDTH}"),
        ));
    }

    let mut sets = Vec::new();
    let mut set_lines = Vec::new();
    for (line, content) in lines {
        let row = if content == "-" {
            BitRow::zeros(ground)?
        } else {
            let mut elements = Vec::new();
            for token in content.split_whitespace() {
                let e: usize = token
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid element `{token}`")))?;
                if e == 0 || e > ground {
                    return Err(parse_err(line, format!("element {e} outside 1..={ground}")));
                }
                if elements.contains(&e) {
                    return Err(parse_err(line, format!("element {e} repeated")));
                }
                elements.push(e);
            }
            BitRow::from_elements(ground, &elements)?
        };
        sets.push(row);
        set_lines.push(line);
    }
    SetFamily::new(ground, sets).map_err(|e| match e {
        Error::DuplicateRow { index, first } => parse_err(
            set_lines[index],
            format!("duplicate of the set on line {}", set_lines[first]),
        ),
        Error::Empty => parse_err(header_line, "family has no members"),
        other => other,
    })
}
