//! Text parsers for the two ingestion formats.
//!
//! `.dat`: whitespace-delimited columns, `#`-prefixed comment lines
//! skipped, an optional single header row auto-detected by a non-numeric
//! first token.
//!
//! `.csv`: RFC-4180 subset — comma separator, optional double-quoted
//! fields with `""` escapes, no record separators inside quotes, optional
//! header row detected the same way.
//!
//! Both reject NaN/infinity tokens and report the 1-based line of every
//! failure. These functions must never panic, whatever the input; they
//! are fuzzed directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which column of a delimited file holds the series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnSelector {
    /// 0-based column index.
    Index(usize),
    /// Header name; requires the file to have a header row.
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl std::fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Index(i) => write!(f, "{i}"),
            ColumnSelector::Name(n) => write!(f, "{n}"),
        }
    }
}

fn looks_numeric(token: &str) -> bool {
    token.trim().parse::<f64>().is_ok()
}

fn parse_value(token: &str, path: &str, line: usize, column: usize) -> Result<f64> {
    let parsed = token.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    parsed.ok_or_else(|| Error::NonNumericValue {
        path: path.to_string(),
        line,
        column,
        token: token.trim().to_string(),
    })
}

fn resolve_column(header: Option<&[String]>, column: &ColumnSelector, path: &str) -> Result<usize> {
    match column {
        ColumnSelector::Index(i) => Ok(*i),
        ColumnSelector::Name(name) => header
            .and_then(|cells| cells.iter().position(|c| c.trim() == name))
            .ok_or_else(|| Error::ColumnNotFound {
                path: path.to_string(),
                column: name.clone(),
            }),
    }
}

fn field_at<'a>(fields: &'a [String], index: usize, path: &str, line: usize) -> Result<&'a String> {
    fields.get(index).ok_or_else(|| Error::ParseError {
        path: path.to_string(),
        line,
        message: format!(
            "expected at least {} fields, found {}",
            index + 1,
            fields.len()
        ),
    })
}

/// Parses whitespace-delimited `.dat` text, extracting one numeric column.
///
/// `skip_rows` physical lines are dropped first; `path` only labels errors.
pub fn parse_dat(
    text: &str,
    column: &ColumnSelector,
    skip_rows: usize,
    path: &str,
) -> Result<Vec<f64>> {
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if idx < skip_rows {
            continue;
        }
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = trimmed.split_whitespace().map(str::to_string).collect();
        rows.push((idx + 1, fields));
    }
    extract_column(rows, column, path)
}

/// Parses RFC-4180-subset CSV text, extracting one numeric column.
pub fn parse_csv(
    text: &str,
    column: &ColumnSelector,
    skip_rows: usize,
    path: &str,
) -> Result<Vec<f64>> {
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        if idx < skip_rows {
            continue;
        }
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_csv_record(line).map_err(|message| Error::ParseError {
            path: path.to_string(),
            line: idx + 1,
            message,
        })?;
        rows.push((idx + 1, fields));
    }
    extract_column(rows, column, path)
}

/// Shared tail: header auto-detection, column resolution, numeric parsing.
fn extract_column(
    rows: Vec<(usize, Vec<String>)>,
    column: &ColumnSelector,
    path: &str,
) -> Result<Vec<f64>> {
    let has_header = rows
        .first()
        .and_then(|(_, fields)| fields.first())
        .map(|first| !looks_numeric(first))
        .unwrap_or(false);
    let header = if has_header {
        Some(rows[0].1.as_slice())
    } else {
        None
    };
    let index = resolve_column(header, column, path)?;
    let data = if has_header { &rows[1..] } else { &rows[..] };
    let mut values = Vec::with_capacity(data.len());
    for (line, fields) in data {
        let token = field_at(fields, index, path, *line)?;
        values.push(parse_value(token, path, *line, index)?);
    }
    Ok(values)
}

/// Splits one CSV record into fields, honoring double-quoted fields with
/// `""` escapes. Returns a message (no location) on malformed quoting.
fn split_csv_record(line: &str) -> std::result::Result<Vec<String>, String> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut chars = line.chars().peekable();
    let mut in_quotes = false;
    let mut was_quoted = false;

    while let Some(c) = chars.next() {
        if in_quotes {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push(c);
            }
        } else {
            match c {
                ',' => {
                    fields.push(std::mem::take(&mut field));
                    was_quoted = false;
                }
                '"' if field.is_empty() && !was_quoted => {
                    in_quotes = true;
                    was_quoted = true;
                }
                '"' => return Err("unexpected quote inside unquoted field".to_string()),
                _ if was_quoted && !c.is_whitespace() => {
                    return Err("data after closing quote".to_string())
                }
                _ => field.push(c),
            }
        }
    }
    if in_quotes {
        return Err("unterminated quoted field".to_string());
    }
    fields.push(field);
    Ok(fields)
}
