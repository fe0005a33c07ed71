//! Text formats: the table file and the line-oriented report.
//!
//! A table file reads
//!
//! ```text
//! # optional comments
//! order 4
//! 0 1 2 3
//! 1 2 3 0
//! 2 3 0 1
//! 3 0 1 2
//! subloop 0 2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored anywhere. The
//! `subloop` line is optional.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::magma::{CayleyTable, MAX_ORDER};

/// Contents of a table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub table: CayleyTable,
    pub subloop: Option<Vec<usize>>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(e),
    }
}

fn integers(line: usize, words: &[&str]) -> Result<Vec<usize>> {
    words
        .iter()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{w}`")))
        })
        .collect()
}

/// Parses a table file. Errors carry 1-based line numbers.
pub fn parse_table_file(text: &str) -> Result<TableFile> {
    let mut order: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut subloop: Option<Vec<usize>> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "order" => {
                if order.is_some() {
                    return Err(syntax(line, "duplicate order line"));
                }
                let [n] = integers(line, &words[1..])?[..] else {
                    return Err(syntax(line, "expected `order N`"));
                };
                if n == 0 {
                    return Err(at_line(line, Error::ZeroOrder));
                }
                if n > MAX_ORDER {
                    return Err(at_line(
                        line,
                        Error::OrderTooLarge {
                            order: n,
                            limit: MAX_ORDER,
                        },
                    ));
                }
                order = Some(n);
            }
            "subloop" => {
                let Some(n) = order else {
                    return Err(syntax(line, "subloop line before order line"));
                };
                if rows.len() < n {
                    return Err(syntax(line, format!("expected {n} rows")));
                }
                if subloop.is_some() {
                    return Err(syntax(line, "duplicate subloop line"));
                }
                let elements = integers(line, &words[1..])?;
                if elements.is_empty() {
                    return Err(syntax(line, "empty subloop line"));
                }
                subloop = Some(elements);
            }
            _ => {
                let Some(n) = order else {
                    return Err(syntax(line, "expected `order N` first"));
                };
                if subloop.is_some() || rows.len() == n {
                    return Err(syntax(line, "unexpected content after the table"));
                }
                let row = integers(line, &words)?;
                if row.len() != n {
                    return Err(at_line(
                        line,
                        Error::LengthMismatch {
                            expected: n,
                            actual: row.len(),
                        },
                    ));
                }
                if let Some(col) = row.iter().position(|&v| v >= n) {
                    return Err(at_line(
                        line,
                        Error::OutOfRangeEntry {
                            row: rows.len(),
                            col,
                            value: row[col],
                            order: n,
                        },
                    ));
                }
                rows.push(row);
            }
        }
    }
    let Some(n) = order else {
        return Err(syntax(last_line + 1, "missing order line"));
    };
    if rows.len() < n {
        return Err(syntax(last_line + 1, format!("expected {n} rows")));
    }
    let flat: Vec<usize> = rows.into_iter().flatten().collect();
    Ok(TableFile {
        table: CayleyTable::new(n, &flat)?,
        subloop,
    })
}

/// Renders a table file; `comments` become leading `#` lines.
pub fn serialize_table(table: &CayleyTable, subloop: Option<&[usize]>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let n = table.order();
    let _ = writeln!(out, "order {n}");
    for x in 0..n {
        let row: Vec<String> = table.row(x).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(h) = subloop {
        let items: Vec<String> = h.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "subloop {}", items.join(" "));
    }
    out
}

/// Compact rendering of a canonical key: one base-36 digit per entry.
pub fn key_string(key: &[u8]) -> String {
    key.iter()
        .map(|&b| char::from_digit(b as u32, 36).unwrap_or('?'))
        .collect()
}

/// A line-oriented `key: value` document. Keys keep insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub const TIMING_KEY: &'static str = "time_ms";

    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Keys starting with `prefix`, in order.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> {
        self.entries
            .iter()
            .filter(move |(k, _)| k.starts_with(prefix))
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// The report without its timing line.
    pub fn without_timing(&self) -> Report {
        Report {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k != Self::TIMING_KEY)
                .cloned()
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut r = Report::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| syntax(i + 1, "expected `key: value`"))?;
            r.push(k, v);
        }
        Ok(r)
    }
}
