//! Sequence files: day-major JSON and player-major CSV.
//!
//! JSON: `{"n": 3, "days": [[1,2,3],[2,3,1],[3,1,2]]}` with
//! `days[t-1][i-1]` the item of player `i` on day `t`.
//!
//! CSV: one row per player, one column per day, no header, the same layout
//! as the printed tables.

use std::path::Path;

use serde::Deserialize;

use crate::assignment::RepeatedAssignment;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }

    fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

pub fn parse(text: &str, format: Option<Format>) -> Result<RepeatedAssignment> {
    match format.unwrap_or_else(|| Format::sniff(text)) {
        Format::Json => parse_json(text),
        Format::Csv => parse_csv(text),
    }
}

pub fn read_file(path: &Path) -> Result<RepeatedAssignment> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text, Format::from_path(path))
}

pub fn write_file(path: &Path, seq: &RepeatedAssignment) -> Result<()> {
    let text = match Format::from_path(path).unwrap_or(Format::Json) {
        Format::Json => to_json(seq),
        Format::Csv => to_csv(seq),
    };
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSequence {
    n: usize,
    days: Vec<Vec<usize>>,
}

pub fn parse_json(text: &str) -> Result<RepeatedAssignment> {
    let raw: JsonSequence = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    RepeatedAssignment::new(raw.n, raw.days).map_err(|e| Error::Parse {
        position: "days".into(),
        message: e.to_string(),
    })
}

pub fn parse_csv(text: &str) -> Result<RepeatedAssignment> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .enumerate()
            .map(|(field, cell)| {
                cell.trim().parse::<usize>().map_err(|e| Error::Parse {
                    position: format!("line {}, field {}", line_no + 1, field + 1),
                    message: format!("{:?}: {e}", cell.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    position: format!("line {}", line_no + 1),
                    message: format!("{} fields, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            position: "line 1".into(),
            message: "empty table".into(),
        });
    }
    RepeatedAssignment::from_rows(&rows).map_err(|e| Error::Parse {
        position: "table".into(),
        message: e.to_string(),
    })
}

/// Compact JSON with one day per line.
pub fn to_json(seq: &RepeatedAssignment) -> String {
    let days: Vec<String> = seq
        .days()
        .iter()
        .map(|day| {
            let cells: Vec<String> = day.iter().map(|x| x.to_string()).collect();
            format!("    [{}]", cells.join(","))
        })
        .collect();
    format!("{{\n  \"n\": {},\n  \"days\": [\n{}\n  ]\n}}\n", seq.n(), days.join(",\n"))
}

pub fn to_csv(seq: &RepeatedAssignment) -> String {
    let mut out = String::new();
    for row in seq.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
