//! Rendering helpers and the single place output is written.

use genus2::algebra::{Field, FieldElement};
use genus2::census::write_atomic;
use genus2::curve::{element_to_coeff_json, CoeffJson};
use genus2::Result;
use serde::Serialize;

use crate::{Format, Global};

/// Writes `text` to `--out` (atomically) or to stdout.
pub fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn coeff(f: &Field, a: &FieldElement) -> CoeffJson {
    element_to_coeff_json(f, a)
}

pub fn field_name(f: &Field) -> String {
    if f.degree() == 1 {
        format!("F_{}", f.p())
    } else {
        format!("F_{}^{}", f.p(), f.degree())
    }
}

/// Aligned `name  value` lines.
pub fn table(rows: &[(&str, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:w$}  {v}\n")).collect()
}

/// A header line plus one data line, with commas in values replaced by `;`.
pub fn csv(rows: &[(&str, String)]) -> String {
    let head: Vec<&str> = rows.iter().map(|(k, _)| *k).collect();
    let vals: Vec<String> = rows.iter().map(|(_, v)| v.replace(',', ";")).collect();
    format!("{}\n{}\n", head.join(","), vals.join(","))
}

/// Renders a flat record in the requested format; `json_value` is used for JSON.
pub fn record<T: Serialize>(g: &Global, rows: &[(&str, String)], json_value: &T) -> Result<String> {
    match g.format {
        Format::Json => json(json_value),
        Format::Csv => Ok(csv(rows)),
        Format::Table => Ok(table(rows)),
    }
}
