//! Flat structured-text spec files: `key = value` lines with arrays in
//! brackets. Either an explicit braiding matrix is given or a generalized
//! Cartan matrix with its symmetrizing diagonal.
//!
//! ```text
//! # positive part of U_q(sl_3)
//! dim = 2
//! names = [E1, E2]
//! cartan = [[2, -1], [-1, 2]]
//! diag = [1, 1]
//! ```
//!
//! Explicit mode replaces `cartan`/`diag` with `q = [[..], ..]` whose
//! entries use the scalar expression grammar.

use thiserror::Error;

use crate::scalar::parse_scalar;
use crate::tensorspace::{BraidingSpec, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("spec parse error at line {line}: {msg}")]
pub struct SpecParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, SpecParseError> {
    Err(SpecParseError {
        line,
        msg: msg.into(),
    })
}

pub fn parse_spec(text: &str) -> Result<BraidingSpec, SpecParseError> {
    let mut dim: Option<(usize, usize)> = None;
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut q: Option<(usize, Vec<Vec<String>>)> = None;
    let mut cartan: Option<(usize, Vec<Vec<String>>)> = None;
    let mut diag: Option<(usize, Vec<String>)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(lineno, "expected 'key = value'");
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "dim" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| SpecParseError {
                        line: lineno,
                        msg: format!("invalid dimension '{value}'"),
                    })?;
                set_once(&mut dim, (lineno, d), "dim", lineno)?;
            }
            "names" => {
                let list = parse_flat_list(value, lineno)?;
                set_once(&mut names, (lineno, list), "names", lineno)?;
            }
            "q" => {
                let rows = parse_nested_list(value, lineno)?;
                set_once(&mut q, (lineno, rows), "q", lineno)?;
            }
            "cartan" => {
                let rows = parse_nested_list(value, lineno)?;
                set_once(&mut cartan, (lineno, rows), "cartan", lineno)?;
            }
            "diag" => {
                let list = parse_flat_list(value, lineno)?;
                set_once(&mut diag, (lineno, list), "diag", lineno)?;
            }
            other => return err(lineno, format!("unknown key '{other}'")),
        }
    }

    let (dim_line, dim) = dim.ok_or(SpecParseError {
        line: 0,
        msg: "missing 'dim'".into(),
    })?;
    let (names_line, names) = names.ok_or(SpecParseError {
        line: 0,
        msg: "missing 'names'".into(),
    })?;
    if names.len() != dim {
        return err(names_line, format!("expected {dim} names, got {}", names.len()));
    }
    for name in &names {
        if name == "q" {
            return err(names_line, "generator name 'q' collides with the variable");
        }
        if !name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic())
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return err(names_line, format!("invalid generator name '{name}'"));
        }
    }

    match (q, cartan, diag) {
        (Some((q_line, rows)), None, None) => {
            let mut matrix = Vec::with_capacity(dim);
            if rows.len() != dim {
                return err(q_line, format!("expected {dim} rows in q"));
            }
            for row in &rows {
                if row.len() != dim {
                    return err(q_line, format!("expected {dim} entries per q row"));
                }
                let mut out_row = Vec::with_capacity(dim);
                for entry in row {
                    let s = parse_scalar(entry).map_err(|e| SpecParseError {
                        line: q_line,
                        msg: format!("in entry '{entry}': {e}"),
                    })?;
                    out_row.push(s);
                }
                matrix.push(out_row);
            }
            BraidingSpec::new(names, matrix).map_err(|e| tensor_err(e, q_line))
        }
        (None, Some((c_line, rows)), Some((d_line, diag_list))) => {
            if rows.len() != dim {
                return err(c_line, format!("expected {dim} rows in cartan"));
            }
            let mut cartan_matrix = Vec::with_capacity(dim);
            for row in &rows {
                if row.len() != dim {
                    return err(c_line, format!("expected {dim} entries per cartan row"));
                }
                let mut out_row = Vec::with_capacity(dim);
                for entry in row {
                    let v: i64 = entry.parse().map_err(|_| SpecParseError {
                        line: c_line,
                        msg: format!("invalid cartan entry '{entry}'"),
                    })?;
                    out_row.push(v);
                }
                cartan_matrix.push(out_row);
            }
            let mut diag_values = Vec::with_capacity(dim);
            for entry in &diag_list {
                let v: i64 = entry.parse().map_err(|_| SpecParseError {
                    line: d_line,
                    msg: format!("invalid diag entry '{entry}'"),
                })?;
                diag_values.push(v);
            }
            if diag_values.len() != dim {
                return err(d_line, format!("expected {dim} diag entries"));
            }
            BraidingSpec::from_cartan(names, &cartan_matrix, &diag_values)
                .map_err(|e| tensor_err(e, c_line))
        }
        (None, Some(_), None) => err(dim_line, "cartan mode requires 'diag'"),
        (None, None, Some(_)) => err(dim_line, "'diag' is only valid with 'cartan'"),
        (Some((q_line, _)), Some(_), _) | (Some((q_line, _)), _, Some(_)) => {
            err(q_line, "'q' and 'cartan'/'diag' are mutually exclusive")
        }
        (None, None, None) => err(dim_line, "missing braiding: give 'q' or 'cartan' + 'diag'"),
    }
}

fn tensor_err(e: TensorError, line: usize) -> SpecParseError {
    SpecParseError {
        line,
        msg: e.to_string(),
    }
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    key: &str,
    line: usize,
) -> Result<(), SpecParseError> {
    if slot.is_some() {
        return err(line, format!("duplicate key '{key}'"));
    }
    *slot = Some(value);
    Ok(())
}

/// `[a, b, c]` -> trimmed element strings.
fn parse_flat_list(value: &str, line: usize) -> Result<Vec<String>, SpecParseError> {
    let inner = strip_brackets(value, line)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top_level(inner)
        .into_iter()
        .map(|s| s.trim().to_string())
        .collect())
}

/// `[[a, b], [c, d]]` -> rows of trimmed element strings.
fn parse_nested_list(value: &str, line: usize) -> Result<Vec<Vec<String>>, SpecParseError> {
    let inner = strip_brackets(value, line)?;
    let mut rows = Vec::new();
    for part in split_top_level(inner) {
        let part = part.trim();
        rows.push(parse_flat_list(part, line)?);
    }
    Ok(rows)
}

fn strip_brackets(value: &str, line: usize) -> Result<&str, SpecParseError> {
    let v = value.trim();
    if !v.starts_with('[') || !v.ends_with(']') {
        return err(line, format!("expected a bracketed list, got '{v}'"));
    }
    Ok(&v[1..v.len() - 1])
}

/// Split on commas that are not nested inside brackets or parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() || !parts.is_empty() {
        parts.push(&s[start..]);
    }
    parts
}
