//! `key=value` instance files.
//!
//! ```text
//! # C7 x| C3 over F7
//! p=7
//! f=1
//! q=3
//! A=7
//! action=2
//! ```
//!
//! `#` starts a comment. Required keys are `p`, `f`, `q`, `A` and `action`;
//! `modulus`, `budget` and `seed` are optional. Action rows are separated by
//! `;` and entries by `,`.

use ncomp_core::verifier::Instance;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub p: u64,
    pub f: u32,
    pub modulus: Option<Vec<i64>>,
    pub q: u64,
    pub a: Vec<u64>,
    pub action: Vec<Vec<i64>>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

const KEYS: [&str; 8] = ["p", "f", "modulus", "q", "A", "action", "budget", "seed"];
const REQUIRED: [&str; 5] = ["p", "f", "q", "A", "action"];

fn err(line: usize, col: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("line {line}, column {col}: {msg}"))
}

/// Parses a comma-separated list of integers starting at column `col`.
fn int_list<T: std::str::FromStr>(text: &str, line: usize, col: usize) -> Result<Vec<T>, CliError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        let item = part.trim();
        if item.is_empty() {
            return Err(err(line, col + offset + lead, "expected an integer"));
        }
        out.push(
            item.parse()
                .map_err(|_| err(line, col + offset + lead, format!("invalid integer '{item}'")))?,
        );
        offset += part.len() + 1;
    }
    Ok(out)
}

fn single<T: std::str::FromStr>(text: &str, line: usize, col: usize) -> Result<T, CliError> {
    let mut v = int_list(text, line, col)?;
    if v.len() != 1 {
        return Err(err(line, col, "expected a single integer"));
    }
    Ok(v.remove(0))
}

pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let mut seen: Vec<(&str, usize)> = Vec::new();
    let mut p = None;
    let mut f = None;
    let mut modulus = None;
    let mut q = None;
    let mut a = None;
    let mut action = None;
    let mut budget = None;
    let mut seed = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_col = content.len() - content.trim_start().len() + 1;
        let Some(eq) = content.find('=') else {
            return Err(err(line, key_col, "expected key=value"));
        };
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let value_col = eq + 2 + (value_raw.len() - value_raw.trim_start().len());
        let value = value_raw.trim();
        if key.is_empty() {
            return Err(err(line, key_col, "missing key"));
        }
        let Some(&key) = KEYS.iter().find(|&&k| k == key) else {
            return Err(err(line, key_col, format!("unknown key '{key}'")));
        };
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(err(
                line,
                key_col,
                format!("duplicate key '{key}' (first on line {first})"),
            ));
        }
        seen.push((key, line));
        if value.is_empty() {
            return Err(err(line, value_col, format!("missing value for '{key}'")));
        }
        match key {
            "p" => p = Some(single(value, line, value_col)?),
            "f" => f = Some(single(value, line, value_col)?),
            "q" => q = Some(single(value, line, value_col)?),
            "budget" => budget = Some(single(value, line, value_col)?),
            "seed" => seed = Some(single(value, line, value_col)?),
            "modulus" => modulus = Some(int_list(value, line, value_col)?),
            "A" => a = Some(int_list(value, line, value_col)?),
            "action" => {
                let mut rows = Vec::new();
                let mut offset = 0;
                for row in value.split(';') {
                    rows.push(int_list(row, line, value_col + offset)?);
                    offset += row.len() + 1;
                }
                action = Some(rows);
            }
            _ => unreachable!("key list is exhaustive"),
        }
    }
    let missing: Vec<&str> = REQUIRED
        .iter()
        .copied()
        .filter(|k| !seen.iter().any(|(s, _)| s == k))
        .collect();
    if !missing.is_empty() {
        return Err(CliError::Parse(format!(
            "missing required key(s): {}",
            missing.join(", ")
        )));
    }
    Ok(Config {
        p: p.expect("checked"),
        f: f.expect("checked"),
        modulus,
        q: q.expect("checked"),
        a: a.expect("checked"),
        action: action.expect("checked"),
        budget,
        seed,
    })
}

impl Config {
    pub fn instance(&self) -> Result<Instance, CliError> {
        Ok(Instance::new(
            self.p,
            self.f,
            self.modulus.as_deref(),
            self.q,
            &self.a,
            &self.action,
        )?)
    }
}
