//! Deterministic text artifacts. Reals are written with 17 significant
//! digits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use se2_coset::series::format_real;
use se2_coset::LatticeShell;

use crate::error::{CliError, Result};

/// JSON number, or `null` when not finite.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format_real(x)
    } else {
        "null".to_string()
    }
}

/// JSON string literal.
pub fn string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Flat JSON object from already-encoded values.
pub fn object(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  {}: {}", string(k), v)).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

pub fn shells_json(shells: &[LatticeShell]) -> String {
    let mut out = String::from("[");
    for (i, s) in shells.iter().enumerate() {
        let angles: Vec<String> = s.angles.iter().map(|a| num(*a)).collect();
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(
            out,
            "{sep}\n  {{\"rho_sq\": {}, \"rho\": {}, \"angles\": [{}]}}",
            s.rho_sq,
            num(s.rho),
            angles.join(", ")
        );
    }
    out.push_str("\n]\n");
    out
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}
