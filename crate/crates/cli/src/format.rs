//! Text formats written and read by the CLI.
//!
//! Juddian tables use fixed 10-decimal numbers; spectrum tables use 12
//! significant digits (C `%.12g` style). Decimal separator is always `.`.

use std::fmt::Write as _;

use juddian_core::juddian::JuddianPoint;
use juddian_core::rabi::{Parity, SpectrumTable};
use serde::Deserialize;

use crate::error::CliError;

pub const JUDDIAN_CSV_HEADER: &str = "N,index,lambda,g,E,det_residual";
pub const SPECTRUM_CSV_HEADER: &str = "g,parity,level,energy";

pub fn fixed10(v: f64) -> String {
    let s = format!("{v:.10}");
    // never print "-0.0000000000"
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// `%.12g`: 12 significant digits, trailing zeros trimmed, exponent form
/// outside `1e-4 ≤ |v| < 1e12`.
pub fn sig12(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn juddian_csv(points: &[JuddianPoint]) -> String {
    let mut out = String::new();
    out.push_str(JUDDIAN_CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            p.n,
            p.root_index,
            fixed10(p.lambda),
            fixed10(p.g),
            fixed10(p.energy),
            fixed10(p.det_residual)
        );
    }
    out
}

pub fn juddian_json(points: &[JuddianPoint]) -> String {
    if points.is_empty() {
        return "[]\n".to_string();
    }
    let mut out = String::from("[\n");
    for (i, p) in points.iter().enumerate() {
        let _ = write!(
            out,
            "  {{\"N\": {}, \"index\": {}, \"lambda\": {}, \"g\": {}, \"E\": {}}}",
            p.n,
            p.root_index,
            fixed10(p.lambda),
            fixed10(p.g),
            fixed10(p.energy)
        );
        out.push_str(if i + 1 < points.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub fn spectrum_csv(table: &SpectrumTable) -> String {
    let mut out = String::new();
    out.push_str(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        for parity in [Parity::Plus, Parity::Minus] {
            for (level, e) in row.energies(parity).iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{}", sig12(row.g), parity.value(), level, sig12(*e));
            }
        }
    }
    out
}

/// One row of a spectrum CSV as read back.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    pub g: f64,
    pub parity: i32,
    pub level: usize,
    pub energy: f64,
}

pub fn parse_spectrum_csv(text: &str) -> Result<Vec<SpectrumRecord>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == SPECTRUM_CSV_HEADER => {}
        Some((_, h)) => {
            return Err(CliError::Parse {
                line: 1,
                msg: format!("expected header `{SPECTRUM_CSV_HEADER}`, found `{h}`"),
            })
        }
        None => {
            return Err(CliError::Parse {
                line: 1,
                msg: "empty spectrum file".into(),
            })
        }
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 fields, found {}", fields.len())));
        }
        let num = |s: &str, what: &str| -> Result<f64, CliError> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(format!("invalid {what} `{s}`")))
        };
        let g = num(fields[0], "g")?;
        let parity: i32 = fields[1]
            .trim()
            .parse()
            .ok()
            .filter(|p| *p == 1 || *p == -1)
            .ok_or_else(|| bad(format!("parity must be 1 or -1, found `{}`", fields[1])))?;
        let level: usize = fields[2]
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid level `{}`", fields[2])))?;
        let energy = num(fields[3], "energy")?;
        out.push(SpectrumRecord { g, parity, level, energy });
    }
    Ok(out)
}

/// One Juddian point as read back from JSON.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    #[serde(rename = "N")]
    pub n: usize,
    pub index: usize,
    pub lambda: f64,
    pub g: f64,
    #[serde(rename = "E")]
    pub energy: f64,
}

pub fn parse_points_json(text: &str) -> Result<Vec<PointRecord>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}
