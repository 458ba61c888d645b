//! Instance files: either one `q r` pair per line (with `#` comments) or a
//! JSON array of `[q, r]` pairs.

use crate::error::{Error, Result};
use crate::hexgrid::HexAddr;

/// Parses either instance format, picking JSON when the first significant
/// character is `[`.
pub fn parse_instance(text: &str) -> Result<Vec<HexAddr>> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with('[') => parse_json(text),
        _ => parse_text(text),
    }
}

pub fn parse_text(text: &str) -> Result<Vec<HexAddr>> {
    let mut hexes = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected two integers \"q r\", found {} field(s)", fields.len()),
            });
        }
        let coord = |s: &str| {
            s.parse::<i32>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid integer {s:?}"),
            })
        };
        hexes.push(HexAddr::new(coord(fields[0])?, coord(fields[1])?));
    }
    Ok(hexes)
}

pub fn parse_json(text: &str) -> Result<Vec<HexAddr>> {
    // strip comments so both formats accept the same annotations
    let stripped: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    serde_json::from_str::<Vec<HexAddr>>(&stripped).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

pub fn to_text(hexes: &[HexAddr]) -> String {
    hexes.iter().map(|h| format!("{} {}\n", h.q, h.r)).collect()
}

pub fn to_json(hexes: &[HexAddr]) -> String {
    serde_json::to_string(hexes).expect("address list serializes")
}
