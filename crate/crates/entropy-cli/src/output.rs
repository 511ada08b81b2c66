//! Output plumbing shared by every subcommand: format selection, range and
//! list parsing, and deterministic CSV/JSON emission.

use clap::ValueEnum;
use entropy_numbers::{Error, Result};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive integer range `a..b`, or a single value `a`.
pub fn parse_range(s: &str) -> Result<Vec<u64>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_u64(a)?, parse_u64(b)?),
        None => {
            let v = parse_u64(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range `{s}`")));
    }
    Ok((lo..=hi).collect())
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer `{s}`")))
}

/// Comma-separated list of reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("cannot parse number `{t}`")))
        })
        .collect()
}

/// Envelope for JSON output; CSV emits only the rows.
#[derive(Serialize)]
struct JsonEnvelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    seed: u64,
    truncated: bool,
    rows: &'a [T],
}

/// Serializes `rows` in the requested format to `out` (stdout when absent).
/// Row order is the caller's; commands emit grids sorted by (m, n).
pub fn emit<T: Serialize>(
    rows: &[T],
    format: Format,
    out: Option<&PathBuf>,
    command: &str,
    seed: u64,
    truncated: bool,
) -> Result<()> {
    let text = render(rows, format, command, seed, truncated)?;
    write_text(&text, out)
}

pub fn render<T: Serialize>(
    rows: &[T],
    format: Format,
    command: &str,
    seed: u64,
    truncated: bool,
) -> Result<String> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer
                    .serialize(row)
                    .map_err(|e| Error::InvalidInput(format!("csv serialization failed: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| Error::InvalidInput(format!("csv flush failed: {e}")))?;
            String::from_utf8(bytes)
                .map_err(|e| Error::InvalidInput(format!("csv is not UTF-8: {e}")))
        }
        Format::Json => {
            let envelope = JsonEnvelope { schema: 1, command, seed, truncated, rows };
            let mut text = serde_json::to_string_pretty(&envelope)
                .map_err(|e| Error::InvalidInput(format!("json serialization failed: {e}")))?;
            text.push('\n');
            Ok(text)
        }
    }
}

/// Writes raw pre-formatted text (the line-oriented witness formats).
pub fn write_text(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_inclusively() {
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert_eq!(parse_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn lists_parse() {
        assert_eq!(parse_f64_list("1,0.5, 0.25").unwrap(), vec![1.0, 0.5, 0.25]);
        assert!(parse_f64_list("1,,2").is_err());
    }
}
