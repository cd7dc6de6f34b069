//! Command implementations behind the `approxsym` binary.

pub mod commands;
pub mod grid;
pub mod report;

use approxsym_core::algebra::parse_rational;
use approxsym_core::Rational;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] approxsym_core::Error),
    #[error("grid: {0}")]
    Grid(String),
    #[error("{0}")]
    Usage(String),
}

pub fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Usage(format!("bad number {s:?}: {e}")))
}

/// `"a,b"` as an interval.
pub fn range_arg(s: &str) -> Result<(Rational, Rational), CliError> {
    match s.split_once(',') {
        Some((a, b)) => Ok((rational_arg(a)?, rational_arg(b)?)),
        None => Err(CliError::Usage(format!(
            "expected a range 'a,b', got {s:?}"
        ))),
    }
}

/// `"c=1,k1=0.5"` as a parameter map.
pub fn params_arg(s: &str) -> Result<BTreeMap<String, Rational>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| match p.split_once('=') {
            Some((k, v)) => Ok((k.trim().to_string(), rational_arg(v)?)),
            None => Err(CliError::Usage(format!("expected name=value, got {p:?}"))),
        })
        .collect()
}

pub fn list_arg(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(rational_arg).collect()
}
