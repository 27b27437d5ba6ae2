//! Parsers for command-line values.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::CliError;

/// Parses a comma-separated list of positive integers. An empty string is an
/// empty list.
pub fn parse_int_list(s: &str) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let part = part.trim();
            match part.parse::<usize>() {
                Ok(0) | Err(_) => Err(CliError::Input(format!(
                    "`{part}` is not a positive integer in list `{s}`"
                ))),
                Ok(v) => Ok(v),
            }
        })
        .collect()
}

/// Where a chain comes from: `krawtchouk:N` or `file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSelector {
    Krawtchouk(usize),
    File(PathBuf),
}

impl FromStr for ChainSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if let Some(n) = s.strip_prefix("krawtchouk:") {
            match n.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(ChainSelector::Krawtchouk(n)),
                _ => Err(CliError::Input(format!(
                    "`{n}` is not a valid Krawtchouk length (need an integer >= 1)"
                ))),
            }
        } else if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(CliError::Input("empty path after `file:`".into()));
            }
            Ok(ChainSelector::File(PathBuf::from(path)))
        } else {
            Err(CliError::Input(format!(
                "chain selector `{s}` must be `krawtchouk:N` or `file:PATH`"
            )))
        }
    }
}

impl fmt::Display for ChainSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSelector::Krawtchouk(n) => write!(f, "krawtchouk:{n}"),
            ChainSelector::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A graph file path, with or without a `file:` prefix.
pub fn parse_graph_path(s: &str) -> Result<PathBuf, CliError> {
    let path = s.strip_prefix("file:").unwrap_or(s);
    if path.is_empty() {
        return Err(CliError::Input("empty graph path".into()));
    }
    Ok(PathBuf::from(path))
}

/// Value of a thread-cap variable such as `FRACTAL_PST_THREADS`.
pub fn parse_thread_cap(s: &str) -> Result<usize, CliError> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Input(format!("thread cap `{s}` must be a positive integer"))),
    }
}
