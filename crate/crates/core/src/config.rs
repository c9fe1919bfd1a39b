//! Plain-text `key=value` configuration files.

use crate::error::{Error, Result};

/// Parses `key=value` lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| {
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got '{l}'", n + 1)))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn format_kv<K: AsRef<str>>(entries: &[(K, String)]) -> String {
    entries
        .iter()
        .map(|(k, v)| format!("{}={v}\n", k.as_ref()))
        .collect()
}
