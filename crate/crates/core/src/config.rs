//! Line-oriented `key = value` files.
//!
//! `#` starts a comment; blank lines are ignored; keys may repeat.

use crate::error::ParseError;

#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    entries: Vec<(String, String, usize)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ParseError::Config { line: i + 1, msg: format!("expected `key = value`, got `{line}`") });
            };
            let key = k.trim().to_ascii_lowercase();
            if key.is_empty() {
                return Err(ParseError::Config { line: i + 1, msg: "empty key".into() });
            }
            entries.push((key, v.trim().to_string(), i + 1));
        }
        Ok(Self { entries })
    }

    /// Last value for `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().rev().find(|(k, _, _)| k == key).map(|(_, v, _)| v.as_str())
    }

    pub fn require(&self, key: &'static str) -> Result<&str, ParseError> {
        self.get(key).ok_or(ParseError::MissingKey(key))
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = (&'a str, usize)> + 'a {
        self.entries.iter().filter(move |(k, _, _)| k == key).map(|(_, v, l)| (v.as_str(), *l))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _, _)| k.as_str())
    }
}

/// Parses `1, 3,4` into integers; empty string gives an empty list.
pub fn parse_index_list(key: &str, value: &str) -> Result<Vec<usize>, ParseError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| ParseError::Value { key: key.into(), value: value.into() }))
        .collect()
}

/// Parses `1-5, 2-4` into pairs.
pub fn parse_pair_list(key: &str, value: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    let bad = || ParseError::Value { key: key.into(), value: value.into() };
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (a, b) = s.split_once('-').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}
