//! `key=value` run configuration, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};

use crate::exit::usage;

/// Keys accepted in a configuration file.
pub const KEYS: &[&str] = &[
    "poly", "primes", "x", "cap", "grid", "a", "k", "exponents", "cache_dir", "threads", "seed", "format",
    "threshold", "samples", "kappa",
];

/// Parsed configuration. `poly` may repeat; every other key appears once.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, Vec<String>>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(usage(format!("config line {}: unknown key `{key}`", n + 1)));
            }
            let entry = values.entry(key.to_string()).or_default();
            if !entry.is_empty() && key != "poly" {
                return Err(usage(format!("config line {}: duplicate key `{key}`", n + 1)));
            }
            entry.push(value.to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.first()).map(String::as_str)
    }

    pub fn all(&self, key: &str) -> &[String] {
        self.values.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `flag`, else the configured value parsed, else `None`.
    pub fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|s| s.parse::<T>().map_err(|e| usage(format!("config key `{key}`: {e}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = RunConfig::parse("# run\npoly = [1,1,0,1]\npoly=[0,1]\nx=1000\n").unwrap();
        assert_eq!(c.all("poly").len(), 2);
        assert_eq!(c.pick::<u64>(None, "x").unwrap(), Some(1000));
        assert_eq!(c.pick(Some(5u64), "x").unwrap(), Some(5));
        assert!(RunConfig::parse("colour=blue").is_err());
        assert!(RunConfig::parse("x=1\nx=2").is_err());
        assert!(RunConfig::parse("nonsense").is_err());
    }
}
