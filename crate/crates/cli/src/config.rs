//! Strict `key = value` run-config parser: one key per line, `#` comments,
//! unknown keys rejected after dispatch has consumed what it understands.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone)]
pub struct RawConfig {
    map: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = match raw_line.split_once('#') {
                Some((head, _)) => head,
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError(format!(
                    "line {}: empty key or value",
                    lineno + 1
                )));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(ConfigError(format!("duplicate key '{key}'")));
            }
        }
        Ok(Self { map })
    }

    pub fn override_seed(&mut self, seed: u64) {
        self.map.insert("seed".into(), seed.to_string());
    }

    pub fn override_out(&mut self, out: PathBuf) {
        self.map.insert("out".into(), out.display().to_string());
    }

    /// Remove and return a key's value.
    pub fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    pub fn take_required(&mut self, key: &str) -> Result<String, ConfigError> {
        self.take(key)
            .ok_or_else(|| ConfigError(format!("missing required key '{key}'")))
    }

    pub fn take_f64(&mut self, key: &str, default: Option<f64>) -> Result<f64, ConfigError> {
        match self.take(key) {
            None => default.ok_or_else(|| ConfigError(format!("missing required key '{key}'"))),
            Some(v) => v
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("key '{key}': '{v}' is not a number"))),
        }
    }

    pub fn take_usize(&mut self, key: &str, default: Option<usize>) -> Result<usize, ConfigError> {
        match self.take(key) {
            None => default.ok_or_else(|| ConfigError(format!("missing required key '{key}'"))),
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("key '{key}': '{v}' is not a count"))),
        }
    }

    pub fn take_u64(&mut self, key: &str, default: Option<u64>) -> Result<u64, ConfigError> {
        match self.take(key) {
            None => default.ok_or_else(|| ConfigError(format!("missing required key '{key}'"))),
            Some(v) => v
                .parse::<u64>()
                .map_err(|_| ConfigError(format!("key '{key}': '{v}' is not an integer"))),
        }
    }

    /// Comma-separated list of floats.
    pub fn take_f64_list(
        &mut self,
        key: &str,
        default: Option<Vec<f64>>,
    ) -> Result<Vec<f64>, ConfigError> {
        match self.take(key) {
            None => default.ok_or_else(|| ConfigError(format!("missing required key '{key}'"))),
            Some(v) => v
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| ConfigError(format!("key '{key}': bad number '{s}'")))
                })
                .collect(),
        }
    }

    /// All remaining keys must have been consumed.
    pub fn finish(self) -> Result<(), ConfigError> {
        if self.map.is_empty() {
            Ok(())
        } else {
            let keys: Vec<&str> = self.map.keys().map(String::as_str).collect();
            Err(ConfigError(format!("unknown keys: {}", keys.join(", "))))
        }
    }
}
