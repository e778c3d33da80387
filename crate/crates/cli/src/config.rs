//! Optional key=value config file. Precedence: command-line flags beat
//! config-file values beat these defaults.

use crate::errors::CodedError;
use anyhow::{Context, Result};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub t: f64,
    pub k: usize,
    pub splits: usize,
    pub bins: usize,
    pub delta: f64,
    pub window: usize,
}

pub const DEFAULTS: Defaults = Defaults {
    t: 0.6,
    k: 5,
    splits: 5,
    bins: 50,
    delta: 0.01,
    window: 3,
};

#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text =
            std::fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
        let mut values = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CodedError::parse(format!(
                    "{}: line {}: expected key=value",
                    path.display(),
                    idx + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                CodedError::parse(format!("config key `{key}`: cannot parse `{raw}`"))
            }),
        }
    }

    pub fn resolve_f64(&self, flag: Option<f64>, key: &str, default: f64) -> Result<f64> {
        Ok(flag.or(self.get(key)?).unwrap_or(default))
    }

    pub fn resolve_usize(&self, flag: Option<usize>, key: &str, default: usize) -> Result<usize> {
        Ok(flag.or(self.get(key)?).unwrap_or(default))
    }
}
