//! Flat `key = value` configuration files. `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::BenchError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile, BenchError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| BenchError::Config {
                line: i + 1,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let key = k.trim();
            if key.is_empty() {
                return Err(BenchError::Config {
                    line: i + 1,
                    message: "empty key".into(),
                });
            }
            entries.insert(key.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<ConfigFile, BenchError> {
        ConfigFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Typed lookup; a present but malformed value is an error.
    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, BenchError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| BenchError::Config {
                line: 0,
                message: format!("bad value `{v}` for `{key}`"),
            }),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
