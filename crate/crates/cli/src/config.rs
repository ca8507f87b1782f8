//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys may repeat;
//! for list-valued keys (`noise`, `negative`) every occurrence is kept, for
//! the others the last one wins.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const KEYS: [&str; 13] = [
    "seed",
    "trials",
    "noise",
    "out",
    "format",
    "algorithms",
    "records",
    "scope",
    "instances",
    "data",
    "label_column",
    "positive",
    "negative",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    values: BTreeMap<String, Vec<String>>,
    /// Directory of the file; relative paths in it resolve against this.
    pub base_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, String> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value', got '{line}'", i + 1))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!(
                    "line {}: unknown key '{key}' (known: {})",
                    i + 1,
                    KEYS.join(", ")
                ));
            }
            values.entry(key).or_default().push(value.trim().to_string());
        }
        Ok(FileConfig { values, base_dir: None })
    }

    pub fn read(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg = FileConfig::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    pub fn all(&self, key: &str) -> &[String] {
        self.values.get(key).map_or(&[], Vec::as_slice)
    }

    /// A path value, resolved against the file's directory.
    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|v| match &self.base_dir {
            Some(dir) if Path::new(v).is_relative() => dir.join(v),
            _ => PathBuf::from(v),
        })
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| format!("config key '{key}': invalid value '{v}': {e}"))
            })
            .transpose()
    }
}

/// CLI value if given, else the config file's, else the default.
pub fn pick<T>(cli: Option<T>, file: Option<T>, default: T) -> T {
    cli.or(file).unwrap_or(default)
}
