//! Flat `key = value` files split into `[section]` blocks.
//!
//! Comments start with `#`. A section may repeat with a suffix
//! (`[kernel.2]`); such blocks are kept in file order.

use crate::error::CliError;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    /// `kernel` for both `[kernel]` and `[kernel.2]`.
    pub kind: String,
    pub name: String,
    pub line: usize,
    entries: BTreeMap<String, Entry>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfig {
    pub sections: Vec<Section>,
}

const TOP: &str = "run";

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut sections: Vec<Section> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::parse(line, None, "section header is missing ']'"))?
                    .trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
                    return Err(CliError::parse(line, None, format!("bad section name '{name}'")));
                }
                if sections.iter().any(|x| x.name == name) {
                    return Err(CliError::parse(line, None, format!("section [{name}] appears twice")));
                }
                let kind = name.split('.').next().unwrap_or(name).to_string();
                sections.push(Section {
                    kind,
                    name: name.to_string(),
                    line,
                    entries: BTreeMap::new(),
                });
                continue;
            }
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| CliError::parse(line, None, format!("expected 'key = value', got '{s}'")))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(CliError::parse(line, None, "empty key"));
            }
            if sections.is_empty() {
                sections.push(Section {
                    kind: TOP.into(),
                    name: TOP.into(),
                    line,
                    entries: BTreeMap::new(),
                });
            }
            let sec = sections.last_mut().unwrap();
            let qualified = format!("{}.{key}", sec.name);
            if sec.entries.contains_key(key) {
                return Err(CliError::parse(line, Some(&qualified), "key is set twice"));
            }
            sec.entries.insert(
                key.to_string(),
                Entry {
                    value: value.trim().to_string(),
                    line,
                },
            );
        }
        Ok(Self { sections })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn section(&self, kind: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.kind == kind)
    }

    pub fn sections_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Section> + 'a {
        self.sections.iter().filter(move |s| s.kind == kind)
    }
}

impl Section {
    pub fn empty(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            name: kind.into(),
            line: 0,
            entries: BTreeMap::new(),
        }
    }

    pub fn key_name(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    /// Fails on keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        for (k, e) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return Err(CliError::parse(
                    e.line,
                    Some(&self.key_name(k)),
                    format!("unknown key; expected one of: {}", allowed.join(", ")),
                ));
            }
        }
        Ok(())
    }

    pub fn error(&self, key: &str, msg: impl Into<String>) -> CliError {
        let line = self.raw(key).map_or(self.line, |e| e.line);
        CliError::parse(line, Some(&self.key_name(key)), msg)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse::<T>()
                .map(Some)
                .map_err(|err| self.error(key, format!("cannot parse '{}': {err}", e.value))),
        }
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)?.ok_or_else(|| self.error(key, "required key is missing"))
    }

    /// A number with a closed range check; `inf` is accepted when the range allows it.
    pub fn number(&self, key: &str, default: Option<f64>, lo: f64, hi: f64) -> Result<Option<f64>, CliError> {
        let v = match self.get::<f64>(key)? {
            Some(v) => v,
            None => return Ok(default),
        };
        if !(v >= lo && v <= hi) {
            return Err(self.error(key, format!("value {v} is outside [{lo}, {hi}]")));
        }
        Ok(Some(v))
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        let Some(e) = self.raw(key) else { return Ok(None) };
        e.value
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|err| self.error(key, format!("cannot parse list item '{s}': {err}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}
