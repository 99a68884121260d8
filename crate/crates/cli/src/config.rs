//! Merging command-line flags with an optional JSON config file, plus the
//! small parsers shared by several subcommands.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::CliError;

/// Values from a JSON config file. Flags always win over file entries.
#[derive(Debug, Default)]
pub struct Config {
    values: Map<String, Value>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        match serde_json::from_str(&text) {
            Ok(Value::Object(values)) => Ok(Self { values }),
            Ok(_) => Err(CliError::Config("config file must hold a JSON object".into())),
            Err(e) => Err(CliError::Config(format!("invalid JSON in {}: {e}", path.display()))),
        }
    }

    /// The flag value if given, else the config entry (numbers and booleans are
    /// accepted and converted to text). Keys use the flag spelling, e.g. `sites`.
    pub fn pick(&self, flag: &Option<String>, key: &str) -> Result<Option<String>, CliError> {
        if let Some(v) = flag {
            return Ok(Some(v.clone()));
        }
        match self.values.get(key).or_else(|| self.values.get(&key.replace('-', "_"))) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(Value::Bool(b)) => Ok(Some(b.to_string())),
            Some(other) => Err(CliError::Config(format!("config entry {key} has unsupported value {other}"))),
        }
    }

    pub fn require(&self, flag: &Option<String>, key: &str) -> Result<String, CliError> {
        self.pick(flag, key)?.ok_or_else(|| CliError::Config(format!("missing --{key} (flag or config entry)")))
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.pick(&None, key)? {
            None => Ok(false),
            Some(v) => v.parse().map_err(|_| CliError::Config(format!("config entry {key} must be true or false"))),
        }
    }
}

pub fn parse_num<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| CliError::Config(format!("cannot parse {what} from {text:?}")))
}

/// Site counts: `12`, `6..12` (inclusive), `10:200` or `10:200:10` (inclusive, with step).
pub fn parse_range(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Config(format!("invalid range {text:?}; use N, A..B or A:B[:STEP]"));
    let t = text.trim();
    let (lo, hi, step) = if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, 1)
    } else if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        let nums: Vec<u64> = parts.iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match nums.as_slice() {
            [a, b] => (*a, *b, 1),
            [a, b, s] => (*a, *b, *s),
            _ => return Err(bad()),
        }
    } else {
        let n = t.parse().map_err(|_| bad())?;
        (n, n, 1)
    };
    if step == 0 || lo > hi {
        return Err(CliError::Config(format!("range {text:?} is empty")));
    }
    Ok((lo..=hi).step_by(step as usize).collect())
}
