//! Minimal flag parsing: `--key value` and `--key=value` forms, collected
//! into an ordered map with typed getters.

use std::collections::BTreeMap;

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct Opts {
    map: BTreeMap<String, String>,
}

impl Opts {
    pub fn parse(args: &[String], allowed: &[&str]) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            let Some(stripped) = arg.strip_prefix("--") else {
                return Err(CliError::Usage(format!("unexpected argument `{arg}`")));
            };
            let (key, value) = match stripped.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| CliError::Usage(format!("flag --{stripped} needs a value")))?;
                    (stripped.to_string(), v.clone())
                }
            };
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("unknown flag --{key}")));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(CliError::Usage(format!("flag --{key} given twice")));
            }
        }
        Ok(Opts { map })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn parse_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("--{key}: `{v}` is not a number")))
            })
            .transpose()
    }

    pub fn parse_i32(&self, key: &str) -> Result<Option<i32>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse::<i32>()
                    .map_err(|_| CliError::Usage(format!("--{key}: `{v}` is not an integer")))
            })
            .transpose()
    }

    pub fn parse_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("--{key}: `{v}` is not a nonnegative integer")))
            })
            .transpose()
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        self.parse_f64(key)?
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{key}")))
    }

    pub fn require_i32(&self, key: &str) -> Result<i32, CliError> {
        self.parse_i32(key)?
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{key}")))
    }

    /// `lo:hi:n` range syntax for scan lines.
    pub fn parse_range(&self, key: &str) -> Result<Option<(f64, f64, usize)>, CliError> {
        let Some(v) = self.map.get(key) else {
            return Ok(None);
        };
        let parts: Vec<&str> = v.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "--{key}: expected lo:hi:n, got `{v}`"
            )));
        }
        let lo = parts[0]
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{key}: bad lower bound `{}`", parts[0])))?;
        let hi = parts[1]
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{key}: bad upper bound `{}`", parts[1])))?;
        let n = parts[2]
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("--{key}: bad count `{}`", parts[2])))?;
        if n < 2 || !(hi > lo) {
            return Err(CliError::Usage(format!(
                "--{key}: need hi > lo and n >= 2, got `{v}`"
            )));
        }
        Ok(Some((lo, hi, n)))
    }

    /// `lo:hi` window syntax.
    pub fn parse_window(&self, key: &str) -> Result<Option<(f64, f64)>, CliError> {
        let Some(v) = self.map.get(key) else {
            return Ok(None);
        };
        let parts: Vec<&str> = v.split(':').collect();
        if parts.len() != 2 {
            return Err(CliError::Usage(format!("--{key}: expected lo:hi, got `{v}`")));
        }
        let lo = parts[0]
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{key}: bad lower bound")))?;
        let hi = parts[1]
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{key}: bad upper bound")))?;
        Ok(Some((lo, hi)))
    }
}
