//! Flat key-value run configuration: a TOML file plus `--param` overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use solow_energy::{EnergyParams, EnergyProductionParams};
use toml::Value;

use crate::error::{CliError, CliResult};

const KNOWN_KEYS: &[&str] = &[
    "s",
    "delta",
    "C",
    "N1",
    "N2",
    "alpha",
    "E0",
    "t_end",
    "r",
    "grid_min",
    "grid_max",
    "grid_points",
    "data_path",
    "tolerance",
    "max_steps",
    "b1",
    "b2",
    "b3",
    "K0",
    "L0",
    "Y0",
    "NK",
    "NL",
    "NY",
    "a1",
    "a2",
    "a3",
];

#[derive(Debug, Clone)]
struct Entry {
    value: Value,
    /// Directory that relative paths in this entry are resolved against.
    base: PathBuf,
}

#[derive(Debug, Clone)]
pub struct Config {
    entries: BTreeMap<String, Entry>,
}

impl Config {
    /// Reads `path` and applies `key=value` overrides, which win.
    pub fn load(path: &Path, overrides: &[String]) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut config = Self::parse(&text, &base)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        for item in overrides {
            config.apply_override(item)?;
        }
        Ok(config)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self, String> {
        let table: toml::Table = toml::from_str(text).map_err(|e| e.message().to_string())?;
        let mut entries = BTreeMap::new();
        for (key, value) in table {
            check_key(&key)?;
            if value.is_table() {
                return Err(format!("`{key}`: nested tables are not supported"));
            }
            entries.insert(
                key,
                Entry {
                    value,
                    base: base.to_path_buf(),
                },
            );
        }
        Ok(Self { entries })
    }

    /// `key=value`, where `value` is any TOML value. Anything that does not
    /// parse as TOML is taken as a bare string.
    pub fn apply_override(&mut self, item: &str) -> CliResult<()> {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--param `{item}`: expected key=value")))?;
        let key = key.trim();
        check_key(key).map_err(CliError::Usage)?;
        let raw = raw.trim();
        let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| Value::String(raw.to_string()));
        self.entries.insert(
            key.to_string(),
            Entry {
                value,
                base: PathBuf::new(),
            },
        );
        Ok(())
    }

    pub fn number(&self, key: &str) -> CliResult<Option<f64>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(entry) => as_number(&entry.value)
                .map(Some)
                .ok_or_else(|| CliError::usage(format!("`{key}` must be a number"))),
        }
    }

    pub fn number_or(&self, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    /// A list of numbers; a single number counts as a one-element list.
    pub fn numbers(&self, key: &str) -> CliResult<Option<Vec<f64>>> {
        let Some(entry) = self.entries.get(key) else {
            return Ok(None);
        };
        let bad = || CliError::usage(format!("`{key}` must be a number or a list of numbers"));
        match &entry.value {
            Value::Array(items) => items
                .iter()
                .map(|v| as_number(v).ok_or_else(bad))
                .collect::<CliResult<Vec<_>>>()
                .map(Some),
            other => as_number(other).map(|x| Some(vec![x])).ok_or_else(bad),
        }
    }

    pub fn count_or(&self, key: &str, default: usize) -> CliResult<usize> {
        let Some(entry) = self.entries.get(key) else {
            return Ok(default);
        };
        match entry.value.as_integer() {
            Some(n) if n >= 1 => Ok(n as usize),
            _ => Err(CliError::usage(format!(
                "`{key}` must be a positive integer"
            ))),
        }
    }

    /// A path value, resolved against the directory of the file that set it.
    pub fn path(&self, key: &str) -> CliResult<Option<PathBuf>> {
        let Some(entry) = self.entries.get(key) else {
            return Ok(None);
        };
        let raw = entry
            .value
            .as_str()
            .ok_or_else(|| CliError::usage(format!("`{key}` must be a string")))?;
        let path = Path::new(raw);
        Ok(Some(if path.is_absolute() {
            path.to_path_buf()
        } else {
            entry.base.join(path)
        }))
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Energy model parameters; unset keys take the demo values
    /// `s = 1, delta = 0.7, C = N1 = N2 = 1, alpha = 2`.
    pub fn energy_params(&self) -> CliResult<EnergyParams> {
        let s = self.number_or("s", 1.0)?;
        let delta = self.number_or("delta", 0.7)?;
        let production = EnergyProductionParams::new(
            self.number_or("N1", 1.0)?,
            self.number_or("N2", 1.0)?,
            self.number_or("C", 1.0)?,
            self.number_or("alpha", 2.0)?,
        )
        .map_err(|e| CliError::usage(e.to_string()))?;
        let params = if s >= 1.0 {
            EnergyParams::demo_mode(s, delta, production)
        } else {
            EnergyParams::new(s, delta, production)
        };
        let params = params.map_err(|e| CliError::usage(e.to_string()))?;
        for warning in params.diagnostics() {
            eprintln!("warning: {warning}");
        }
        Ok(params)
    }

    /// `grid_points` values spread evenly over `[grid_min, grid_max]`.
    pub fn grid(&self, min: f64, max: f64, points: usize) -> CliResult<Vec<f64>> {
        let lo = self.number_or("grid_min", min)?;
        let hi = self.number_or("grid_max", max)?;
        let n = self.count_or("grid_points", points)?;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) || (n > 1 && lo == hi) {
            return Err(CliError::usage(format!(
                "grid [{lo}, {hi}] with {n} points is empty or reversed"
            )));
        }
        Ok(linspace(lo, hi, n))
    }
}

fn check_key(key: &str) -> Result<(), String> {
    if KNOWN_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(format!("unknown config key `{key}`"))
    }
}

fn as_number(value: &Value) -> Option<f64> {
    match value {
        Value::Float(x) => Some(*x),
        Value::Integer(n) => Some(*n as f64),
        _ => None,
    }
}

/// `n` evenly spaced points from `lo` to `hi`; the endpoints are exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Config {
        Config::parse(text, Path::new("/cfg")).unwrap()
    }

    #[test]
    fn integers_read_as_numbers() {
        let c = parse("s = 1\ndelta = 0.7\nE0 = [0.2, 1]\n");
        assert_eq!(c.number("s").unwrap(), Some(1.0));
        assert_eq!(c.numbers("E0").unwrap(), Some(vec![0.2, 1.0]));
    }

    #[test]
    fn overrides_win() {
        let mut c = parse("delta = 0.7\n");
        c.apply_override("delta=2").unwrap();
        c.apply_override("E0 = [0.5, 1.5]").unwrap();
        assert_eq!(c.number("delta").unwrap(), Some(2.0));
        assert_eq!(c.numbers("E0").unwrap(), Some(vec![0.5, 1.5]));
    }

    #[test]
    fn bare_string_override() {
        let mut c = parse("");
        c.apply_override("data_path=/tmp/x.csv").unwrap();
        assert_eq!(
            c.path("data_path").unwrap(),
            Some(PathBuf::from("/tmp/x.csv"))
        );
    }

    #[test]
    fn relative_paths_follow_the_config_file() {
        let c = parse("data_path = \"data.csv\"\n");
        assert_eq!(
            c.path("data_path").unwrap(),
            Some(PathBuf::from("/cfg/data.csv"))
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Config::parse("detla = 0.7\n", Path::new("")).is_err());
        let mut c = parse("");
        assert!(c.apply_override("detla=1").is_err());
        assert!(c.apply_override("delta").is_err());
    }

    #[test]
    fn type_errors() {
        let c = parse("s = \"high\"\ngrid_points = 0\n");
        assert!(c.number("s").is_err());
        assert!(c.count_or("grid_points", 5).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(0.0, 1.6, 161)[100], 1.0);
        assert_eq!(*linspace(0.0, 1.6, 161).last().unwrap(), 1.6);
        assert_eq!(linspace(0.0, 5.0, 1), vec![0.0]);
    }
}
