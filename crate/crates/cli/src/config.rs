use std::fs;
use std::path::Path;

use clap::ValueEnum;
use darcais::certify::{CertifyConfig, DEFAULT_EXACT_EVAL_BOUND, DEFAULT_NOT_RAMIFIED_BOUND, DEFAULT_PRIMES};
use darcais::darcais::DEFAULT_ORACLE_BOUND;
use darcais::polymod::DEFAULT_SEED;
use serde::{Deserialize, Serialize};

/// Environment variable naming a JSON file with default settings.
pub const CONFIG_ENV: &str = "DARCAIS_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Effective settings of a run, embedded in every output document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub g_spec: String,
    pub prime_set: Vec<u64>,
    pub oracle_bound: usize,
    pub exact_eval_bound: u64,
    pub not_ramified_bound: u64,
    pub seed: u64,
    pub output_format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g_spec: "sigma".into(),
            prime_set: DEFAULT_PRIMES.to_vec(),
            oracle_bound: DEFAULT_ORACLE_BOUND,
            exact_eval_bound: DEFAULT_EXACT_EVAL_BOUND,
            not_ramified_bound: DEFAULT_NOT_RAMIFIED_BOUND,
            seed: DEFAULT_SEED,
            output_format: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    pub fn certify_config(&self) -> CertifyConfig {
        CertifyConfig {
            primes: self.prime_set.clone(),
            exact_eval_bound: self.exact_eval_bound,
            not_ramified_bound: self.not_ramified_bound,
            seed: self.seed,
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.output_format.unwrap_or(default)
    }
}

/// `[2, 3, 5]` from `2,3,5`; an empty string gives an empty list.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("`{t}` is not a prime")))
        .collect()
}

/// `lo:hi` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range `{s}`"));
    match s.split_once(':') {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => num(s).map(|v| (v, v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_primes() {
        assert_eq!(parse_range("-5:5").unwrap(), (-5, 5));
        assert_eq!(parse_range("3").unwrap(), (3, 3));
        assert!(parse_range("a:b").is_err());
        assert_eq!(parse_primes("2, 3,5").unwrap(), vec![2, 3, 5]);
        assert!(parse_primes("").unwrap().is_empty());
        assert!(parse_primes("x").is_err());
    }

    #[test]
    fn partial_config_files_fill_in_defaults() {
        let c: RunConfig = serde_json::from_str(r#"{"seed": 7, "output_format": "text"}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.g_spec, "sigma");
        assert_eq!(c.output_format, Some(Format::Text));
        assert!(serde_json::from_str::<RunConfig>(r#"{"sed": 7}"#).is_err());
    }
}
