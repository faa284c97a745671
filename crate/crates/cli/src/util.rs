//! Shared CLI plumbing: exit-code mapping, config-file handling,
//! config echoing, and small parsers.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Failure classes mapped to exit codes: bad input 3, budget 2,
/// validation/verification failure 1.
#[derive(Debug)]
pub enum CliError {
    BadInput(String),
    Budget(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Budget(_) => 2,
            CliError::BadInput(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::BadInput(m) => write!(f, "bad input: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<pdb::PdbError> for CliError {
    fn from(e: pdb::PdbError) -> Self {
        match e {
            pdb::PdbError::MemoryBudget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<learn::LearnError> for CliError {
    fn from(e: learn::LearnError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<search::SearchError> for CliError {
    fn from(e: search::SearchError) -> Self {
        match e {
            search::SearchError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<eval::EvalError> for CliError {
    fn from(e: eval::EvalError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Flat key-value config file: `key = value` per line, `#` comments.
/// Keys may be namespaced (`train.epochs`); lookups try the namespaced
/// key first, then the bare one. Flags always win over the file.
#[derive(Default)]
pub struct Config {
    map: HashMap<String, String>,
    namespace: String,
}

impl Config {
    pub fn load(path: Option<&Path>, namespace: &str) -> CliResult<Config> {
        let mut map = HashMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap().trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::BadInput(format!(
                        "{}:{}: expected `key = value`",
                        p.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Config { map, namespace: namespace.to_string() })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.map
            .get(&format!("{}.{}", self.namespace, key))
            .or_else(|| self.map.get(key))
            .map(|s| s.as_str())
    }

    /// Flag value, else config-file value, else default.
    pub fn resolve<T: FromStr + Clone>(
        &self,
        flag: &Option<T>,
        key: &str,
        default: T,
    ) -> CliResult<T> {
        if let Some(v) = flag {
            return Ok(v.clone());
        }
        match self.raw(key) {
            Some(s) => s.parse().map_err(|_| {
                CliError::BadInput(format!("config key {key}: unparsable value {s:?}"))
            }),
            None => Ok(default),
        }
    }
}

/// Parses "0..7" (inclusive range) or "0,1,2" into indices.
pub fn parse_indices(s: &str) -> CliResult<Vec<u8>> {
    let bad = || CliError::BadInput(format!("bad index list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u8 = a.trim().parse().map_err(|_| bad())?;
        let b: u8 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    }
}

pub fn parse_usize_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::BadInput(format!("bad number list {s:?}")))
        })
        .collect()
}

/// `#`-prefixed config echo emitted before any results so every run is
/// reconstructable from its output alone.
pub fn config_header(command: &str, pairs: &[(&str, String)]) -> String {
    let mut out = format!("# command = {command}\n");
    for (k, v) in pairs {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out
}

/// Deterministic pseudo-random stream from (seed, payload) via FNV-1a;
/// the single run seed is the only entropy source anywhere in the CLI.
pub fn fnv_mix(seed: u64, payload: &[u8]) -> u64 {
    let mut x = 0xcbf29ce484222325u64 ^ seed.wrapping_mul(0x9e3779b97f4a7c15);
    for &b in payload {
        x = (x ^ b as u64).wrapping_mul(0x100000001b3);
    }
    // final avalanche
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51afd7ed558ccd);
    x ^ (x >> 33)
}
