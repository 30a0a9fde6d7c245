//! Run configuration: flags, then `POLYU_*` environment variables, then a
//! JSON config file, then defaults.

use std::fmt;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use polyu::{DEFAULT_BOUND, MIN_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(NonZeroUsize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Threads::Auto);
        }
        s.parse::<NonZeroUsize>()
            .map(Threads::Count)
            .map_err(|_| format!("threads must be a positive integer or `auto`, got {s:?}"))
    }
}

impl fmt::Display for Threads {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threads::Auto => f.write_str("auto"),
            Threads::Count(n) => write!(f, "{n}"),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(n) => NonZeroUsize::new(n)
                .map(Threads::Count)
                .ok_or_else(|| serde::de::Error::custom("threads must be positive")),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for Threads {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Threads::Auto => s.serialize_str("auto"),
            Threads::Count(n) => s.serialize_u64(n.get() as u64),
        }
    }
}

/// Resolved settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub bound: u64,
    pub threads: Threads,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            bound: DEFAULT_BOUND,
            threads: Threads::Auto,
            format: Format::Text,
            output: None,
        }
    }
}

/// One layer of optional settings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub bound: Option<u64>,
    pub threads: Option<Threads>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl Layer {
    /// Reads `POLYU_BOUND`, `POLYU_THREADS`, `POLYU_FORMAT` and `POLYU_OUTPUT`.
    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Result<Self, String> {
        fn parse<T: FromStr>(get: &impl Fn(&str) -> Option<String>, key: &str) -> Result<Option<T>, String>
        where
            T::Err: fmt::Display,
        {
            get(key)
                .filter(|v| !v.is_empty())
                .map(|v| v.parse::<T>().map_err(|e| format!("{key}={v:?}: {e}")))
                .transpose()
        }
        Ok(Layer {
            bound: parse(&get, "POLYU_BOUND")?,
            threads: parse(&get, "POLYU_THREADS")?,
            format: parse(&get, "POLYU_FORMAT")?,
            output: get("POLYU_OUTPUT").filter(|v| !v.is_empty()).map(PathBuf::from),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }
}

/// Merges layers from highest to lowest priority and validates the result.
pub fn resolve(layers: &[Layer]) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    for layer in layers.iter().rev() {
        if let Some(b) = layer.bound {
            cfg.bound = b;
        }
        if let Some(t) = layer.threads {
            cfg.threads = t;
        }
        if let Some(f) = layer.format {
            cfg.format = f;
        }
        if let Some(o) = &layer.output {
            cfg.output = Some(o.clone());
        }
    }
    if cfg.bound < MIN_BOUND {
        return Err(format!("bound must be at least {MIN_BOUND}, got {}", cfg.bound));
    }
    Ok(cfg)
}
