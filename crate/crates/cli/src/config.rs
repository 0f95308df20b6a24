//! Flat `key = value` configuration files, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Scenario parameters after merging defaults, config file, and flags.
#[derive(Debug, Clone)]
pub struct Settings {
    pub out: PathBuf,
    pub seed: u64,
    pub grid: usize,
    pub delta: f64,
    pub env_states: usize,
    pub perturb: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            out: PathBuf::from("reports"),
            seed: 7,
            grid: 1000,
            delta: 1.0,
            env_states: 2,
            perturb: 0.5,
        }
    }
}

/// Values set explicitly by flags; `None` fields fall back to the config
/// file and then to the defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub grid: Option<usize>,
    pub delta: Option<f64>,
    pub env_states: Option<usize>,
    pub perturb: Option<f64>,
}

/// Reads a flat key = value file: UTF-8, one pair per line, `#` comments.
/// Unknown keys are rejected.
pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut pairs = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !matches!(
            key.as_str(),
            "out" | "seed" | "grid" | "delta" | "env_states" | "perturb"
        ) {
            return Err(format!("line {}: unknown key `{key}`", lineno + 1));
        }
        if pairs.insert(key.clone(), value).is_some() {
            return Err(format!("line {}: duplicate key `{key}`", lineno + 1));
        }
    }
    Ok(pairs)
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| format!("config key `{key}`: {e}"))
}

/// Merges defaults <- config file <- flag overrides and range-checks the
/// result.
pub fn resolve(config: Option<&Path>, flags: &Overrides) -> Result<Settings, String> {
    let mut settings = Settings::default();
    if let Some(path) = config {
        let pairs = parse_config_file(path)?;
        for (key, value) in &pairs {
            match key.as_str() {
                "out" => settings.out = PathBuf::from(value),
                "seed" => settings.seed = parse(key, value)?,
                "grid" => settings.grid = parse(key, value)?,
                "delta" => settings.delta = parse(key, value)?,
                "env_states" => settings.env_states = parse(key, value)?,
                "perturb" => settings.perturb = parse(key, value)?,
                _ => unreachable!("unknown keys rejected during parsing"),
            }
        }
    }
    if let Some(out) = &flags.out {
        settings.out = out.clone();
    }
    if let Some(seed) = flags.seed {
        settings.seed = seed;
    }
    if let Some(grid) = flags.grid {
        settings.grid = grid;
    }
    if let Some(delta) = flags.delta {
        settings.delta = delta;
    }
    if let Some(env_states) = flags.env_states {
        settings.env_states = env_states;
    }
    if let Some(perturb) = flags.perturb {
        settings.perturb = perturb;
    }

    if settings.grid < 2 || settings.grid > 1_000_000 {
        return Err(format!("grid must be in [2, 1000000], got {}", settings.grid));
    }
    if !settings.delta.is_finite() || settings.delta == 0.0 {
        return Err(format!("delta must be finite and nonzero, got {}", settings.delta));
    }
    if settings.env_states < 1 || settings.env_states > 1024 {
        return Err(format!("env_states must be in [1, 1024], got {}", settings.env_states));
    }
    if !settings.perturb.is_finite() || settings.perturb < 0.0 {
        return Err(format!("perturb must be finite and nonnegative, got {}", settings.perturb));
    }
    Ok(settings)
}
