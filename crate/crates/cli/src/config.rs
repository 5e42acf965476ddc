//! Settings resolution: flags, then `GUPNL_*` variables, then the config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::ArgMatches;

use crate::args::{Format, GlobalArgs};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub beta: Option<f64>,
    pub hbar: f64,
    pub seed: u64,
    pub format: Format,
    pub precision: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// β is optional at parse time because some subcommands sweep it themselves.
    pub fn require_beta(&self) -> CliResult<f64> {
        self.beta
            .ok_or_else(|| CliError::usage("--beta is required (flag, GUPNL_BETA or config file)"))
    }
}

const KEYS: [&str; 6] = ["beta", "hbar", "seed", "format", "precision", "out"];

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().to_ascii_lowercase();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!("config line {}: unknown key '{key}'", n + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn read_config(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_file(&text)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::usage(format!("config value for '{key}' is invalid: {value}")))
}

/// Merge the parsed globals with the config file. A file value is used only
/// when the setting came from neither the command line nor the environment.
pub fn resolve(global: &GlobalArgs, matches: &ArgMatches) -> CliResult<RunConfig> {
    let mut cfg = RunConfig {
        beta: global.beta,
        hbar: global.hbar,
        seed: global.seed,
        format: global.format,
        precision: global.precision as usize,
        out: global.out.clone(),
    };
    let Some(path) = &global.config else {
        return Ok(cfg);
    };
    let file = read_config(path)?;
    let unset = |id: &str| {
        matches!(
            matches.value_source(id),
            None | Some(ValueSource::DefaultValue)
        )
    };
    for (key, value) in &file {
        if !unset(key) {
            continue;
        }
        match key.as_str() {
            "beta" => cfg.beta = Some(parse_value(key, value)?),
            "hbar" => cfg.hbar = parse_value(key, value)?,
            "seed" => cfg.seed = parse_value(key, value)?,
            "format" => cfg.format = parse_value(key, value)?,
            "precision" => {
                let p: usize = parse_value(key, value)?;
                if !(6..=17).contains(&p) {
                    return Err(CliError::usage(format!("precision must be in 6..=17, got {p}")));
                }
                cfg.precision = p;
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            _ => unreachable!("keys are validated while parsing"),
        }
    }
    Ok(cfg)
}
