//! Optional `key = value` run configuration. Command-line flags take precedence.

use crate::error::{CliError, CliResult};
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Zero-scan grid spacing in t.
    pub grid_step: f64,
    /// Gap fraction of the local mean spacing below which a zero pair is flagged.
    pub lehmer_fraction: f64,
    /// Largest step index an Argand render may sum.
    pub max_steps: u64,
    /// Largest number of vertices written into one SVG.
    pub max_points: u64,
    pub width: u32,
    pub height: u32,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            grid_step: 0.05,
            lehmer_fraction: 0.1,
            max_steps: 100_000_000,
            max_points: 1_000_000,
            width: 800,
            height: 800,
            threads: None,
        }
    }
}

fn value<T: std::str::FromStr>(key: &str, raw: &str, line: usize) -> CliResult<T> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {raw:?} for {key}")))
}

impl Config {
    /// Blank lines and lines starting with '#' are skipped; unknown keys are an error.
    pub fn parse(text: &str) -> CliResult<Config> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let n = i + 1;
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {n}: expected key = value")))?;
            let (key, val) = (key.trim(), val.trim());
            match key {
                "grid_step" => c.grid_step = value(key, val, n)?,
                "lehmer_fraction" => c.lehmer_fraction = value(key, val, n)?,
                "max_steps" => c.max_steps = value(key, val, n)?,
                "max_points" => c.max_points = value(key, val, n)?,
                "width" => c.width = value(key, val, n)?,
                "height" => c.height = value(key, val, n)?,
                "threads" => c.threads = Some(value(key, val, n)?),
                _ => {
                    return Err(CliError::Usage(format!(
                        "config line {n}: unknown key {key:?}"
                    )))
                }
            }
        }
        if !(c.grid_step > 0.0) || c.max_points < 4 || c.width == 0 || c.height == 0 {
            return Err(CliError::Usage("config values out of range".into()));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> CliResult<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }
}
