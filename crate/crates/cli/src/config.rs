//! Run configuration: built-in defaults, an optional `key=value` file, then
//! command-line flags (which always win).

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use hfree::spectral::DEFAULT_TOL;

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Power-iteration tolerance.
    pub tol: f64,
    pub workers: usize,
    pub seed: u64,
    /// Default home for enumeration checkpoints.
    pub checkpoint_dir: Option<PathBuf>,
    /// Default home for JSONL outputs when no `--out` is given.
    pub out_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: DEFAULT_TOL,
            workers: hfree::enumerate::default_workers(),
            seed: hfree::search::DEFAULT_SEED,
            checkpoint_dir: None,
            out_dir: None,
        }
    }
}

impl Config {
    /// Apply a `key=value` file. Blank lines and `#` comments are ignored.
    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        self.merge_str(&text)
            .with_context(|| format!("in config {}", path.display()))
    }

    pub fn merge_str(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key=value, got `{line}`", i + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tol" => self.tol = value.parse().with_context(|| format!("line {}: tol", i + 1))?,
                "workers" => self.workers = value.parse().with_context(|| format!("line {}: workers", i + 1))?,
                "seed" => self.seed = parse_seed(value).with_context(|| format!("line {}: seed", i + 1))?,
                "checkpoint_dir" => self.checkpoint_dir = Some(value.into()),
                "out_dir" => self.out_dir = Some(value.into()),
                other => bail!("line {}: unknown key `{other}`", i + 1),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            bail!("tolerance must be positive, got {}", self.tol);
        }
        if self.workers == 0 {
            bail!("worker count must be at least 1");
        }
        Ok(())
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Result<u64> {
    let s = s.trim().replace('_', "");
    Ok(match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16)?,
        None => s.parse()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = Config::default();
        c.merge_str("# comment\nworkers = 3\nseed=0xFF\n\ntol=1e-9\ncheckpoint_dir=/tmp/x\n")
            .unwrap();
        assert_eq!(c.workers, 3);
        assert_eq!(c.seed, 255);
        assert_eq!(c.tol, 1e-9);
        assert_eq!(c.checkpoint_dir, Some(PathBuf::from("/tmp/x")));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::default().merge_str("workers").is_err());
        assert!(Config::default().merge_str("colour=blue").is_err());
        let mut c = Config::default();
        c.merge_str("workers=0").unwrap();
        assert!(c.validate().is_err());
        c = Config::default();
        c.merge_str("tol=-1").unwrap();
        assert!(c.validate().is_err());
    }
}
