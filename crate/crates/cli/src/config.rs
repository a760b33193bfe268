//! `key = value` configuration files and validation of the merged settings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

pub const KNOWN_KEYS: [&str; 13] =
    ["L", "h", "omega", "tol", "tauc", "out", "seed", "eps", "delta", "ladder", "workers", "dump_grid", "n"];

/// Parsed config file: known keys only, values still as text.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value", no + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN_KEYS.contains(&k) {
                bail!("line {}: unknown key '{k}'", no + 1);
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                bail!("line {}: duplicate key '{k}'", no + 1);
            }
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        FileConfig::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| anyhow!("config key '{key}': cannot parse '{v}'")),
        }
    }
}

/// Settings after merging flags over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub half_width: Option<f64>,
    pub spacing: Option<f64>,
    pub omega: Option<f64>,
    pub tol: Option<f64>,
    pub tau_c: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub ladder: Option<Vec<u32>>,
    pub workers: Option<usize>,
    pub dump_grid: bool,
    pub n: Option<usize>,
}

impl Settings {
    /// `flags` wins wherever it has a value.
    pub fn merge(flags: Settings, file: &FileConfig) -> Result<Settings> {
        let ladder = match file.values.get("ladder") {
            Some(v) => Some(parse_ladder(v)?),
            None => None,
        };
        let s = Settings {
            half_width: flags.half_width.or(file.get("L")?),
            spacing: flags.spacing.or(file.get("h")?),
            omega: flags.omega.or(file.get("omega")?),
            tol: flags.tol.or(file.get("tol")?),
            tau_c: flags.tau_c.or(file.get("tauc")?),
            out: flags.out.or(file.get::<String>("out")?.map(PathBuf::from)),
            seed: flags.seed.or(file.get("seed")?),
            eps: flags.eps.or(file.get("eps")?),
            delta: flags.delta.or(file.get("delta")?),
            ladder: flags.ladder.or(ladder),
            workers: flags.workers.or(file.get("workers")?),
            dump_grid: flags.dump_grid || file.get("dump_grid")?.unwrap_or(false),
            n: flags.n.or(file.get("n")?),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(x) if !(x > 0.0 && x.is_finite()) => bail!("{name} must be positive, got {x}"),
            _ => Ok(()),
        };
        positive("L", self.half_width)?;
        positive("h", self.spacing)?;
        positive("tol", self.tol)?;
        positive("eps", self.eps)?;
        if let (Some(l), Some(h)) = (self.half_width, self.spacing) {
            let cells = l / h;
            if cells < 1.0 || (cells - cells.round()).abs() > 1e-9 * cells {
                bail!("L/h must be a positive integer, got {cells}");
            }
        }
        if let Some(w) = self.omega {
            if !(w > 0.0 && w < 2.0) {
                bail!("omega must lie in (0, 2), got {w}");
            }
        }
        if let Some(t) = self.tau_c {
            if !(t >= 0.0 && t.is_finite()) {
                bail!("tauc must be nonnegative, got {t}");
            }
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d <= 0.5) {
                bail!("delta must lie in (0, 1/2], got {d}");
            }
        }
        if let Some(l) = &self.ladder {
            if l.is_empty() || l[0] == 0 || l.windows(2).any(|w| w[0] >= w[1]) {
                bail!("ladder must be increasing positive integers");
            }
        }
        if self.workers == Some(0) {
            bail!("workers must be at least 1");
        }
        if let Some(n) = self.n {
            if !(1..=2).contains(&n) {
                bail!("n must be 1 or 2, got {n}");
            }
        }
        Ok(())
    }
}

pub fn parse_ladder(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| anyhow!("bad ladder entry '{s}'")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let c = FileConfig::parse("# grid\nL = 2\n\nh=0.125 # fine\nladder = 2, 4\n").unwrap();
        let s = Settings::merge(Settings::default(), &c).unwrap();
        assert_eq!(s.half_width, Some(2.0));
        assert_eq!(s.spacing, Some(0.125));
        assert_eq!(s.ladder, Some(vec![2, 4]));
    }

    #[test]
    fn unknown_and_duplicate_keys_are_rejected() {
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("L = 1\nL = 2").is_err());
        assert!(FileConfig::parse("just text").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let c = FileConfig::parse("L = 2\ntol = 1e-9").unwrap();
        let flags = Settings { half_width: Some(3.0), ..Settings::default() };
        let s = Settings::merge(flags, &c).unwrap();
        assert_eq!(s.half_width, Some(3.0));
        assert_eq!(s.tol, Some(1e-9));
    }

    #[test]
    fn ranges_are_validated() {
        for text in ["omega = 2.5", "L = 1\nh = 0.3", "delta = 0.7", "ladder = 4,2", "tol = -1", "workers = 0"] {
            let c = FileConfig::parse(text).unwrap();
            assert!(Settings::merge(Settings::default(), &c).is_err(), "{text}");
        }
    }
}
