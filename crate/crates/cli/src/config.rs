use std::path::{Path, PathBuf};

use genus4::howe::{Strategy, DEFAULT_SYMBOLIC_CAP};
use serde::Deserialize;

pub const DEFAULT_K_MAX: usize = 8;
pub const DEFAULT_OUT: &str = "certificates.json";

/// Optional TOML file; every key is optional and uses the same names as
/// the resolved configuration.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub prime_min: Option<u64>,
    pub prime_max: Option<u64>,
    pub k_max: Option<usize>,
    pub strategy: Option<Strategy>,
    pub seed: Option<u64>,
    pub symbolic_cap: Option<u64>,
    pub out_path: Option<PathBuf>,
    pub worker_count: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

/// Values given on the command line or through the environment. Clap
/// folds the environment into these, so both outrank the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub prime_min: Option<u64>,
    pub prime_max: Option<u64>,
    pub k_max: Option<usize>,
    pub strategy: Option<Strategy>,
    pub seed: Option<u64>,
    pub symbolic_cap: Option<u64>,
    pub out_path: Option<PathBuf>,
    pub worker_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub prime_min: u64,
    pub prime_max: u64,
    pub k_max: usize,
    pub strategy: Strategy,
    pub seed: u64,
    pub symbolic_cap: u64,
    pub out_path: PathBuf,
    pub worker_count: usize,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl RunConfig {
    /// Merges flag/env values over the file over built-in defaults.
    /// `range` is the prime range the subcommand falls back to.
    pub fn resolve(o: Overrides, file: FileConfig, range: (u64, u64)) -> Result<RunConfig, String> {
        let cfg = RunConfig {
            prime_min: o.prime_min.or(file.prime_min).unwrap_or(range.0),
            prime_max: o.prime_max.or(file.prime_max).unwrap_or(range.1),
            k_max: o.k_max.or(file.k_max).unwrap_or(DEFAULT_K_MAX),
            strategy: o.strategy.or(file.strategy).unwrap_or(Strategy::Auto),
            seed: o.seed.or(file.seed).unwrap_or(0),
            symbolic_cap: o.symbolic_cap.or(file.symbolic_cap).unwrap_or(DEFAULT_SYMBOLIC_CAP),
            out_path: o
                .out_path
                .or(file.out_path)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
            worker_count: o.worker_count.or(file.worker_count).unwrap_or_else(default_workers),
        };
        if cfg.worker_count == 0 {
            return Err("worker count must be positive".into());
        }
        if cfg.k_max == 0 {
            return Err("k_max must be at least 1".into());
        }
        if cfg.prime_min > cfg.prime_max {
            return Err(format!(
                "empty prime range {}..={}",
                cfg.prime_min, cfg.prime_max
            ));
        }
        Ok(cfg)
    }

    pub fn primes(&self) -> Vec<u64> {
        (self.prime_min..=self.prime_max)
            .filter(|&n| genus4::ff::is_prime(n))
            .collect()
    }
}

pub fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "scan" => Ok(Strategy::Scan),
        "resultant" => Ok(Strategy::Resultant),
        "auto" => Ok(Strategy::Auto),
        _ => Err(format!("unknown strategy `{s}` (expected scan, resultant or auto)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: FileConfig = toml::from_str(
            "seed = 7\nk_max = 3\nstrategy = \"scan\"\nworker_count = 2\n",
        )
        .unwrap();
        let o = Overrides {
            seed: Some(42),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(o, file, (5, 31)).unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.k_max, 3);
        assert_eq!(cfg.strategy, Strategy::Scan);
        assert_eq!(cfg.worker_count, 2);
        assert_eq!(cfg.symbolic_cap, DEFAULT_SYMBOLIC_CAP);
        assert_eq!(cfg.out_path, PathBuf::from(DEFAULT_OUT));
        assert_eq!((cfg.prime_min, cfg.prime_max), (5, 31));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("sead = 1").is_err());
    }

    #[test]
    fn bad_values() {
        let o = Overrides {
            worker_count: Some(0),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(o, FileConfig::default(), (5, 5)).is_err());
        let o = Overrides {
            prime_min: Some(11),
            prime_max: Some(7),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(o, FileConfig::default(), (5, 5)).is_err());
    }

    #[test]
    fn primes_in_range() {
        let cfg = RunConfig::resolve(Overrides::default(), FileConfig::default(), (5, 20)).unwrap();
        assert_eq!(cfg.primes(), vec![5, 7, 11, 13, 17, 19]);
    }
}
