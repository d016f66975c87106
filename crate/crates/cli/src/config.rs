use std::path::{Path, PathBuf};

use serde::Deserialize;

use jobsphere_core::index::HnswConfig;

use crate::CliError;

/// Settings shared by every subcommand. Built from defaults, then the
/// config file, then flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub data_dir: PathBuf,
    pub index: HnswConfig,
    pub weights: PathBuf,
    pub seed: u64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub data_dir: Option<PathBuf>,
    pub weights: Option<PathBuf>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub index: IndexSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexSection {
    pub m: Option<usize>,
    pub ef_construction: Option<usize>,
    pub ef_search: Option<usize>,
}

/// Flag values that override the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub data_dir: Option<PathBuf>,
    pub weights: Option<PathBuf>,
    pub seed: Option<u64>,
    pub m: Option<usize>,
    pub ef_construction: Option<usize>,
    pub ef_search: Option<usize>,
}

impl CliConfig {
    pub fn load(file: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let fc = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::usage("--config", format!("{}: {e}", p.display())))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| CliError::usage("--config", format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        let data_dir = flags
            .data_dir
            .clone()
            .or(fc.data_dir)
            .or_else(|| std::env::var_os("DATA_DIR").filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| "data".into());
        let defaults = HnswConfig::default();
        let index = HnswConfig {
            m: flags.m.or(fc.index.m).unwrap_or(defaults.m),
            ef_construction: flags.ef_construction.or(fc.index.ef_construction).unwrap_or(defaults.ef_construction),
            ef_search: flags.ef_search.or(fc.index.ef_search).unwrap_or(defaults.ef_search),
            seed: defaults.seed,
        };
        let cfg = Self {
            weights: flags.weights.clone().or(fc.weights).unwrap_or_else(|| data_dir.join("rank_weights.json")),
            seed: flags.seed.or(fc.seed).unwrap_or(2026),
            data_dir,
            index,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.data_dir.exists() && !self.data_dir.is_dir() {
            return Err(CliError::usage("--data-dir", format!("{} is not a directory", self.data_dir.display())));
        }
        if self.weights.exists() && !self.weights.is_file() {
            return Err(CliError::usage("--weights", format!("{} is not a file", self.weights.display())));
        }
        if self.index.m < 2 {
            return Err(CliError::usage("--m", "must be at least 2"));
        }
        if self.index.ef_construction == 0 || self.index.ef_search == 0 {
            return Err(CliError::usage("--ef-search", "ef values must be positive"));
        }
        Ok(())
    }
}
