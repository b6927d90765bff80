use std::path::Path;

use affdet::detengine::{Caps, DEFAULT_ORACLE_CAP, DEFAULT_SYMBOLIC_CAP};
use serde::Deserialize;

use crate::failure::Failure;

pub const THREADS_ENV: &str = "AFFDET_THREADS";
pub const CONFIG_ENV: &str = "AFFDET_CONFIG";

/// Run settings. Built from defaults, then the TOML file, then flags.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub oracle_cap: u64,
    pub symbolic_cap: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { threads: 0, oracle_cap: DEFAULT_ORACLE_CAP, symbolic_cap: DEFAULT_SYMBOLIC_CAP, seed: 0 }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: Config =
            toml::from_str(&text).map_err(|e| Failure::Input(format!("bad config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.oracle_cap == 0 || self.symbolic_cap == 0 {
            return Err(Failure::Input("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps { oracle: self.oracle_cap, symbolic_q: self.symbolic_cap }
    }
}
