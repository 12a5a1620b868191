use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Knobs shared by every computation: the prime seed, how many primes the
/// modular rank uses, the size budget, and optional word/degree caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub seed: u64,
    pub primes: usize,
    /// Upper bound on matrix entries (dense) or on rows and on columns
    /// (streamed).
    pub budget: u64,
    /// Overrides the envelope-derived cap on exponent word length.
    pub word_cap: Option<usize>,
    /// Largest degree used for containment evidence when classifying growth.
    pub evidence_degree: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            seed: 0x5eed_2024,
            primes: 3,
            budget: 10_000_000,
            word_cap: None,
            evidence_degree: 4,
        }
    }
}

impl EngineConfig {
    pub fn from_toml(text: &str) -> Result<EngineConfig> {
        let cfg: EngineConfig = toml::from_str(text).map_err(|e| Error::parse("config", e.message()))?;
        if cfg.primes < 2 {
            return Err(Error::BadParams("config: at least two primes are required".into()));
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
