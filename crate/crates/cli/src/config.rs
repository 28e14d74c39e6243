//! Session configuration: flat JSON file, overridden by flags.

use std::path::{Path, PathBuf};

use gkz_core::{functional, hardy, Precision};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct SessionConfig {
    pub precision_bits: u32,
    pub truncation_k: usize,
    pub weight_truncation_n: usize,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            precision_bits: Precision::DEFAULT.bits(),
            truncation_k: functional::DEFAULT_TRUNCATION,
            weight_truncation_n: hardy::DEFAULT_TRUNCATION,
            seed: 0,
            output_dir: None,
        }
    }
}

/// Flag values that override the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_bits: Option<u32>,
    pub truncation_k: Option<usize>,
    pub weight_truncation_n: Option<usize>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn resolve(file: Option<&Path>, overrides: Overrides) -> Result<Self, CliError> {
        let mut config = match file {
            Some(path) => Self::load(path)?,
            None => Self::default(),
        };
        if let Some(v) = overrides.precision_bits {
            config.precision_bits = v;
        }
        if let Some(v) = overrides.truncation_k {
            config.truncation_k = v;
        }
        if let Some(v) = overrides.weight_truncation_n {
            config.weight_truncation_n = v;
        }
        if let Some(v) = overrides.seed {
            config.seed = v;
        }
        if overrides.output_dir.is_some() {
            config.output_dir = overrides.output_dir;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        Precision::new(self.precision_bits).map_err(|e| CliError::Usage(e.to_string()))?;
        if self.truncation_k < 2 {
            return Err(CliError::Usage(format!(
                "truncationK must be at least 2, got {}",
                self.truncation_k
            )));
        }
        if self.weight_truncation_n < 2 {
            return Err(CliError::Usage(format!(
                "weightTruncationN must be at least 2, got {}",
                self.weight_truncation_n
            )));
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.precision_bits).expect("validated")
    }
}
