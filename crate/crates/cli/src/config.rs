use std::path::{Path, PathBuf};

use clap::ValueEnum;
use kirkwood::Tolerances;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_ENV: &str = "KIRKWOOD_LAB_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    pub fn json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }

    pub fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerances: Tolerances::default(),
            out_dir: PathBuf::from("kirkwood-out"),
            format: OutputFormat::Both,
            seed: 0,
        }
    }
}

/// Flag values that take precedence over the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_owned(),
            message: e.to_string(),
        })
    }

    /// Defaults, then the file named by `KIRKWOOD_LAB_CONFIG`, then flags.
    pub fn resolve(env_path: Option<PathBuf>, flags: Overrides) -> CliResult<Self> {
        let mut config = match env_path {
            Some(path) => RunConfig::from_file(&path)?,
            None => RunConfig::default(),
        };
        if let Some(dir) = flags.out_dir {
            config.out_dir = dir;
        }
        if let Some(format) = flags.format {
            config.format = format;
        }
        if let Some(seed) = flags.seed {
            config.seed = seed;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = self.tolerances.non_positive();
        if !bad.is_empty() {
            return Err(CliError::Usage(format!(
                "tolerances must be positive: {}",
                bad.join(", ")
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("config.json");
        std::fs::write(
            &path,
            r#"{"seed": 7, "format": "csv", "tolerances": {"closure": 1e-6}}"#,
        )
        .unwrap();
        let config = RunConfig::resolve(Some(path.clone()), Overrides::default()).unwrap();
        assert_eq!(config.seed, 7);
        assert_eq!(config.format, OutputFormat::Csv);
        assert_eq!(config.tolerances.closure, 1e-6);
        assert_eq!(config.tolerances.norm, Tolerances::DEFAULT.norm);

        let flags = Overrides {
            seed: Some(9),
            ..Overrides::default()
        };
        assert_eq!(RunConfig::resolve(Some(path), flags).unwrap().seed, 9);
    }

    #[test]
    fn rejects_non_positive_tolerances() {
        let mut config = RunConfig::default();
        config.tolerances.snap = 0.0;
        assert!(matches!(config.validate(), Err(CliError::Usage(m)) if m.contains("snap")));
    }
}
