use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use mmle::ExperimentConfig;
use serde::{Deserialize, Serialize};

use crate::exit::CliError;

/// Record written next to every simulation artifact. Timestamps live only
/// here so the artifacts themselves stay byte-reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub config: ExperimentConfig,
    pub seed: u64,
    pub version: String,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<PathBuf>,
}

pub fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// `results.csv` -> `results.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}
