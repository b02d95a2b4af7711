//! Scan configuration: an optional TOML file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// Fields of a scan configuration file. `poly` lists coefficients highest
/// degree first, as on the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanFile {
    pub label: Option<String>,
    pub poly: Option<Vec<i64>>,
    #[serde(rename = "N")]
    pub bound: Option<u64>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl ScanFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Resolved scan settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub label: String,
    /// Ascending coefficients of f.
    pub coeffs: Vec<i64>,
    pub bound: u64,
    pub threads: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl ScanConfig {
    /// Command-line values win over file values.
    pub fn resolve(file: ScanFile, cli: ScanFile) -> CliResult<Self> {
        let poly = cli
            .poly
            .or(file.poly)
            .ok_or_else(|| CliError::Usage("scan needs --poly or `poly` in the config".into()))?;
        let bound = cli
            .bound
            .or(file.bound)
            .ok_or_else(|| CliError::Usage("scan needs --N or `N` in the config".into()))?;
        let mut coeffs = poly;
        coeffs.reverse();
        Ok(ScanConfig {
            label: cli.label.or(file.label).unwrap_or_else(|| "curve".into()),
            coeffs,
            bound,
            threads: cli.threads.or(file.threads).unwrap_or(0),
            seed: cli.seed.or(file.seed).unwrap_or(0),
            out: cli.out.or(file.out),
        })
    }
}
