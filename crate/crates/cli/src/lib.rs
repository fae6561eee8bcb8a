//! Command-line scenarios for the fast-light simulator: parameter sweeps,
//! pulse propagation, weak-value fits and the reference figures.

pub mod commands;
pub mod config;
pub mod error;
mod plots;
pub mod scenario;

use std::path::PathBuf;

pub use commands::Report;
pub use config::ScenarioConfig;
pub use error::CliError;

/// Environment variable naming the default output root.
pub const OUTPUT_ROOT_ENV: &str = "FASTLIGHT_SEED_DIR";

pub const DEFAULT_OUTPUT_DIR: &str = "fastlight-output";

/// `--out`, then the config's `output_dir`, then `$FASTLIGHT_SEED_DIR`, then
/// `fastlight-output`.
pub fn output_root(flag: Option<PathBuf>, config: &ScenarioConfig, env: Option<String>) -> PathBuf {
    flag.or_else(|| config.output_dir.clone())
        .or_else(|| env.filter(|e| !e.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

pub fn load_config(path: Option<&std::path::Path>) -> Result<ScenarioConfig, CliError> {
    match path {
        None => Ok(ScenarioConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Syntax {
                source_name: p.display().to_string(),
                line: 0,
                message: format!("cannot read config: {e}"),
            })?;
            ScenarioConfig::parse(&text, &p.display().to_string())
        }
    }
}
