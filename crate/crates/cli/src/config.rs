use crate::error::CliError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Latex,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConventionFlags {
    /// WKB orders in the normalization with q = ħ/t (true) or q = iħ/t (false).
    #[serde(default = "yes")]
    pub appendix_b_normalization: bool,
}

fn yes() -> bool {
    true
}

/// Settings file contents; every key is optional and unknown keys are errors.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConfigFile {
    pub cache_dir: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
    pub max_genus: Option<usize>,
    pub max_order: Option<usize>,
    pub n_points: Option<usize>,
    pub float_tol: Option<f64>,
    pub convention_flags: Option<ConventionFlags>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Resolved settings of one invocation: flag, then settings file, then default.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub cache_dir: PathBuf,
    pub output_format: OutputFormat,
    pub max_genus: usize,
    pub max_order: usize,
    pub n_points: usize,
    pub float_tol: f64,
    pub convention_flags: ConventionFlags,
}

pub const MAX_GENUS_LIMIT: usize = 16;
pub const MAX_ORDER_LIMIT: usize = 400;
pub const N_POINTS_LIMIT: usize = 8;

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.max_genus > MAX_GENUS_LIMIT {
            return bad(format!("maxGenus {} exceeds {MAX_GENUS_LIMIT}", self.max_genus));
        }
        if self.max_order > MAX_ORDER_LIMIT {
            return bad(format!("maxOrder {} exceeds {MAX_ORDER_LIMIT}", self.max_order));
        }
        if self.n_points == 0 || self.n_points > N_POINTS_LIMIT {
            return bad(format!("nPoints must lie in 1..={N_POINTS_LIMIT}, got {}", self.n_points));
        }
        if !(self.float_tol.is_finite() && self.float_tol > 0.0 && self.float_tol < 1e-2) {
            return bad(format!("floatTol must lie in (0, 1e-2), got {}", self.float_tol));
        }
        if self.cache_dir.as_os_str().is_empty() {
            return bad("cacheDir is empty".into());
        }
        Ok(())
    }
}
