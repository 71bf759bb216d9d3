//! Config-file loading and value resolution.
//!
//! Settings resolve in three layers: built-in defaults, then the TOML config
//! file (one section per subcommand), then command-line flags. Unknown keys
//! anywhere in the file are rejected.

use serde::Deserialize;
use std::path::Path;

/// Whole config file: one optional section per subcommand.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub hamiltonian: Option<HamiltonianSection>,
    #[serde(default)]
    pub exact: Option<ExactSection>,
    #[serde(default)]
    pub vqe: Option<VqeSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default, rename = "ansatz-info")]
    pub ansatz_info: Option<AnsatzInfoSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSection {
    pub model: Option<String>,
    pub lambda: Option<f64>,
    pub out: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactSection {
    pub model: Option<String>,
    pub lambda: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

/// Optimizer hyperparameter overrides shared by `vqe` and `sweep`.
/// Only `max_iterations` is also a flag; the rest are config-file keys.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimOverrides {
    pub max_iterations: Option<usize>,
    pub spsa_a: Option<f64>,
    pub spsa_c: Option<f64>,
    pub spsa_target_step: Option<f64>,
    pub cobyla_rho_begin: Option<f64>,
    pub cobyla_rho_end: Option<f64>,
    pub nm_xatol: Option<f64>,
    pub nm_fatol: Option<f64>,
    pub adam_alpha: Option<f64>,
    pub adam_h: Option<f64>,
    pub adam_beta1: Option<f64>,
    pub adam_beta2: Option<f64>,
    pub adam_eps: Option<f64>,
}

impl OptimOverrides {
    /// Apply every set override onto a concrete optimizer config,
    /// leaving its seed and kind untouched.
    pub fn apply(&self, cfg: &mut mmvqe::optim::OptimizerConfig) {
        if let Some(v) = self.max_iterations {
            cfg.max_iterations = v;
        }
        if self.spsa_a.is_some() {
            cfg.spsa_a = self.spsa_a;
        }
        if let Some(v) = self.spsa_c {
            cfg.spsa_c = v;
        }
        if let Some(v) = self.spsa_target_step {
            cfg.spsa_target_step = v;
        }
        if let Some(v) = self.cobyla_rho_begin {
            cfg.cobyla_rho_begin = v;
        }
        if let Some(v) = self.cobyla_rho_end {
            cfg.cobyla_rho_end = v;
        }
        if let Some(v) = self.nm_xatol {
            cfg.nm_xatol = v;
        }
        if let Some(v) = self.nm_fatol {
            cfg.nm_fatol = v;
        }
        if let Some(v) = self.adam_alpha {
            cfg.adam_alpha = v;
        }
        if let Some(v) = self.adam_h {
            cfg.adam_h = v;
        }
        if let Some(v) = self.adam_beta1 {
            cfg.adam_beta1 = v;
        }
        if let Some(v) = self.adam_beta2 {
            cfg.adam_beta2 = v;
        }
        if let Some(v) = self.adam_eps {
            cfg.adam_eps = v;
        }
    }

    /// File values overlaid with flag values (flags win).
    pub fn merged(file: &OptimOverrides, flag_max_iterations: Option<usize>) -> OptimOverrides {
        let mut out = file.clone();
        if flag_max_iterations.is_some() {
            out.max_iterations = flag_max_iterations;
        }
        out
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqeSection {
    pub model: Option<String>,
    pub lambda: Option<f64>,
    pub ansatz: Option<String>,
    pub optimizer: Option<String>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub replicas: Option<usize>,
    pub out_dir: Option<String>,
    pub exact_expectation: Option<bool>,
    /// Optimizer hyperparameters, as a nested `[vqe.optim]` table.
    #[serde(default)]
    pub optim: OptimOverrides,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub model: Option<String>,
    pub couplings: Option<Vec<f64>>,
    pub optimizers: Option<Vec<String>>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub replicas: Option<usize>,
    pub out_dir: Option<String>,
    pub exact_expectation: Option<bool>,
    pub parallelism: Option<usize>,
    /// Optimizer hyperparameters, as a nested `[sweep.optim]` table.
    #[serde(default)]
    pub optim: OptimOverrides,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzInfoSection {
    pub model: Option<String>,
    pub lambda: Option<f64>,
    pub ansatz: Option<String>,
}

impl FileConfig {
    /// Load and strictly parse a TOML config file.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config file {}: {e}", path.display()))
    }
}

/// Three-layer resolution: flag beats file beats default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Same, for settings without a default (must come from flag or file).
pub fn resolve_required<T>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T, String> {
    flag.or(file).ok_or_else(|| format!("missing required setting `{what}` (flag or config file)"))
}
