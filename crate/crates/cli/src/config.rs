//! Command options, layered as flags over an optional TOML file.
//!
//! Each subcommand owns a table in the file (`[flat-obstruction]`,
//! `[nahm.run]`, ...). Keys are the flag names without the dashes prefix.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

/// Usage or configuration problem; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

macro_rules! layered {
    ($(#[$sm:meta])* $name:ident { $($(#[$m:meta])* $f:ident : $t:ty),* $(,)? }) => {
        $(#[$sm])*
        #[derive(Args, Deserialize, Debug, Default, Clone)]
        #[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
        pub struct $name {
            $($(#[$m])* #[arg(long)] pub $f: Option<$t>,)*
        }

        impl $name {
            /// Fills unset fields from `file`.
            pub fn or(self, file: Self) -> Self {
                Self { $($f: self.$f.or(file.$f),)* }
            }
        }
    };
}

layered!(AlgebraOpts {
    seed: u64,
    /// Random pairs, triples and units per check.
    samples: usize,
    /// JSON report path; stdout when absent.
    out: PathBuf,
});

layered!(FlatOpts {
    /// Points are drawn in B^(n+1).
    n: usize,
    points: usize,
    seed: u64,
    /// CSV path; stdout when absent.
    out: PathBuf,
    rho2_tol: f64,
    rho0_tol: f64,
});

layered!(SasakianOpts {
    /// The sphere lives in B^(n+1).
    n: usize,
    points: usize,
    seed: u64,
    /// Tangent samples per point.
    samples: usize,
    /// JSON report path; stdout when absent.
    out: PathBuf,
    exact_tol: f64,
    fd_tol: f64,
    form_tol: f64,
});

layered!(RunOpts {
    /// `su2` or a JSON structure-constant file.
    algebra: String,
    /// JSON file with `t0` (optional), `t1`, `t2`, `t3`.
    init: PathBuf,
    steps: usize,
    length: f64,
    #[arg(num_args = 0..=1, default_missing_value = "true")]
    reduced: bool,
    /// CSV path; stdout when absent.
    out: PathBuf,
    /// Fail when the conserved quantity drifts by more than this.
    drift_tol: f64,
});

layered!(ScanOpts {
    /// const-t1, const-t2 or const-t3.
    family: String,
    from: f64,
    to: f64,
    samples: usize,
    steps: usize,
    /// Apply the scaling symmetry with this factor before evaluating.
    scale: f64,
    /// CSV path for the scan rows; stdout when absent.
    out: PathBuf,
    /// CSV path for the refined roots.
    roots: PathBuf,
});

#[derive(Deserialize, Debug, Default)]
#[serde(default, deny_unknown_fields)]
pub struct NahmTables {
    pub run: RunOpts,
    #[serde(rename = "degeneracy-scan")]
    pub degeneracy_scan: ScanOpts,
}

#[derive(Deserialize, Debug, Default)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "verify-algebra")]
    pub verify_algebra: AlgebraOpts,
    #[serde(rename = "flat-obstruction")]
    pub flat_obstruction: FlatOpts,
    #[serde(rename = "verify-sasakian")]
    pub verify_sasakian: SasakianOpts,
    pub nahm: NahmTables,
}

pub fn load(path: Option<&Path>) -> anyhow::Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| config_error(format!("malformed config {}: {e}", path.display())))
}

pub fn positive(name: &str, v: f64) -> anyhow::Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(config_error(format!("{name} must be positive, got {v}")))
    }
}

pub fn at_least(name: &str, v: usize, min: usize) -> anyhow::Result<usize> {
    if v >= min {
        Ok(v)
    } else {
        Err(config_error(format!("{name} must be at least {min}, got {v}")))
    }
}

pub fn existing(name: &str, p: PathBuf) -> anyhow::Result<PathBuf> {
    if p.is_file() {
        Ok(p)
    } else {
        Err(config_error(format!("{name} file {} does not exist", p.display())))
    }
}
