//! Run manifests: everything needed to reproduce an output file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::transform::io::write_json;

/// Version tag recorded in every manifest.
pub const VERSION_TAG: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Description of one command-line run.
///
/// Two runs with equal `command`, `parameters`, `version` and `threads`
/// produce bitwise identical output files: every reduction in the crate uses
/// a fixed pairwise tree that does not depend on the thread schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Every parameter of the run, defaulted ones included.
    pub parameters: serde_json::Value,
    pub version: String,
    /// Size of the worker pool (COULOMB_THREADS, or the machine default).
    pub threads: usize,
    pub wall_time_s: f64,
    /// Error estimates and tolerances reached by the computation.
    pub tolerances: BTreeMap<String, f64>,
    /// Command-specific summary (verdicts, fitted slopes, kernel values…).
    pub summary: serde_json::Value,
    pub outputs: Vec<PathBuf>,
    pub exit_code: i32,
}

impl RunManifest {
    /// Path of the manifest that accompanies `out`: `<out>.manifest.json`.
    pub fn path_for(out: &Path) -> PathBuf {
        let mut s = out.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}
