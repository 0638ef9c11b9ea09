//! Report files: CSV with a fixed documented header, `.` decimals and LF
//! line endings, plus a JSON metadata sidecar carrying the config hash and
//! wall times. Timing lives in the last CSV column (gap sweeps) or only in
//! the sidecar, so identical configs and seeds reproduce reports byte for
//! byte up to timing.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// SHA-256 of the canonical JSON encoding of the resolved (post-override)
/// configuration.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let canon = serde_json::to_vec(config).context("serialising config for hashing")?;
    let digest = Sha256::digest(&canon);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// `<out>.meta.json` next to a report file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

#[derive(Debug, Serialize)]
pub struct Sidecar {
    pub command: String,
    pub library_version: String,
    pub seed: u64,
    pub config_hash: String,
    pub wall_time_s: f64,
}

impl Sidecar {
    pub fn new(command: &str, seed: u64, config_hash: String, wall_time_s: f64) -> Self {
        Sidecar {
            command: command.to_string(),
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config_hash,
            wall_time_s,
        }
    }

    pub fn write(&self, out: &Path) -> Result<()> {
        let path = sidecar_path(out);
        let body = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(&path, body)
            .with_context(|| format!("writing sidecar {}", path.display()))?;
        Ok(())
    }
}

/// Writes a text file, creating parent directories as needed.
pub fn write_text(path: &Path, body: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
