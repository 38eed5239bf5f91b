//! Run manifests: every command records its full parameter set, the tool
//! version, and content digests of all files it wrote. Result files stay
//! free of wall-clock data so identical runs are bit-identical; the manifest
//! alone carries the timestamp.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub parameters: serde_json::Value,
    pub created_unix_ms: u128,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

pub fn digest_file(path: &Path) -> Result<FileDigest, CliError> {
    let bytes = fs::read(path)?;
    Ok(FileDigest {
        path: path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string()),
        sha256: sha256_hex(&bytes),
    })
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            created_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn add_input(&mut self, path: &Path) -> Result<(), CliError> {
        self.inputs.push(digest_file(path)?);
        Ok(())
    }

    pub fn add_output(&mut self, path: &Path) -> Result<(), CliError> {
        self.outputs.push(digest_file(path)?);
        Ok(())
    }

    /// Writes `manifest.json` into the output directory.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf, CliError> {
        let path = out_dir.join("manifest.json");
        let mut body = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Numerical(format!("manifest serialization: {e}")))?;
        body.push('\n');
        fs::write(&path, body)?;
        Ok(path)
    }
}

/// Resolves the output directory: explicit flag, else the
/// `DIRAC_COULOMB_OUT` environment variable, else `./out`.
pub fn resolve_out_dir(flag: Option<&str>) -> PathBuf {
    match flag {
        Some(p) => PathBuf::from(p),
        None => std::env::var("DIRAC_COULOMB_OUT")
            .map(PathBuf::from)
            .unwrap_or_else(|_| PathBuf::from("out")),
    }
}
