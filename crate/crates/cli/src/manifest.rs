use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use capote::aspects::sha256_hex;
use chrono::{SecondsFormat, Utc};
use serde::Serialize;

use crate::error::CliError;

/// Provenance record written next to every output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: &'static str,
    pub started_at: String,
    /// Input path → sha256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    /// Resource name → checksum (lexicon, gazetteer, model).
    pub resources: BTreeMap<String, String>,
    pub config: BTreeMap<String, String>,
    /// Output path → sha256 of the bytes written.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn start(command: String) -> Self {
        RunManifest {
            command,
            tool_version: env!("CARGO_PKG_VERSION"),
            started_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            inputs: BTreeMap::new(),
            resources: BTreeMap::new(),
            config: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.insert(path.display().to_string(), sha256_hex(bytes));
    }

    /// Writes `bytes` to `path` atomically and records the output digest.
    pub fn write_output(&mut self, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
        write_atomic(path, bytes)?;
        self.outputs.insert(path.display().to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub fn finish(&self, path: &Path) -> Result<(), CliError> {
        let mut json = serde_json::to_string_pretty(self).expect("manifest serializes");
        json.push('\n');
        write_atomic(path, json.as_bytes())
    }
}

/// `out.csv` → `out.csv.manifest.json`.
pub fn sidecar(path: &Path) -> PathBuf {
    with_suffix(path, ".manifest.json")
}

pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

/// Write-then-rename within the destination directory, so readers never
/// observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
