//! Artifact writing and the run manifest.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'a str,
    pub arguments: Value,
    pub config: &'a RunConfig,
    pub seed: u64,
    pub rng: &'static str,
    pub artifacts: &'a [Artifact],
}

/// Writes files into the output directory and records their checksums.
#[derive(Debug)]
pub struct Artifacts {
    dir: PathBuf,
    written: Vec<Artifact>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl Artifacts {
    pub fn create(dir: &Path) -> CliResult<Self> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Artifacts {
            dir: dir.to_owned(),
            written: Vec::new(),
        })
    }

    pub fn written(&self) -> &[Artifact] {
        &self.written
    }

    fn put(&mut self, name: &str, bytes: &[u8]) -> CliResult<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        self.written.retain(|a| a.file != name);
        self.written.push(Artifact {
            file: name.to_owned(),
            bytes: bytes.len(),
            sha256: hex(&Sha256::digest(bytes)),
        });
        Ok(())
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
        text.push('\n');
        self.put(name, text.as_bytes())
    }

    /// CSV with a header row; floats use the shortest round-trip form.
    pub fn csv<R: Serialize>(&mut self, name: &str, rows: impl IntoIterator<Item = R>) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::io(self.dir.join(name), e.into_error()))?;
        self.put(name, &bytes)
    }

    /// Writes `manifest.json` listing every artifact, sorted by file name.
    pub fn finish(mut self, subcommand: &str, arguments: Value, config: &RunConfig) -> CliResult<PathBuf> {
        self.written.sort_by(|a, b| a.file.cmp(&b.file));
        let manifest = Manifest {
            tool: "kirkwood-lab",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            arguments,
            config,
            seed: config.seed,
            rng: kirkwood::weaksim::RNG_ID,
            artifacts: &self.written,
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        let path = self.dir.join(MANIFEST);
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}
