use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const FILE_NAME: &str = "manifest.json";

/// Provenance record written next to every run's outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    /// Every option after defaults were applied.
    pub config: serde_json::Value,
    /// SHA-256 of each input file, keyed by the path given on the command line.
    pub inputs: BTreeMap<String, String>,
    /// SHA-256 of each output file, keyed by file name; filled in when the run ends.
    pub outputs: BTreeMap<String, String>,
    pub status: Status,
    pub started_at: String,
    pub finished_at: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Running,
    Succeeded,
    Failed,
}

pub fn sha256_file(path: &Path) -> anyhow::Result<String> {
    let mut file = fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf).with_context(|| format!("cannot read {}", path.display()))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Owns an output directory for the duration of one run.
pub struct RunDir {
    dir: PathBuf,
    manifest: RunManifest,
    outputs: Vec<String>,
}

impl RunDir {
    /// Digests `inputs`, creates `dir` and writes the manifest in the running state.
    pub fn open(
        dir: &Path,
        subcommand: &str,
        seed: Option<u64>,
        config: &impl Serialize,
        inputs: &[&Path],
    ) -> anyhow::Result<Self> {
        let inputs = inputs
            .iter()
            .map(|p| Ok((p.display().to_string(), sha256_file(p)?)))
            .collect::<anyhow::Result<_>>()?;
        fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
        let manifest = RunManifest {
            subcommand: subcommand.to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            config: serde_json::to_value(config)?,
            inputs,
            outputs: BTreeMap::new(),
            status: Status::Running,
            started_at: now(),
            finished_at: None,
        };
        let run = RunDir { dir: dir.to_path_buf(), manifest, outputs: Vec::new() };
        run.write()?;
        Ok(run)
    }

    /// Path for an output file, recorded for digesting when the run ends.
    pub fn output(&mut self, name: &str) -> PathBuf {
        self.outputs.push(name.to_string());
        self.dir.join(name)
    }

    pub fn create(&mut self, name: &str) -> anyhow::Result<fs::File> {
        let path = self.output(name);
        fs::File::create(&path).with_context(|| format!("cannot create {}", path.display()))
    }

    fn write(&self) -> anyhow::Result<()> {
        let path = self.dir.join(FILE_NAME);
        let text = serde_json::to_string_pretty(&self.manifest)?;
        fs::write(&path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
    }

    /// Digests whatever outputs exist and records the final status.
    pub fn finish(mut self, status: Status) -> anyhow::Result<()> {
        for name in &self.outputs {
            let path = self.dir.join(name);
            if path.is_file() {
                self.manifest.outputs.insert(name.clone(), sha256_file(&path)?);
            }
        }
        self.manifest.status = status;
        self.manifest.finished_at = Some(now());
        self.write()
    }
}
