use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to replay a run. Identical manifests give identical
/// outputs, so nothing time- or machine-dependent goes in here.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub parameters: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Vec<FileHash>,
    pub tool_version: String,
    pub outputs: Vec<FileHash>,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Manifest {
    pub fn new(command: &str, argv: &[String], seed: Option<u64>, base: &Path, inputs: &[PathBuf]) -> std::io::Result<Manifest> {
        let inputs = inputs
            .iter()
            .map(|p| Ok(FileHash { path: p.display().to_string(), sha256: sha256(&std::fs::read(base.join(p))?) }))
            .collect::<std::io::Result<_>>()?;
        Ok(Manifest {
            command: command.to_string(),
            parameters: argv.to_vec(),
            seed,
            inputs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        })
    }
}

/// Writes `result.json` and `manifest.json` into `out`. A generated graph
/// may instead go to a file path, with the manifest beside it.
pub fn write_artifacts(out: &Path, result: &Value, mut manifest: Manifest, graph_file: bool) -> std::io::Result<()> {
    let body = serde_json::to_string_pretty(result).expect("json") + "\n";
    let is_file = graph_file && out.extension().is_some_and(|e| e == "json");
    let (result_path, manifest_path) = if is_file {
        if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut m = out.as_os_str().to_owned();
        m.push(".manifest.json");
        (out.to_path_buf(), PathBuf::from(m))
    } else {
        std::fs::create_dir_all(out)?;
        (out.join("result.json"), out.join("manifest.json"))
    };
    std::fs::write(&result_path, &body)?;
    let name = result_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    manifest.outputs.push(FileHash { path: name, sha256: sha256(body.as_bytes()) });
    std::fs::write(manifest_path, serde_json::to_string_pretty(&manifest).expect("json") + "\n")
}
