//! Report envelope, input digests and output plumbing.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use maxsym_core::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

/// A file that has been read once; the digest covers exactly the bytes parsed.
pub struct Loaded {
    pub input: Input,
    pub text: String,
}

pub fn load(role: &'static str, path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{}: not UTF-8", path.display())))?;
    Ok(Loaded {
        input: Input {
            role,
            path: path.display().to_string(),
            sha256,
        },
        text,
    })
}

/// What a verb hands back to `main`.
pub struct Outcome {
    pub body: Value,
    pub exit: i32,
    /// One line for standard error.
    pub summary: String,
}

/// Key order is fixed so reruns are byte-identical.
#[derive(Serialize)]
pub struct Envelope<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub inputs: &'a [Input],
    pub parameters: Value,
    pub primes: Vec<u64>,
    pub exit_code: i32,
    pub result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u128>,
}

pub fn write(output: Option<&PathBuf>, json: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, json).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}
