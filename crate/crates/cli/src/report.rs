//! Run reports, failure classes and their exit codes.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Violation,
    Error,
}

/// Why a run did not succeed. Each class has a fixed exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The input was read but fails a checked property.
    Violation(String),
    /// Unreadable or malformed input, or an invalid parameter.
    Input(String),
    /// The graph is not k-apex (or not planar where planarity is required).
    NotApex(String),
    /// A guarantee of the construction did not hold.
    Internal(String),
    /// The request is above a size guard.
    SizeGuard(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Input(_) => 2,
            Failure::NotApex(_) => 3,
            Failure::Internal(_) => 4,
            Failure::SizeGuard(_) => 5,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Failure::Violation(_) => Outcome::Violation,
            _ => Outcome::Error,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Violation(m)
            | Failure::Input(m)
            | Failure::NotApex(m)
            | Failure::Internal(m)
            | Failure::SizeGuard(m) => m,
        }
    }
}

pub fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// A file to write once the command has succeeded.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub path: PathBuf,
    pub contents: String,
}

impl Artifact {
    pub fn json(path: PathBuf, value: &impl Serialize) -> Self {
        let mut contents = serde_json::to_string_pretty(value).expect("serialisable");
        contents.push('\n');
        Artifact { path, contents }
    }
}

/// What a successful command hands back to the runner.
#[derive(Debug, Default)]
pub struct Success {
    pub result: Value,
    pub artifacts: Vec<Artifact>,
}

/// The single JSON document a run prints on stdout.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub artifacts: Vec<String>,
    pub timing_ms: u64,
    pub detail: Option<String>,
    pub result: Value,
}

/// Hashes the command's parameters and input bytes, length-prefixed so
/// that concatenations cannot collide.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new(params: &str) -> Self {
        let mut d = InputDigest(Sha256::new());
        d.add(params.as_bytes());
        d
    }

    pub fn add(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_input(path: &Path, digest: &mut InputDigest) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| Failure::Input(format!("{e:#}")))?;
    digest.add(text.as_bytes());
    Ok(text)
}

pub fn write_artifacts(artifacts: &[Artifact]) -> anyhow::Result<Vec<String>> {
    artifacts
        .iter()
        .map(|a| {
            std::fs::write(&a.path, &a.contents)
                .with_context(|| format!("writing {}", a.path.display()))?;
            Ok(a.path.display().to_string())
        })
        .collect()
}

pub fn append_report(path: &Path, report: &RunReport) -> anyhow::Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening report file {}", path.display()))?;
    let line = serde_json::to_string(report)?;
    writeln!(file, "{line}").with_context(|| format!("appending to {}", path.display()))?;
    Ok(())
}
