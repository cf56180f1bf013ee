//! Embed-and-verify over a directory of edge lists.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::commands::{embed_graph, parse_graph, verify_embedding};
use crate::report::{
    read_input, sha256_hex, Artifact, Failure, InputDigest, Outcome, RunReport, Success,
};

#[derive(Debug, Clone, Serialize)]
pub struct FileRecord {
    pub file: String,
    pub input_digest: String,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub detail: Option<String>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub max_host_treewidth: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub files: usize,
    pub passed: usize,
    /// Unparseable or not k-apex inputs.
    pub rejected: usize,
    /// Verification or construction failures.
    pub failed: usize,
    pub max_host_treewidth: Option<usize>,
    pub records: Vec<FileRecord>,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("reading directory {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Failure::Input(e.to_string()))?;
        if entry.path().is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

fn jobs() -> Result<Option<usize>, Failure> {
    match std::env::var("CORPUS_JOBS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Input(format!("CORPUS_JOBS={v:?} is not a positive integer"))),
        },
    }
}

fn process(text: &str, k: Option<usize>) -> Result<(usize, usize, usize), Failure> {
    let g = parse_graph(text)?;
    let e = embed_graph(&g, k)?;
    let summary = verify_embedding(&e)?;
    Ok((g.vertex_count(), g.edge_count(), summary.max_host_treewidth()))
}

/// Result of a corpus run. The aggregate is produced even when some files
/// fail; `failure` then says so.
pub struct CorpusRun {
    pub success: Success,
    pub reports: Vec<RunReport>,
    pub failure: Option<Failure>,
}

/// Runs every file, then returns the aggregate and one report per file in
/// file-name order.
pub fn corpus(
    dir: &Path,
    k: Option<usize>,
    out: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<CorpusRun, Failure> {
    let files = corpus_files(dir)?;
    let mut texts = Vec::with_capacity(files.len());
    for f in &files {
        let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        digest.add(name.as_bytes());
        texts.push((name, read_input(f, digest)?));
    }
    let run = |(name, text): &(String, String)| {
        let start = Instant::now();
        let result = process(text, k);
        let elapsed = start.elapsed().as_millis() as u64;
        let (outcome, exit_code, detail) = match &result {
            Ok(_) => (Outcome::Ok, 0, None),
            Err(f) => (f.outcome(), f.exit_code(), Some(f.message().to_string())),
        };
        let record = FileRecord {
            file: name.clone(),
            input_digest: sha256_hex(text.as_bytes()),
            outcome,
            exit_code,
            detail: detail.clone(),
            vertices: result.as_ref().ok().map(|r| r.0),
            edges: result.as_ref().ok().map(|r| r.1),
            max_host_treewidth: result.as_ref().ok().map(|r| r.2),
        };
        let report = RunReport {
            command: "corpus-file".into(),
            input_digest: record.input_digest.clone(),
            outcome,
            exit_code,
            artifacts: Vec::new(),
            timing_ms: elapsed,
            detail,
            result: json!({ "file": name, "vertices": record.vertices, "max_host_treewidth": record.max_host_treewidth }),
        };
        (record, report)
    };
    let results: Vec<(FileRecord, RunReport)> = match jobs()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?
            .install(|| texts.par_iter().map(run).collect()),
        None => texts.par_iter().map(run).collect(),
    };
    let (records, reports): (Vec<FileRecord>, Vec<RunReport>) = results.into_iter().unzip();

    let passed = records.iter().filter(|r| r.exit_code == 0).count();
    let rejected = records
        .iter()
        .filter(|r| matches!(r.exit_code, 2 | 3))
        .count();
    let summary = CorpusSummary {
        files: records.len(),
        passed,
        rejected,
        failed: records.len() - passed - rejected,
        max_host_treewidth: records.iter().filter_map(|r| r.max_host_treewidth).max(),
        records,
    };
    let artifacts = out.iter().map(|p| Artifact::json(p.clone(), &summary)).collect();
    let result = json!({
        "files": summary.files,
        "passed": summary.passed,
        "rejected": summary.rejected,
        "failed": summary.failed,
        "max_host_treewidth": summary.max_host_treewidth,
    });
    let failure = (summary.failed > 0).then(|| {
        Failure::Violation(format!(
            "{} of {} files failed verification",
            summary.failed, summary.files
        ))
    });
    Ok(CorpusRun {
        success: Success { result, artifacts },
        reports,
        failure,
    })
}
