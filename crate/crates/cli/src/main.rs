//! `prodstruct`: embeddings of planar and k-apex graphs into products of
//! apex-forests, their verification, and the lower-bound gadgets.
//!
//! Every run prints exactly one JSON report on stdout. Artifacts go only to
//! the files named by `--out` / `--sidecar`. Exit codes: 0 ok, 1 violation,
//! 2 unreadable input or bad parameter, 3 not k-apex, 4 internal error,
//! 5 size guard.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;
mod corpus;
mod report;

use commands::{GadgetRequest, PartitionSource};
use report::{append_report, write_artifacts, Failure, InputDigest, Outcome, RunReport, Success};

#[derive(Debug, Parser)]
#[command(name = "prodstruct", version, about)]
struct Cli {
    /// Also append the run report (and, for `corpus`, one report per file)
    /// as JSON lines to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed a k-apex graph into H1 ⊠ H2 ⊠ K_c with apex-forest hosts.
    Embed {
        /// Edge-list file.
        input: PathBuf,
        /// Apex bound; the default runs the 2-apex construction.
        #[arg(long)]
        k: Option<usize>,
        /// Write the embedding JSON here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Re-verify an embedding against its graph.
    Verify {
        /// Embedding JSON, as written by `embed --out`.
        embedding: PathBuf,
        /// Edge-list file of the embedded graph.
        graph: PathBuf,
    },
    /// Emit a lower-bound gadget as an edge list.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
        #[command(flatten)]
        out: GadgetOut,
    },
    /// Exact treewidth (and optionally pathwidth) of a small graph.
    Tw {
        input: PathBuf,
        /// Also compute the exact pathwidth.
        #[arg(long)]
        path: bool,
        /// Refuse graphs with more vertices than this (at most 30).
        #[arg(long, default_value_t = 20)]
        cap: usize,
        /// Write the decompositions here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Split a planar graph into two triangle-forests and contract a
    /// matching that turns each side into a forest.
    Partition {
        input: PathBuf,
        /// Write {"partition", "matching", "quotient", "forests"} here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Find a rainbow 4-clique in the counterexample graph for given
    /// partitions P (a tree-partition) and Q.
    Rainbow {
        #[arg(long)]
        c: usize,
        /// Partition JSON {"parts": [[...], ...]} for P.
        #[arg(long, value_name = "FILE", required_unless_present = "layered_p")]
        p: Option<PathBuf>,
        /// Use the BFS layering from the fan centre as P.
        #[arg(long, conflicts_with = "p")]
        layered_p: bool,
        /// Partition JSON for Q.
        #[arg(long, value_name = "FILE", required_unless_present = "singleton_q")]
        q: Option<PathBuf>,
        /// Use singletons as Q.
        #[arg(long, conflicts_with = "q")]
        singleton_q: bool,
        /// Lift the size guard on c.
        #[arg(long)]
        allow_large: bool,
        /// Write the clique JSON here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Embed and verify every file in a directory of edge lists.
    Corpus {
        dir: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Write the aggregate with per-file records here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GadgetKind {
    /// Centre 0 over the path 1..n-1.
    Fan { n: usize },
    /// Centres 0 and 1 over the path 2..n-1.
    DoubleFan { n: usize },
    /// The t-distension of an edge-list graph.
    Distension {
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// The planar graph defeating H ⊠ T ⊠ K_c with tw(H) <= 2.
    Counterexample {
        c: usize,
        /// Lift the size guard (c <= 2).
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Args)]
struct GadgetOut {
    /// Write the edge list here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the provenance JSON here.
    #[arg(long, global = true, value_name = "FILE")]
    sidecar: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Embed { .. } => "embed",
            Command::Verify { .. } => "verify",
            Command::Gadget { .. } => "gadget",
            Command::Tw { .. } => "tw",
            Command::Partition { .. } => "partition",
            Command::Rainbow { .. } => "rainbow",
            Command::Corpus { .. } => "corpus",
        }
    }

    /// The parameters that shape the output, excluding file paths; hashed
    /// into the input digest ahead of the file contents.
    fn params(&self) -> String {
        match self {
            Command::Embed { k, .. } => format!("embed k={k:?}"),
            Command::Verify { .. } => "verify".into(),
            Command::Gadget { kind, .. } => match kind {
                GadgetKind::Fan { n } => format!("gadget fan n={n}"),
                GadgetKind::DoubleFan { n } => format!("gadget double-fan n={n}"),
                GadgetKind::Distension { t, .. } => format!("gadget distension t={t}"),
                GadgetKind::Counterexample { c, allow_large } => {
                    format!("gadget counterexample c={c} allow_large={allow_large}")
                }
            },
            Command::Tw { path, cap, .. } => format!("tw path={path} cap={cap}"),
            Command::Partition { .. } => "partition".into(),
            Command::Rainbow {
                c,
                layered_p,
                singleton_q,
                allow_large,
                ..
            } => format!(
                "rainbow c={c} layered_p={layered_p} singleton_q={singleton_q} allow_large={allow_large}"
            ),
            Command::Corpus { k, .. } => format!("corpus k={k:?}"),
        }
    }
}

fn partition_source<'a>(
    file: &'a Option<PathBuf>,
    flag: bool,
    default: PartitionSource<'a>,
) -> PartitionSource<'a> {
    match file {
        Some(path) if !flag => PartitionSource::File(path),
        _ => default,
    }
}

/// What a run produced: artifacts to write (possibly alongside a failure,
/// as for a corpus with failing files) and per-file corpus reports.
struct Run {
    success: Success,
    failure: Option<Failure>,
    file_reports: Vec<RunReport>,
}

impl From<Result<Success, Failure>> for Run {
    fn from(r: Result<Success, Failure>) -> Self {
        let (success, failure) = match r {
            Ok(s) => (s, None),
            Err(f) => (Success::default(), Some(f)),
        };
        Run {
            success,
            failure,
            file_reports: Vec::new(),
        }
    }
}

fn dispatch(command: &Command, digest: &mut InputDigest) -> Run {
    match command {
        Command::Embed { input, k, out } => commands::embed(input, *k, out, digest).into(),
        Command::Verify { embedding, graph } => commands::verify(embedding, graph, digest).into(),
        Command::Gadget { kind, out } => {
            let request = match kind {
                GadgetKind::Fan { n } => GadgetRequest::Fan(*n),
                GadgetKind::DoubleFan { n } => GadgetRequest::DoubleFan(*n),
                GadgetKind::Distension { input, t } => GadgetRequest::Distension { input, t: *t },
                GadgetKind::Counterexample { c, allow_large } => GadgetRequest::Counterexample {
                    c: *c,
                    allow_large: *allow_large,
                },
            };
            commands::gadget(request, &out.out, &out.sidecar, digest).into()
        }
        Command::Tw {
            input,
            path,
            cap,
            out,
        } => commands::tw(input, *path, *cap, out, digest).into(),
        Command::Partition { input, out } => commands::partition(input, out, digest).into(),
        Command::Rainbow {
            c,
            p,
            layered_p,
            q,
            singleton_q,
            allow_large,
            out,
        } => {
            let p = partition_source(p, *layered_p, PartitionSource::Layered);
            let q = partition_source(q, *singleton_q, PartitionSource::Singletons);
            commands::rainbow(*c, p, q, *allow_large, out, digest).into()
        }
        Command::Corpus { dir, k, out } => match corpus::corpus(dir, *k, out, digest) {
            Ok(run) => Run {
                success: run.success,
                failure: run.failure,
                file_reports: run.reports,
            },
            Err(f) => Err(f).into(),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut digest = InputDigest::new(&cli.command.params());
    let run = dispatch(&cli.command, &mut digest);

    let (artifacts, failure) = match write_artifacts(&run.success.artifacts) {
        Ok(paths) => (paths, run.failure),
        Err(e) => (Vec::new(), Some(Failure::Internal(format!("{e:#}")))),
    };
    let (outcome, exit_code, detail, payload) = match failure {
        None => (Outcome::Ok, 0, None, run.success.result),
        Some(f) => {
            eprintln!("prodstruct {}: {}", cli.command.name(), f.message());
            let detail = Some(f.message().to_string());
            (f.outcome(), f.exit_code(), detail, run.success.result)
        }
    };
    let report = RunReport {
        command: cli.command.name().into(),
        input_digest: digest.finish(),
        outcome,
        exit_code,
        artifacts,
        timing_ms: start.elapsed().as_millis() as u64,
        detail,
        result: payload,
    };
    println!("{}", serde_json::to_string(&report).expect("report serialises"));

    if let Some(path) = &cli.report {
        let appended = run
            .file_reports
            .iter()
            .chain(std::iter::once(&report))
            .try_for_each(|r| append_report(path, r));
        if let Err(e) = appended {
            eprintln!("prodstruct: {e:#}");
            return ExitCode::from(4);
        }
    }
    ExitCode::from(exit_code as u8)
}
