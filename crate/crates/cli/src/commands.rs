//! One function per subcommand. Each reads its inputs (feeding the digest),
//! computes, and returns the report payload plus any artifacts to write.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use prodstruct::decomposition::{
    apex_forest_decomposition, exact_pathwidth, exact_treewidth, is_apex_forest, ApexForest,
    DecompositionError, ExactConfig,
};
use prodstruct::embedding::{
    apex_product_structure, k_apex_product_structure, EmbeddingError, ProductEmbedding,
};
use prodstruct::graph::{format_edge_list, is_planar, parse_edge_list};
use prodstruct::io::{
    CounterexampleJson, DistensionJson, EdgeListJson, EmbeddingJson, MatchingJson,
    PartitionJson, PathDecompositionJson, RainbowJson, TreeDecompositionJson,
};
use prodstruct::lowerbound::{
    counterexample_graph, distension, double_fan, fan, find_rainbow_k4_with_stage,
    is_rainbow_k4, layered_tree_partition, Counterexample, GadgetConfig, LowerBoundError,
};
use prodstruct::partition::{planar_contractible_matching, PartitionError};
use prodstruct::{Graph, VertexPartition};

use crate::report::{input_error, read_input, Artifact, Failure, InputDigest, Success};

/// Hosts up to this size get an exact treewidth; larger ones are certified
/// by their apex-forest decomposition.
const EXACT_HOST_CAP: usize = 16;

pub fn parse_graph(text: &str) -> Result<Graph, Failure> {
    parse_edge_list(text).map_err(input_error)
}

fn read_graph(path: &Path, digest: &mut InputDigest) -> Result<Graph, Failure> {
    let text = read_input(path, digest)?;
    parse_edge_list(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(
    path: &Path,
    digest: &mut InputDigest,
) -> Result<T, Failure> {
    let text = read_input(path, digest)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn edge_list_artifact(path: &Option<PathBuf>, g: &Graph) -> Option<Artifact> {
    path.as_ref().map(|p| Artifact {
        path: p.clone(),
        contents: format_edge_list(g),
    })
}

fn json_artifact(path: &Option<PathBuf>, value: &impl Serialize) -> Option<Artifact> {
    path.as_ref().map(|p| Artifact::json(p.clone(), value))
}

pub fn embed_graph(g: &Graph, k: Option<usize>) -> Result<ProductEmbedding, Failure> {
    let result = match k {
        Some(k) => k_apex_product_structure(g, k),
        None => apex_product_structure(g),
    };
    result.map_err(|e| match e {
        EmbeddingError::NotKApex { .. } => Failure::NotApex(e.to_string()),
        other => Failure::Internal(other.to_string()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HostCheck {
    pub order: usize,
    pub size: usize,
    /// `"forest"` or the apex vertex.
    pub apex_forest: serde_json::Value,
    pub treewidth: usize,
    /// `"exact"`, or `"certificate"` when only the bound was checked.
    pub treewidth_method: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub vertices: usize,
    pub edges: usize,
    pub c: usize,
    pub hosts: [HostCheck; 2],
    pub augmented_edges: usize,
}

impl VerifySummary {
    pub fn max_host_treewidth(&self) -> usize {
        self.hosts[0].treewidth.max(self.hosts[1].treewidth)
    }
}

fn check_host(h: &Graph, side: usize) -> Result<HostCheck, Failure> {
    let apex = is_apex_forest(h)
        .ok_or_else(|| Failure::Violation(format!("host {side} is not an apex-forest")))?;
    let (treewidth, method) = if h.vertex_count() <= EXACT_HOST_CAP {
        let config = ExactConfig {
            vertex_cap: EXACT_HOST_CAP,
        };
        let w = exact_treewidth(h, &config).map_err(|e| Failure::Internal(e.to_string()))?;
        (w.width, "exact")
    } else {
        let d = apex_forest_decomposition(h)
            .ok_or_else(|| Failure::Internal(format!("no decomposition for host {side}")))?;
        let w = d
            .checked_width(h)
            .map_err(|v| Failure::Internal(format!("host {side} certificate: {v}")))?;
        (w, "certificate")
    };
    if treewidth > 2 {
        return Err(Failure::Violation(format!(
            "host {side} has treewidth {treewidth}, above 2"
        )));
    }
    Ok(HostCheck {
        order: h.vertex_count(),
        size: h.edge_count(),
        apex_forest: match apex {
            ApexForest::Forest => json!("forest"),
            ApexForest::Apex(a) => json!({ "apex": a }),
        },
        treewidth,
        treewidth_method: method,
    })
}

/// Full re-verification of an embedding: the map, the augmented pairs, and
/// both hosts.
pub fn verify_embedding(e: &ProductEmbedding) -> Result<VerifySummary, Failure> {
    e.validate().map_err(|v| Failure::Violation(v.to_string()))?;
    let n = e.source.vertex_count();
    for &(a, b) in &e.augmented_edges {
        if a >= n || b >= n || a == b {
            return Err(Failure::Violation(format!("augmented pair {a}-{b} is not a vertex pair")));
        }
        if !e.adjacent(e.map[a], e.map[b]) {
            return Err(Failure::Violation(format!(
                "augmented pair {a}-{b} maps to non-adjacent points"
            )));
        }
    }
    let hosts = [check_host(&e.host1, 1)?, check_host(&e.host2, 2)?];
    Ok(VerifySummary {
        vertices: n,
        edges: e.source.edge_count(),
        c: e.c,
        hosts,
        augmented_edges: e.augmented_edges.len(),
    })
}

pub fn embed(
    input: &Path,
    k: Option<usize>,
    out: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let g = read_graph(input, digest)?;
    let e = embed_graph(&g, k)?;
    let summary = verify_embedding(&e).map_err(|f| {
        Failure::Internal(format!("constructed embedding fails verification: {}", f.message()))
    })?;
    Ok(Success {
        result: json!({ "verification": summary }),
        artifacts: json_artifact(out, &EmbeddingJson::from(&e)).into_iter().collect(),
    })
}

pub fn verify(
    embedding: &Path,
    graph: &Path,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let json: EmbeddingJson = read_json(embedding, digest)?;
    let g = read_graph(graph, digest)?;
    let e = json
        .to_embedding(&g)
        .map_err(|err| Failure::Violation(err.to_string()))?;
    let summary = verify_embedding(&e)?;
    Ok(Success {
        result: json!({ "verification": summary }),
        artifacts: Vec::new(),
    })
}

fn lowerbound_failure(e: LowerBoundError) -> Failure {
    match e {
        LowerBoundError::SizeGuard { .. } => Failure::SizeGuard(e.to_string()),
        LowerBoundError::InvalidParameter(_) => Failure::Input(e.to_string()),
        LowerBoundError::Precondition(_) => Failure::Violation(e.to_string()),
        LowerBoundError::Internal(_) => Failure::Internal(e.to_string()),
    }
}

fn build_counterexample(c: usize, allow_large: bool) -> Result<Counterexample, Failure> {
    if c == 0 {
        return Err(Failure::Input("c must be at least 1".into()));
    }
    let config = if allow_large {
        GadgetConfig { max_c: usize::MAX }
    } else {
        GadgetConfig::default()
    };
    counterexample_graph(c, &config).map_err(lowerbound_failure)
}

#[derive(Debug, Clone, Serialize)]
struct FanSidecar {
    kind: &'static str,
    n: usize,
    centres: Vec<usize>,
}

pub enum GadgetRequest<'a> {
    Fan(usize),
    DoubleFan(usize),
    Distension { input: &'a Path, t: usize },
    Counterexample { c: usize, allow_large: bool },
}

pub fn gadget(
    request: GadgetRequest<'_>,
    out: &Option<PathBuf>,
    sidecar: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let (g, provenance, extra) = match request {
        GadgetRequest::Fan(n) => {
            let (g, centre) = fan(n).map_err(lowerbound_failure)?;
            let side = FanSidecar { kind: "fan", n, centres: vec![centre] };
            (g, serde_json::to_value(side), json!({}))
        }
        GadgetRequest::DoubleFan(n) => {
            let (g, (a, b)) = double_fan(n).map_err(lowerbound_failure)?;
            let side = FanSidecar { kind: "double-fan", n, centres: vec![a, b] };
            (g, serde_json::to_value(side), json!({}))
        }
        GadgetRequest::Distension { input, t } => {
            let base = read_graph(input, digest)?;
            let d = distension(&base, t).map_err(lowerbound_failure)?;
            let side = serde_json::to_value(DistensionJson::from(&d));
            (d.graph, side, json!({ "t": t }))
        }
        GadgetRequest::Counterexample { c, allow_large } => {
            let cx = build_counterexample(c, allow_large)?;
            let side = serde_json::to_value(CounterexampleJson::from(&cx));
            let extra = json!({
                "c": c,
                "t": cx.t,
                "fan_order": cx.fan.vertex_count(),
                "j_order": cx.j.graph.vertex_count(),
            });
            (cx.g.graph, side, extra)
        }
    };
    let provenance = provenance.map_err(|e| Failure::Internal(e.to_string()))?;
    let mut artifacts: Vec<Artifact> = edge_list_artifact(out, &g).into_iter().collect();
    artifacts.extend(json_artifact(sidecar, &provenance));
    Ok(Success {
        result: json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "planar": is_planar(&g),
            "parameters": extra,
        }),
        artifacts,
    })
}

#[derive(Debug, Serialize)]
struct WidthArtifact {
    treewidth: usize,
    tree_decomposition: TreeDecompositionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pathwidth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path_decomposition: Option<PathDecompositionJson>,
}

fn width_failure(e: DecompositionError) -> Failure {
    match e {
        DecompositionError::CapExceeded { .. } => Failure::SizeGuard(e.to_string()),
        other => Failure::Internal(other.to_string()),
    }
}

pub fn tw(
    input: &Path,
    with_path: bool,
    cap: usize,
    out: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let g = read_graph(input, digest)?;
    let config = ExactConfig { vertex_cap: cap };
    let t = exact_treewidth(&g, &config).map_err(width_failure)?;
    let p = if with_path {
        Some(exact_pathwidth(&g, &config).map_err(width_failure)?)
    } else {
        None
    };
    let artifact = WidthArtifact {
        treewidth: t.width,
        tree_decomposition: (&t.decomposition).into(),
        pathwidth: p.as_ref().map(|p| p.width),
        path_decomposition: p.as_ref().map(|p| (&p.decomposition).into()),
    };
    Ok(Success {
        result: json!({
            "vertices": g.vertex_count(),
            "treewidth": t.width,
            "elimination_order": t.order,
            "pathwidth": p.as_ref().map(|p| p.width),
        }),
        artifacts: json_artifact(out, &artifact).into_iter().collect(),
    })
}

#[derive(Debug, Serialize)]
struct PartitionArtifact {
    partition: PartitionJson,
    matching: MatchingJson,
    quotient: EdgeListJson,
    forests: PartitionJson,
}

pub fn partition(
    input: &Path,
    out: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let g = read_graph(input, digest)?;
    let pm = planar_contractible_matching(&g).map_err(|e| match e {
        PartitionError::NotPlanar => Failure::NotApex(e.to_string()),
        other => Failure::Internal(other.to_string()),
    })?;
    let artifact = PartitionArtifact {
        partition: (&pm.split).into(),
        matching: (&pm.matching).into(),
        quotient: (&pm.quotient).into(),
        forests: (&pm.forests).into(),
    };
    Ok(Success {
        result: json!({
            "vertices": g.vertex_count(),
            "part_sizes": pm.split.parts().iter().map(Vec::len).collect::<Vec<_>>(),
            "matching_size": pm.matching.len(),
            "quotient_order": pm.quotient.vertex_count(),
        }),
        artifacts: json_artifact(out, &artifact).into_iter().collect(),
    })
}

/// Where a partition of the counterexample graph comes from.
pub enum PartitionSource<'a> {
    File(&'a Path),
    Layered,
    Singletons,
}

fn load_partition(
    source: PartitionSource<'_>,
    cx: &Counterexample,
    digest: &mut InputDigest,
) -> Result<VertexPartition, Failure> {
    let n = cx.g.graph.vertex_count();
    match source {
        PartitionSource::File(path) => {
            let json: PartitionJson = read_json(path, digest)?;
            json.to_partition(n)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        PartitionSource::Layered => Ok(layered_tree_partition(&cx.g.graph, cx.centre)),
        PartitionSource::Singletons => Ok(VertexPartition::singletons(n)),
    }
}

pub fn rainbow(
    c: usize,
    p: PartitionSource<'_>,
    q: PartitionSource<'_>,
    allow_large: bool,
    out: &Option<PathBuf>,
    digest: &mut InputDigest,
) -> Result<Success, Failure> {
    let cx = build_counterexample(c, allow_large)?;
    let p = load_partition(p, &cx, digest)?;
    let q = load_partition(q, &cx, digest)?;
    let (k, stage) = find_rainbow_k4_with_stage(&cx, &p, &q, c).map_err(lowerbound_failure)?;
    if !is_rainbow_k4(&cx.g.graph, &q, &k) {
        return Err(Failure::Internal(format!(
            "finder returned {:?}, which is not a rainbow 4-clique",
            k.vertices
        )));
    }
    let json = RainbowJson::from(&k);
    Ok(Success {
        result: json!({
            "clique": json.clique,
            "q_parts": json.q_parts,
            "stage": format!("{stage:?}"),
            "vertices": cx.g.graph.vertex_count(),
        }),
        artifacts: json_artifact(out, &json).into_iter().collect(),
    })
}
