//! JSON interchange formats for graphs, decompositions, partitions,
//! matchings, embeddings and rainbow cliques.
//!
//! Every `*Json` type converts from the library value and back, validating on
//! the way in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{PathDecomposition, TreeDecomposition};
use crate::embedding::{Coord, ProductEmbedding};
use crate::graph::{Graph, GraphError, Matching};
use crate::lowerbound::{Counterexample, DistensionGraph, RainbowK4};
use crate::partition::{PartitionError, VertexPartition};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Partition(#[from] PartitionError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl EdgeListJson {
    pub fn to_graph(&self) -> Result<Graph, FormatError> {
        Ok(Graph::from_edges(
            self.n,
            self.edges.iter().map(|&[u, v]| (u, v)),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecompositionJson {
    pub tree: EdgeListJson,
    pub bags: BTreeMap<usize, Vec<usize>>,
}

impl From<&TreeDecomposition> for TreeDecompositionJson {
    fn from(d: &TreeDecomposition) -> Self {
        TreeDecompositionJson {
            tree: d.tree().into(),
            bags: d.bags().iter().cloned().enumerate().collect(),
        }
    }
}

impl TreeDecompositionJson {
    /// Bags must be keyed exactly by the tree's nodes.
    pub fn to_decomposition(&self) -> Result<TreeDecomposition, FormatError> {
        let tree = self.tree.to_graph()?;
        if !self.bags.keys().copied().eq(0..self.bags.len()) {
            return Err(FormatError::Invalid(
                "bag keys must be the tree nodes 0..n".into(),
            ));
        }
        Ok(TreeDecomposition::new(tree, self.bags.values().cloned().collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecompositionJson {
    pub bags: Vec<Vec<usize>>,
}

impl From<&PathDecomposition> for PathDecompositionJson {
    fn from(d: &PathDecomposition) -> Self {
        PathDecompositionJson {
            bags: d.bags().to_vec(),
        }
    }
}

impl PathDecompositionJson {
    pub fn to_decomposition(&self) -> PathDecomposition {
        PathDecomposition::new(self.bags.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub parts: Vec<Vec<usize>>,
}

impl From<&VertexPartition> for PartitionJson {
    fn from(p: &VertexPartition) -> Self {
        PartitionJson {
            parts: p.parts().to_vec(),
        }
    }
}

impl PartitionJson {
    pub fn to_partition(&self, n: usize) -> Result<VertexPartition, FormatError> {
        Ok(VertexPartition::new(n, self.parts.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    pub edges: Vec<[usize; 2]>,
}

impl From<&Matching> for MatchingJson {
    fn from(m: &Matching) -> Self {
        MatchingJson {
            edges: m.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl MatchingJson {
    pub fn to_matching(&self, host: &Graph) -> Result<Matching, FormatError> {
        Ok(Matching::new(
            host,
            self.edges.iter().map(|&[u, v]| (u, v)).collect(),
        )?)
    }
}

/// `map` sends each source vertex to `[x, y, layer]`, layer 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub hosts: [EdgeListJson; 2],
    pub c: usize,
    pub map: BTreeMap<usize, [usize; 3]>,
    pub augmented_edges: Vec<[usize; 2]>,
}

impl From<&ProductEmbedding> for EmbeddingJson {
    fn from(e: &ProductEmbedding) -> Self {
        EmbeddingJson {
            hosts: [(&e.host1).into(), (&e.host2).into()],
            c: e.c,
            map: e
                .map
                .iter()
                .enumerate()
                .map(|(v, p)| (v, [p.x, p.y, p.layer]))
                .collect(),
            augmented_edges: e.augmented_edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl EmbeddingJson {
    /// Rebuilds the embedding of `source`. The map must list exactly the
    /// source's vertices; validity is left to
    /// [`ProductEmbedding::validate`].
    pub fn to_embedding(&self, source: &Graph) -> Result<ProductEmbedding, FormatError> {
        let n = source.vertex_count();
        if !self.map.keys().copied().eq(0..n) {
            return Err(FormatError::Invalid(format!(
                "map must have exactly the keys 0..{n}"
            )));
        }
        Ok(ProductEmbedding {
            source: source.clone(),
            host1: self.hosts[0].to_graph()?,
            host2: self.hosts[1].to_graph()?,
            c: self.c,
            map: self
                .map
                .values()
                .map(|&[x, y, layer]| Coord::new(x, y, layer))
                .collect(),
            augmented_edges: self.augmented_edges.iter().map(|&[a, b]| (a, b)).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowJson {
    pub clique: [usize; 4],
    pub q_parts: [usize; 4],
}

impl From<&RainbowK4> for RainbowJson {
    fn from(k: &RainbowK4) -> Self {
        RainbowJson {
            clique: k.vertices,
            q_parts: k.q_parts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePathJson {
    pub edge: [usize; 2],
    pub path: Vec<usize>,
}

/// Provenance of a distension: its base, `t`, and every added path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistensionJson {
    pub base: EdgeListJson,
    pub t: usize,
    pub edge_paths: Vec<EdgePathJson>,
}

impl From<&DistensionGraph> for DistensionJson {
    fn from(d: &DistensionGraph) -> Self {
        DistensionJson {
            base: (&d.base).into(),
            t: d.t,
            edge_paths: d
                .edge_paths
                .iter()
                .map(|(&(v, w), path)| EdgePathJson {
                    edge: [v, w],
                    path: path.clone(),
                })
                .collect(),
        }
    }
}

/// Provenance of the counterexample graph: layer sizes and the paths added
/// at each distension step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub c: usize,
    pub t: usize,
    pub fan_centre: usize,
    pub fan_order: usize,
    pub j_order: usize,
    pub g_order: usize,
    pub j_edge_paths: Vec<EdgePathJson>,
    pub g_edge_paths: Vec<EdgePathJson>,
}

impl From<&Counterexample> for CounterexampleJson {
    fn from(cx: &Counterexample) -> Self {
        CounterexampleJson {
            c: cx.c,
            t: cx.t,
            fan_centre: cx.centre,
            fan_order: cx.fan.vertex_count(),
            j_order: cx.j.graph.vertex_count(),
            g_order: cx.g.graph.vertex_count(),
            j_edge_paths: DistensionJson::from(&cx.j).edge_paths,
            g_edge_paths: DistensionJson::from(&cx.g).edge_paths,
        }
    }
}
