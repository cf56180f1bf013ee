//! Embeddings into `H1 ⊠ H2 ⊠ K_c`: the verifier, the cone/join embedding,
//! the 2-apex and k-apex pipelines, and the conversion between embeddings
//! and pairs of partitions.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::graph::{
    complete_graph, cone, is_planar, quotient_by_matching, quotient_by_partition, Graph,
    GraphError, Matching, VertexMap,
};
use crate::partition::{planar_contractible_matching, PartitionError, VertexPartition};

/// A point of `H1 ⊠ H2 ⊠ K_c`. `layer` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: usize,
    pub y: usize,
    pub layer: usize,
}

impl Coord {
    pub fn new(x: usize, y: usize, layer: usize) -> Self {
        Coord { x, y, layer }
    }
}

/// The first reason a map fails to embed its source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingViolation {
    #[error("c must be at least 1")]
    ZeroC,
    #[error("map has {got} entries for {expected} vertices")]
    MapLength { expected: usize, got: usize },
    #[error("vertex {vertex} maps to {coord:?}, outside the product")]
    OutOfRange { vertex: usize, coord: Coord },
    #[error("vertices {0} and {1} both map to {2:?}")]
    NotInjective(usize, usize, Coord),
    #[error("edge {0}-{1} maps to non-adjacent points")]
    EdgeNotPreserved(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid embedding: {0}")]
    Invalid(#[from] EmbeddingViolation),
    #[error("partition error: {0}")]
    Partition(#[from] PartitionError),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("expected a partition into at most two parts, got {0}")]
    NotTwoParts(usize),
    #[error("graph is not {k}-apex ({tested} candidate apex sets tested)")]
    NotKApex { k: usize, tested: usize },
    #[error("quotient by partition {side} is not contained in host {side} via the given map")]
    QuotientNotContained { side: usize },
    #[error("parts {p1} and {p2} share {size} vertices, more than c = {c}")]
    IntersectionTooLarge {
        p1: usize,
        p2: usize,
        size: usize,
        c: usize,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

/// An injective map `V(source) -> V(host1) × V(host2) × {1..c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEmbedding {
    pub source: Graph,
    pub host1: Graph,
    pub host2: Graph,
    pub c: usize,
    pub map: Vec<Coord>,
    /// Pairs not adjacent in `source` that the construction treated as
    /// edges; the map embeds `source` plus these.
    pub augmented_edges: Vec<(usize, usize)>,
}

impl ProductEmbedding {
    /// Direct evaluation of the product adjacency rule; the product itself is
    /// never built.
    pub fn validate(&self) -> Result<(), EmbeddingViolation> {
        if self.c == 0 {
            return Err(EmbeddingViolation::ZeroC);
        }
        let n = self.source.vertex_count();
        if self.map.len() != n {
            return Err(EmbeddingViolation::MapLength {
                expected: n,
                got: self.map.len(),
            });
        }
        for (v, &coord) in self.map.iter().enumerate() {
            if coord.x >= self.host1.vertex_count()
                || coord.y >= self.host2.vertex_count()
                || coord.layer == 0
                || coord.layer > self.c
            {
                return Err(EmbeddingViolation::OutOfRange { vertex: v, coord });
            }
        }
        let mut first: HashMap<Coord, usize> = HashMap::with_capacity(n);
        for (v, &coord) in self.map.iter().enumerate() {
            if let Some(&u) = first.get(&coord) {
                return Err(EmbeddingViolation::NotInjective(u, v, coord));
            }
            first.insert(coord, v);
        }
        for (u, v) in self.source.edges() {
            if !self.adjacent(self.map[u], self.map[v]) {
                return Err(EmbeddingViolation::EdgeNotPreserved(u, v));
            }
        }
        Ok(())
    }

    /// Strong-product adjacency of two distinct points.
    pub fn adjacent(&self, a: Coord, b: Coord) -> bool {
        let close = |h: &Graph, s: usize, t: usize| s == t || h.has_edge(s, t);
        a != b && close(&self.host1, a.x, b.x) && close(&self.host2, a.y, b.y)
    }
}

/// Embeds `g⁺` into `g[V1]⁺ ⊠ g[V2]⁺ ⊠ K_1`: the new vertex goes to
/// `(r1, r2)`, `v ∈ V1` to `(v, r2)` and `w ∈ V2` to `(r1, w)`.
///
/// A one-part partition is read as `{V1, ∅}`. The source of the result is
/// `cone(g)`, whose dominant vertex is the last index.
pub fn join_embed(g: &Graph, p: &VertexPartition) -> Result<ProductEmbedding, EmbeddingError> {
    if p.vertex_count() != g.vertex_count() {
        return Err(GraphError::PartitionSize {
            expected: g.vertex_count(),
            got: p.vertex_count(),
        }
        .into());
    }
    if p.len() > 2 {
        return Err(EmbeddingError::NotTwoParts(p.len()));
    }
    let side = |i: usize| p.parts().get(i).cloned().unwrap_or_default();
    let (v1, v2) = (side(0), side(1));
    let (g1, _) = g.induced_subgraph(&v1);
    let (g2, _) = g.induced_subgraph(&v2);
    let (host1, r1) = cone(&g1);
    let (host2, r2) = cone(&g2);
    let (source, r) = cone(g);
    let mut map = vec![Coord::new(r1, r2, 1); r + 1];
    for (i, &v) in v1.iter().enumerate() {
        map[v] = Coord::new(i, r2, 1);
    }
    for (i, &w) in v2.iter().enumerate() {
        map[w] = Coord::new(r1, i, 1);
    }
    Ok(ProductEmbedding {
        source,
        host1,
        host2,
        c: 1,
        map,
        augmented_edges: Vec::new(),
    })
}

/// Embeds `g` into `(g / m) ⊠ K_2 ⊠ K_1`. The lower end of each matched pair
/// and every unmatched vertex use the first copy of `K_2`.
pub fn expand_matching_embedding(
    g: &Graph,
    m: &Matching,
) -> Result<ProductEmbedding, EmbeddingError> {
    let (quotient, class) = quotient_by_matching(g, m)?;
    let partner = m.partners(g.vertex_count());
    let map = (0..g.vertex_count())
        .map(|v| {
            let copy = usize::from(partner[v].is_some_and(|p| p < v));
            Coord::new(class.get(v), copy, 1)
        })
        .collect();
    Ok(ProductEmbedding {
        source: g.clone(),
        host1: quotient,
        host2: complete_graph(2)?,
        c: 1,
        map,
        augmented_edges: Vec::new(),
    })
}

/// The first `A` with `|A| <= k` and `g - A` planar: by size, then
/// lexicographically. Also returns how many sets were tested.
pub fn find_apex_set(g: &Graph, k: usize) -> (Option<Vec<usize>>, usize) {
    let n = g.vertex_count();
    let mut tested = 0;
    for size in 0..=k.min(n) {
        let mut set: Vec<usize> = (0..size).collect();
        loop {
            tested += 1;
            if is_planar(&g.remove_vertices(&set).0) {
                return (Some(set), tested);
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| set[i] < n - size + i) else {
                break;
            };
            set[i] += 1;
            for j in i + 1..size {
                set[j] = set[j - 1] + 1;
            }
        }
    }
    (None, tested)
}

/// `g ⊑ H1 ⊠ H2 ⊠ K_2` with apex-forest hosts, for 2-apex `g`.
pub fn apex_product_structure(g: &Graph) -> Result<ProductEmbedding, EmbeddingError> {
    k_apex_product_structure(g, 2)
}

/// `g ⊑ H1 ⊠ H2 ⊠ K_max(k,2)` with apex-forest hosts, for k-apex `g`.
///
/// The apex set (padded to two vertices when smaller) is sent to the pair
/// of cone vertices, one layer each; the rest goes through the planar
/// matching and the join embedding of the contracted graph.
pub fn k_apex_product_structure(g: &Graph, k: usize) -> Result<ProductEmbedding, EmbeddingError> {
    let c = k.max(2);
    let n = g.vertex_count();
    if n <= 2 {
        let k1 = complete_graph(1)?;
        let map = (0..n).map(|v| Coord::new(0, 0, v + 1)).collect();
        let e = ProductEmbedding {
            source: g.clone(),
            host1: k1.clone(),
            host2: k1,
            c,
            map,
            augmented_edges: Vec::new(),
        };
        return finish(e);
    }
    let (apex, tested) = find_apex_set(g, k);
    let apex = apex.ok_or(EmbeddingError::NotKApex { k, tested })?;
    embed_with_apex_set(g, &pad_apex_set(g, apex), c)
}

/// Grows the apex set to at least two vertices:
/// with no apex, the first edge (or the pair `0, 1` if there is none); with
/// one apex, its lowest neighbour (or the lowest other vertex).
fn pad_apex_set(g: &Graph, mut apex: Vec<usize>) -> Vec<usize> {
    match apex.len() {
        0 => {
            let (a, b) = g.edges().next().unwrap_or((0, 1));
            vec![a, b]
        }
        1 => {
            let a = apex[0];
            let b = g
                .neighbors(a)
                .first()
                .copied()
                .unwrap_or_else(|| (0..g.vertex_count()).find(|&v| v != a).expect("n >= 2"));
            apex.push(b);
            apex.sort_unstable();
            apex
        }
        _ => apex,
    }
}

/// The pipeline for a given apex set `A` (`2 <= |A| <= c`, `g - A` planar).
pub fn embed_with_apex_set(
    g: &Graph,
    apex: &[usize],
    c: usize,
) -> Result<ProductEmbedding, EmbeddingError> {
    if apex.len() < 2 || apex.len() > c {
        return Err(EmbeddingError::Internal(format!(
            "apex set of size {} does not fit c = {c}",
            apex.len()
        )));
    }
    let (rest, back) = g.remove_vertices(apex);
    let pm = planar_contractible_matching(&rest)?;
    let join = join_embed(&pm.quotient, &pm.forests)?;
    let cone_point = join.map[pm.quotient.vertex_count()];
    let partner = pm.matching.partners(rest.vertex_count());

    let mut map = vec![cone_point; g.vertex_count()];
    for (i, &a) in apex.iter().enumerate() {
        map[a] = Coord::new(cone_point.x, cone_point.y, i + 1);
    }
    for (local, &v) in back.iter().enumerate() {
        let point = join.map[pm.class_map.get(local)];
        let layer = 1 + usize::from(partner[local].is_some_and(|p| p < local));
        map[v] = Coord::new(point.x, point.y, layer);
    }
    let augmented_edges = apex
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| apex[i + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect();
    finish(ProductEmbedding {
        source: g.clone(),
        host1: join.host1,
        host2: join.host2,
        c,
        map,
        augmented_edges,
    })
}

fn finish(e: ProductEmbedding) -> Result<ProductEmbedding, EmbeddingError> {
    e.validate()
        .map_err(|v| EmbeddingError::Internal(format!("constructed embedding fails: {v}")))?;
    Ok(e)
}

/// Coordinate fibres of an embedding, with maps from parts to host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrePartitions {
    pub p1: VertexPartition,
    pub p2: VertexPartition,
    pub m1: VertexMap,
    pub m2: VertexMap,
}

/// `A_x = φ⁻¹({x} × V(H2) × V(K_c))` and `B_y` likewise, parts in ascending
/// host-vertex order. Checks `G/P_i ⊑ H_i` and `|A_x ∩ B_y| <= c`.
pub fn embedding_to_partitions(e: &ProductEmbedding) -> Result<FibrePartitions, EmbeddingError> {
    e.validate()?;
    let fibres = |coord: fn(&Coord) -> usize, order: usize| {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, point) in e.map.iter().enumerate() {
            by.entry(coord(point)).or_default().push(v);
        }
        let hosts: Vec<usize> = by.keys().copied().collect();
        let parts: Vec<Vec<usize>> = by.into_values().collect();
        (parts, VertexMap::new(hosts, order).expect("coordinates validated"))
    };
    let n = e.source.vertex_count();
    let (parts1, m1) = fibres(|p| p.x, e.host1.vertex_count());
    let (parts2, m2) = fibres(|p| p.y, e.host2.vertex_count());
    let p1 = VertexPartition::new(n, parts1)?;
    let p2 = VertexPartition::new(n, parts2)?;
    check_partition_pair(&e.source, &p1, &p2, e.c, &e.host1, &e.host2, &m1, &m2)?;
    Ok(FibrePartitions { p1, p2, m1, m2 })
}

#[allow(clippy::too_many_arguments)]
fn check_partition_pair(
    g: &Graph,
    p1: &VertexPartition,
    p2: &VertexPartition,
    c: usize,
    h1: &Graph,
    h2: &Graph,
    m1: &VertexMap,
    m2: &VertexMap,
) -> Result<(), EmbeddingError> {
    for (side, p, h, m) in [(1, p1, h1, m1), (2, p2, h2, m2)] {
        let (q, _) = quotient_by_partition(g, p)?;
        if !m.is_subgraph_embedding(&q, h) {
            return Err(EmbeddingError::QuotientNotContained { side });
        }
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        *counts.entry((p1.part_of(v), p2.part_of(v))).or_default() += 1;
    }
    if let Some(((a, b), size)) = counts.into_iter().find(|&(_, size)| size > c) {
        return Err(EmbeddingError::IntersectionTooLarge {
            p1: a,
            p2: b,
            size,
            c,
        });
    }
    Ok(())
}

/// Maps the `i`-th vertex (ascending) of `A1 ∩ A2` to
/// `(m1(A1), m2(A2), i)`.
#[allow(clippy::too_many_arguments)]
pub fn partitions_to_embedding(
    g: &Graph,
    p1: &VertexPartition,
    p2: &VertexPartition,
    c: usize,
    h1: &Graph,
    h2: &Graph,
    m1: &VertexMap,
    m2: &VertexMap,
) -> Result<ProductEmbedding, EmbeddingError> {
    if c == 0 {
        return Err(EmbeddingViolation::ZeroC.into());
    }
    check_partition_pair(g, p1, p2, c, h1, h2, m1, m2)?;
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let map = (0..g.vertex_count())
        .map(|v| {
            let (a, b) = (p1.part_of(v), p2.part_of(v));
            let i = seen.entry((a, b)).or_default();
            *i += 1;
            Coord::new(m1.get(a), m2.get(b), *i)
        })
        .collect();
    finish(ProductEmbedding {
        source: g.clone(),
        host1: h1.clone(),
        host2: h2.clone(),
        c,
        map,
        augmented_edges: Vec::new(),
    })
}
