//! Immutable simple graphs and the structural operations the rest of the
//! crate is built from: products, cones, quotients, components and blocks.
//!
//! Vertices are dense indices `0..n`. Every operation returns a new value;
//! identifications return a [`VertexMap`] so callers can trace where each
//! original vertex went.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::partition::VertexPartition;

pub mod canon;
pub mod catalogue;
mod edgelist;
pub mod planarity;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use edgelist::{format_edge_list, parse_edge_list, ParseError};
pub use planarity::is_planar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
    #[error("complete graph needs at least one vertex")]
    EmptyComplete,
    #[error("pair {0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered twice by the matching")]
    MatchingConflict(usize),
    #[error("partition covers {got} vertices, graph has {expected}")]
    PartitionSize { expected: usize, got: usize },
}

/// A finite simple undirected graph.
///
/// Equality compares structure only (vertex count and edge set); labels are
/// provenance and are ignored.
#[derive(Clone, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated
    /// edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edge_count: seen.len(),
            labels: None,
        })
    }

    /// Builds a simple graph from arbitrary pairs: loops are dropped and
    /// parallel pairs merged. Endpoints must be in range.
    pub(crate) fn simplified<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = pairs
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            adj,
            edge_count: set.len(),
            labels: None,
        }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    /// Path on `n` vertices, `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::simplified(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices; smaller `n` gives the path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Self::path(n);
        }
        Self::simplified(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::simplified(
            a + b,
            (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))),
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.vertex_count(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && v < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Returns a copy with the extra edges added (existing ones are ignored).
    pub fn with_edges<I>(&self, extra: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::simplified(self.vertex_count(), self.edges().chain(extra))
    }

    /// The subgraph induced by `vertices`, relabelled `0..k` in the order
    /// given. The returned vector maps each new index back to the old one.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut pairs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    pairs.push((i, j));
                }
            }
        }
        let mut sub = Self::simplified(vertices.len(), pairs);
        if let Some(labels) = &self.labels {
            sub.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        (sub, vertices.to_vec())
    }

    /// `self - removed`, keeping the survivors in ascending order.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.vertex_count()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.vertex_count() <= 64, "bitmask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

/// A set of pairwise disjoint edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Checks that every pair is an edge of `host` and no vertex repeats.
    pub fn new(host: &Graph, pairs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut used = vec![false; host.vertex_count()];
        let mut edges = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            if !host.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            for x in [u, v] {
                if used[x] {
                    return Err(GraphError::MatchingConflict(x));
                }
                used[x] = true;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `partner[v]` for every vertex of a graph on `n` vertices.
    pub fn partners(&self, n: usize) -> Vec<Option<usize>> {
        let mut partner = vec![None; n];
        for &(u, v) in &self.edges {
            partner[u] = Some(v);
            partner[v] = Some(u);
        }
        partner
    }

    /// Union of matchings on disjoint vertex sets.
    pub(crate) fn union_unchecked(parts: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = parts.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Matching { edges }
    }
}

/// A total map from the vertices of one graph to the vertices of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    assignment: Vec<usize>,
    image_order: usize,
}

impl VertexMap {
    pub fn new(assignment: Vec<usize>, image_order: usize) -> Option<Self> {
        if assignment.iter().all(|&x| x < image_order) {
            Some(VertexMap {
                assignment,
                image_order,
            })
        } else {
            None
        }
    }

    pub fn get(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.assignment
    }

    pub fn domain_len(&self) -> usize {
        self.assignment.len()
    }

    pub fn image_order(&self) -> usize {
        self.image_order
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image_order];
        self.assignment.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// True if the map is injective and sends every edge of `from` onto an
    /// edge of `to`, i.e. it witnesses `from` being contained in `to`.
    pub fn is_subgraph_embedding(&self, from: &Graph, to: &Graph) -> bool {
        self.assignment.len() == from.vertex_count()
            && self.image_order == to.vertex_count()
            && self.is_injective()
            && from
                .edges()
                .all(|(u, v)| to.has_edge(self.assignment[u], self.assignment[v]))
    }
}

/// `K_c`.
pub fn complete_graph(c: usize) -> Result<Graph, GraphError> {
    if c == 0 {
        return Err(GraphError::EmptyComplete);
    }
    Ok(Graph::simplified(
        c,
        (0..c).flat_map(|i| (i + 1..c).map(move |j| (i, j))),
    ))
}

/// The strong product `a ⊠ b`. Vertex `(v, x)` gets index `v * |b| + x` and
/// the label `"(v,x)"`.
pub fn strong_product(a: &Graph, b: &Graph) -> Graph {
    let nb = b.vertex_count();
    let n = a.vertex_count() * nb;
    let idx = |v: usize, x: usize| v * nb + x;
    let mut pairs = Vec::new();
    for v in 0..a.vertex_count() {
        for (x, y) in b.edges() {
            pairs.push((idx(v, x), idx(v, y)));
        }
    }
    for (v, w) in a.edges() {
        for x in 0..nb {
            pairs.push((idx(v, x), idx(w, x)));
        }
        for (x, y) in b.edges() {
            pairs.push((idx(v, x), idx(w, y)));
            pairs.push((idx(v, y), idx(w, x)));
        }
    }
    let labels = (0..n).map(|i| format!("({},{})", i / nb.max(1), i % nb.max(1))).collect();
    let mut g = Graph::simplified(n, pairs);
    g.labels = Some(labels);
    g
}

/// `g⁺`: `g` plus one new vertex adjacent to everything. The new vertex is
/// the last index.
pub fn cone(g: &Graph) -> (Graph, usize) {
    let r = g.vertex_count();
    let cone = Graph::simplified(r + 1, g.edges().chain((0..r).map(|v| (v, r))));
    (cone, r)
}

/// Identifies the two ends of every matching edge. Class indices follow the
/// order of each class's smallest vertex.
pub fn quotient_by_matching(g: &Graph, m: &Matching) -> Result<(Graph, VertexMap), GraphError> {
    // re-check against this host; a Matching may have been built elsewhere
    let m = Matching::new(g, m.edges().to_vec())?;
    let partner = m.partners(g.vertex_count());
    let mut class = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        if class[v] == usize::MAX {
            class[v] = next;
            if let Some(p) = partner[v] {
                class[p] = next;
            }
            next += 1;
        }
    }
    let q = Graph::simplified(next, g.edges().map(|(u, v)| (class[u], class[v])));
    Ok((q, VertexMap::new(class, next).expect("classes in range")))
}

/// `g / p`: one vertex per part (in the partition's part order), adjacent
/// when some edge crosses between the parts.
pub fn quotient_by_partition(
    g: &Graph,
    p: &VertexPartition,
) -> Result<(Graph, VertexMap), GraphError> {
    if p.vertex_count() != g.vertex_count() {
        return Err(GraphError::PartitionSize {
            expected: g.vertex_count(),
            got: p.vertex_count(),
        });
    }
    let class: Vec<usize> = (0..g.vertex_count()).map(|v| p.part_of(v)).collect();
    let q = Graph::simplified(p.len(), g.edges().map(|(u, v)| (class[u], class[v])));
    Ok((q, VertexMap::new(class, p.len()).expect("parts in range")))
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + connected_components(g).len() == g.vertex_count()
}

pub fn is_tree(g: &Graph) -> bool {
    g.vertex_count() > 0 && g.edge_count() + 1 == g.vertex_count() && is_forest(g)
}

/// Biconnected components (as sorted vertex sets) and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    /// Every block, isolated vertices included as one-vertex blocks. Sorted
    /// by smallest vertex, then lexicographically.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted ascending.
    pub cut_vertices: Vec<usize>,
}

impl BlockStructure {
    /// Blocks that contain at most one cut vertex.
    pub fn leaf_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(move |b| {
            b.iter()
                .filter(|v| self.cut_vertices.binary_search(v).is_ok())
                .count()
                <= 1
        })
    }
}

/// Hopcroft–Tarjan with an explicit stack, so deep graphs do not overflow.
pub fn blocks(g: &Graph) -> BlockStructure {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut time = 0;
    let mut vstack: Vec<usize> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            blocks.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        vstack.push(root);
        stack.push((root, UNSEEN, 0));
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < g.degree(v) {
                let w = g.neighbors(v)[*next];
                *next += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    vstack.push(w);
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent == root {
                    root_children += 1;
                } else {
                    is_cut[parent] = true;
                }
                let mut block = vec![parent];
                while let Some(x) = vstack.pop() {
                    block.push(x);
                    if x == v {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
        vstack.clear();
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    BlockStructure {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    }
}
