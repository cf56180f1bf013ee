//! Tree and path decompositions: validation, width, exact small-graph
//! treewidth and pathwidth, the apex-forest and triangle-forest recognisers,
//! and decompositions of distensions built from decompositions of the base.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{blocks, connected_components, is_forest, is_tree, Graph};

mod distension;
mod exact;

pub use distension::{distension_path_decomposition, distension_tree_decomposition};
pub use exact::{exact_pathwidth, exact_treewidth, ExactConfig, ExactWidth};

/// The first decomposition axiom that fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("index tree has no nodes")]
    EmptyIndex,
    #[error("index graph is not a tree")]
    IndexNotTree,
    #[error("{bags} bags for {nodes} index nodes")]
    BagCount { nodes: usize, bags: usize },
    #[error("bag {node} contains vertex {vertex}, which is not in the graph")]
    VertexOutOfRange { node: usize, vertex: usize },
    #[error("edge {0}-{1} is not contained in any bag")]
    EdgeUncovered(usize, usize),
    #[error("vertex {0} is in no bag")]
    VertexMissing(usize),
    #[error("bags containing vertex {0} are not connected in the index")]
    DisconnectedTrace(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] Violation),
    #[error("graph has {n} vertices, above the exact-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("not a distension of the given graph: {0}")]
    NotADistension(String),
}

fn normalise(mut bag: Vec<usize>) -> Vec<usize> {
    bag.sort_unstable();
    bag.dedup();
    bag
}

/// Bags indexed by the nodes of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    tree: Graph,
    bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Stores the data as given (bags sorted); use [`Self::validate`] to check
    /// it against a graph.
    pub fn new(tree: Graph, bags: Vec<Vec<usize>>) -> Self {
        TreeDecomposition {
            tree,
            bags: bags.into_iter().map(normalise).collect(),
        }
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Largest bag size minus one (zero when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// Width, after checking that this is a decomposition of `g`.
    pub fn checked_width(&self, g: &Graph) -> Result<usize, Violation> {
        self.validate(g)?;
        Ok(self.width())
    }

    /// Checks the index is a tree, then (in this order) bag contents, edge
    /// coverage and connectivity of every vertex's trace.
    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        let k = self.tree.vertex_count();
        if k == 0 {
            return Err(Violation::EmptyIndex);
        }
        if !is_tree(&self.tree) {
            return Err(Violation::IndexNotTree);
        }
        if self.bags.len() != k {
            return Err(Violation::BagCount {
                nodes: k,
                bags: self.bags.len(),
            });
        }
        let traces = traces(g, &self.bags)?;
        check_coverage(g, &traces)?;
        for (v, trace) in traces.iter().enumerate() {
            if trace.is_empty() {
                return Err(Violation::VertexMissing(v));
            }
            if !trace_connected(&self.tree, trace) {
                return Err(Violation::DisconnectedTrace(v));
            }
        }
        Ok(())
    }
}

/// Bags indexed by a path, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition {
            bags: bags.into_iter().map(normalise).collect(),
        }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn checked_width(&self, g: &Graph) -> Result<usize, Violation> {
        self.validate(g)?;
        Ok(self.width())
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Violation> {
        if self.bags.is_empty() {
            return Err(Violation::EmptyIndex);
        }
        let traces = traces(g, &self.bags)?;
        check_coverage(g, &traces)?;
        for (v, trace) in traces.iter().enumerate() {
            match (trace.first(), trace.last()) {
                (Some(&a), Some(&b)) if b - a + 1 == trace.len() => {}
                (None, _) => return Err(Violation::VertexMissing(v)),
                _ => return Err(Violation::DisconnectedTrace(v)),
            }
        }
        Ok(())
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition::new(Graph::path(self.bags.len()), self.bags.clone())
    }
}

/// For each vertex, the sorted list of nodes whose bag contains it.
fn traces(g: &Graph, bags: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Violation> {
    let mut traces = vec![Vec::new(); g.vertex_count()];
    for (node, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= g.vertex_count() {
                return Err(Violation::VertexOutOfRange { node, vertex: v });
            }
            traces[v].push(node);
        }
    }
    Ok(traces)
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

fn check_coverage(g: &Graph, traces: &[Vec<usize>]) -> Result<(), Violation> {
    for (u, v) in g.edges() {
        if sorted_intersect(&traces[u], &traces[v]).is_none() {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    Ok(())
}

/// First node (lowest index) whose bag holds both `u` and `v`.
pub(crate) fn first_common_bag(bags: &[Vec<usize>], u: usize, v: usize) -> Option<usize> {
    bags.iter()
        .position(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok())
}

fn trace_connected(tree: &Graph, trace: &[usize]) -> bool {
    let mut inside = vec![false; tree.vertex_count()];
    for &x in trace {
        inside[x] = true;
    }
    let mut seen = vec![false; tree.vertex_count()];
    seen[trace[0]] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([trace[0]]);
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if inside[y] && !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == trace.len()
}

/// Witness that a graph is an apex-forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApexForest {
    /// The graph is already a forest.
    Forest,
    /// Deleting this vertex (the smallest that works) leaves a forest.
    Apex(usize),
}

pub fn is_apex_forest(g: &Graph) -> Option<ApexForest> {
    if is_forest(g) {
        return Some(ApexForest::Forest);
    }
    (0..g.vertex_count())
        .find(|&a| is_forest(&g.remove_vertices(&[a]).0))
        .map(ApexForest::Apex)
}

/// Every cycle is a triangle, i.e. every block has at most three vertices.
pub fn is_triangle_forest(g: &Graph) -> bool {
    blocks(g).blocks.iter().all(|b| b.len() <= 3)
}

/// Width-1 decomposition of a forest: one bag `{v, parent(v)}` per vertex,
/// component roots chained together.
pub fn forest_decomposition(g: &Graph) -> Option<TreeDecomposition> {
    if !is_forest(g) {
        return None;
    }
    let n = g.vertex_count();
    if n == 0 {
        return Some(TreeDecomposition::new(Graph::empty(1), vec![vec![]]));
    }
    let mut parent = vec![usize::MAX; n];
    let mut tree_edges = Vec::new();
    let mut bags = vec![Vec::new(); n];
    let mut last_root: Option<usize> = None;
    for comp in connected_components(g) {
        let root = comp[0];
        bags[root] = vec![root];
        if let Some(r) = last_root {
            tree_edges.push((r, root));
        }
        last_root = Some(root);
        let mut queue = VecDeque::from([root]);
        parent[root] = root;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    bags[y] = vec![x, y];
                    tree_edges.push((x, y));
                    queue.push_back(y);
                }
            }
        }
    }
    let tree = Graph::from_edges(n, tree_edges).expect("BFS edges are simple");
    Some(TreeDecomposition::new(tree, bags))
}

/// Width-at-most-2 decomposition certifying an apex-forest: a forest
/// decomposition of `g - a` with the apex added to every bag.
pub fn apex_forest_decomposition(g: &Graph) -> Option<TreeDecomposition> {
    match is_apex_forest(g)? {
        ApexForest::Forest => forest_decomposition(g),
        ApexForest::Apex(a) => {
            let (rest, back) = g.remove_vertices(&[a]);
            let d = forest_decomposition(&rest)?;
            let bags = d
                .bags()
                .iter()
                .map(|b| b.iter().map(|&x| back[x]).chain([a]).collect())
                .collect();
            Some(TreeDecomposition::new(d.tree().clone(), bags))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn single_bag_is_always_valid() {
        let k4 = complete_graph(4).unwrap();
        let d = TreeDecomposition::new(Graph::empty(1), vec![vec![0, 1, 2, 3]]);
        assert_eq!(d.checked_width(&k4), Ok(3));
    }

    #[test]
    fn path_decomposition_of_p3() {
        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.checked_width(&Graph::path(3)), Ok(1));
    }

    #[test]
    fn uncovered_edge_is_reported_first() {
        let k2 = Graph::path(2);
        let d = TreeDecomposition::new(Graph::path(2), vec![vec![0], vec![1]]);
        assert_eq!(d.validate(&k2), Err(Violation::EdgeUncovered(0, 1)));
        // also disconnected vertex 0, but coverage is checked first
        let p3 = Graph::path(3);
        let d = PathDecomposition::new(vec![vec![0], vec![1, 2], vec![0]]);
        assert_eq!(d.validate(&p3), Err(Violation::EdgeUncovered(0, 1)));
    }

    #[test]
    fn structural_violations() {
        let g = Graph::path(2);
        let d = TreeDecomposition::new(Graph::empty(2), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(d.validate(&g), Err(Violation::IndexNotTree));
        let d = TreeDecomposition::new(Graph::path(2), vec![vec![0, 1]]);
        assert_eq!(d.validate(&g), Err(Violation::BagCount { nodes: 2, bags: 1 }));
        let d = TreeDecomposition::new(Graph::empty(1), vec![vec![0, 1, 5]]);
        assert_eq!(
            d.validate(&g),
            Err(Violation::VertexOutOfRange { node: 0, vertex: 5 })
        );
        let d = TreeDecomposition::new(Graph::empty(1), vec![vec![0]]);
        assert_eq!(d.validate(&Graph::empty(2)), Err(Violation::VertexMissing(1)));
        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(d.validate(&Graph::path(3)), Err(Violation::DisconnectedTrace(0)));
        assert_eq!(
            PathDecomposition::new(vec![]).validate(&g),
            Err(Violation::EmptyIndex)
        );
    }

    #[test]
    fn disconnected_trace_in_tree() {
        // star index: centre 0 holds vertex 1 only; leaves 1 and 2 both hold 0
        let tree = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let d = TreeDecomposition::new(tree, vec![vec![1], vec![0, 1], vec![0]]);
        assert_eq!(
            d.validate(&Graph::path(2)),
            Err(Violation::DisconnectedTrace(0))
        );
    }

    #[test]
    fn apex_forest_recognition() {
        assert_eq!(is_apex_forest(&Graph::path(4)), Some(ApexForest::Forest));
        let (fan, _) = crate::graph::cone(&Graph::path(5));
        assert_eq!(is_apex_forest(&fan), Some(ApexForest::Apex(5)));
        assert_eq!(is_apex_forest(&complete_graph(4).unwrap()), None);
    }

    #[test]
    fn triangle_forest_recognition() {
        assert!(is_triangle_forest(&Graph::path(5)));
        assert!(!is_triangle_forest(&Graph::cycle(4)));
        let bowtie_with_pendants = Graph::from_edges(
            7,
            [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (0, 5), (4, 6)],
        )
        .unwrap();
        assert!(is_triangle_forest(&bowtie_with_pendants));
        assert!(!is_triangle_forest(&complete_graph(4).unwrap()));
    }

    #[test]
    fn certificates_for_forests_and_apex_forests() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let d = forest_decomposition(&g).unwrap();
        assert_eq!(d.checked_width(&g), Ok(1));
        assert!(forest_decomposition(&Graph::cycle(3)).is_none());

        let (fan, _) = crate::graph::cone(&Graph::path(6));
        let d = apex_forest_decomposition(&fan).unwrap();
        assert_eq!(d.checked_width(&fan), Ok(2));
        assert!(apex_forest_decomposition(&crate::graph::catalogue::wheel(6)).is_none());
        assert!(apex_forest_decomposition(&complete_graph(4).unwrap()).is_none());
    }
}
