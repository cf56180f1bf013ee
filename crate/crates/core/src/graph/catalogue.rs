//! Small-graph catalogues: every graph on `n` vertices up to isomorphism, and
//! a handful of named graphs.

use std::collections::BTreeSet;

use super::{canonical_form, connected_components, is_planar, CanonicalForm, Graph};

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, in canonical labelling, sorted by canonical form.
///
/// Built by vertex extension: every graph on `n` vertices minus its last
/// vertex is isomorphic to some graph on `n - 1` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Graph::empty(0)));
    for order in 1..=n {
        let mut next = BTreeSet::new();
        let new = order - 1;
        for base in &level {
            for mask in 0u64..(1 << new) {
                let extra = (0..new).filter(|&v| mask >> v & 1 == 1).map(|v| (v, new));
                let g = Graph::simplified(order, base.edges.iter().copied().chain(extra));
                next.insert(canonical_form(&g));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

/// All graphs on `1..=max_n` vertices (up to isomorphism) satisfying `keep`.
pub fn graphs_up_to(max_n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    (1..=max_n).flat_map(all_graphs).filter(|g| keep(g)).collect()
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Connected planar graphs on `1..=max_n` vertices.
pub fn connected_planar_graphs(max_n: usize) -> Vec<Graph> {
    graphs_up_to(max_n, |g| is_connected(g) && is_planar(g))
}

/// `K_{2,2,2}`.
pub fn octahedron() -> Graph {
    let non_edges = [(0, 1), (2, 3), (4, 5)];
    Graph::simplified(
        6,
        (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|e| !non_edges.contains(e)),
    )
}

pub fn icosahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        e.extend([(0, up), (up, up_next), (low, low_next), (11, low)]);
        e.extend([(up, low), (up, low_next)]);
    }
    Graph::simplified(12, e)
}

pub fn dodecahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, 5 + 2 * i));
        e.push((5 + 2 * i + 1, 15 + i));
        e.push((15 + i, 15 + (i + 1) % 5));
    }
    for i in 0..10 {
        e.push((5 + i, 5 + (i + 1) % 10));
    }
    Graph::simplified(20, e)
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::simplified(10, e)
}

/// Wheel: a cycle on `rim` vertices plus a hub (the last vertex).
pub fn wheel(rim: usize) -> Graph {
    super::cone(&Graph::cycle(rim)).0
}
