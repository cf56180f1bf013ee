//! Vertex partitions, the split of a planar graph into two induced
//! triangle-forests, and matchings whose contraction leaves a forest.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::decomposition::is_triangle_forest;
use crate::graph::{
    blocks, is_forest, is_planar, quotient_by_matching, Graph, Matching, VertexMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one part")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any part")]
    Uncovered(usize),
    #[error("input graph is not planar")]
    NotPlanar,
    #[error("input graph is not a triangle-forest")]
    NotTriangleForest,
    #[error("internal error: {0}")]
    Internal(&'static str),
}

/// A partition of `0..n` into nonempty parts. Part order is significant:
/// quotients index their vertices by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl VertexPartition {
    /// Checks disjointness, coverage and nonemptiness. Each part is sorted.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut part_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(parts.len());
        for (i, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(i));
            }
            for &v in &part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                part_of[v] = i;
            }
            part.sort_unstable();
            sorted.push(part);
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(VertexPartition {
            parts: sorted,
            part_of,
        })
    }

    /// Parts are the label classes, ordered by first occurrence.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut part_of = Vec::with_capacity(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            let i = *index.entry(l).or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[i].push(v);
            part_of.push(i);
        }
        VertexPartition { parts, part_of }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn whole(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// The partition induced on `vertices` (relabelled `0..k` in the order
    /// given), plus the original part index of each induced part.
    pub fn restrict(&self, vertices: &[usize]) -> (VertexPartition, Vec<usize>) {
        let labels: Vec<usize> = vertices.iter().map(|&v| self.part_of[v]).collect();
        let induced = Self::from_labels(&labels);
        let origin = induced
            .parts
            .iter()
            .map(|p| self.part_of[vertices[p[0]]])
            .collect();
        (induced, origin)
    }
}

/// Splits a planar graph into at most two sets that each induce a
/// triangle-forest. Empty sides are dropped, so the result has one part for
/// forests-of-triangles and two otherwise.
///
/// Exact backtracking over 2-colourings: vertices in descending degree order
/// (ties by index), first side tried first; a vertex is refused a side when
/// its component on that side stops being a triangle-forest.
pub fn two_triangle_forest_partition(g: &Graph) -> Result<VertexPartition, PartitionError> {
    if !is_planar(g) {
        return Err(PartitionError::NotPlanar);
    }
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut side = vec![None; n];
    if !assign(g, &order, 0, &mut side) {
        return Err(PartitionError::Internal(
            "no split into two triangle-forests found for a planar graph",
        ));
    }
    let labels: Vec<usize> = side.iter().map(|s| s.expect("all assigned")).collect();
    let mut parts = vec![Vec::new(), Vec::new()];
    for (v, &s) in labels.iter().enumerate() {
        parts[s].push(v);
    }
    for part in &parts {
        if !is_triangle_forest(&g.induced_subgraph(part).0) {
            return Err(PartitionError::Internal("side is not a triangle-forest"));
        }
    }
    parts.retain(|p| !p.is_empty());
    VertexPartition::new(n, parts)
}

fn assign(g: &Graph, order: &[usize], i: usize, side: &mut [Option<usize>]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    for s in 0..2 {
        side[v] = Some(s);
        if side_component_ok(g, side, v, s) && assign(g, order, i + 1, side) {
            return true;
        }
    }
    side[v] = None;
    false
}

/// Is the component of `v` inside side `s` still a triangle-forest?
fn side_component_ok(g: &Graph, side: &[Option<usize>], v: usize, s: usize) -> bool {
    let mut comp = vec![v];
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] && side[y] == Some(s) {
                seen[y] = true;
                comp.push(y);
                queue.push_back(y);
            }
        }
    }
    if comp.len() < 4 {
        return true;
    }
    is_triangle_forest(&g.induced_subgraph(&comp).0)
}

/// A matching `M` of a triangle-forest with `g / M` a forest.
///
/// Repeatedly strips vertices of degree at most one; once none remain, takes
/// the leaf block with the smallest lowest vertex (necessarily a triangle),
/// matches its two vertices other than the cut vertex and deletes them.
pub fn contractible_matching(g: &Graph) -> Result<Matching, PartitionError> {
    if !is_triangle_forest(g) {
        return Err(PartitionError::NotTriangleForest);
    }
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut pairs = Vec::new();

    let kill = |v: usize, alive: &mut [bool], degree: &mut [usize]| {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
    };

    loop {
        let mut stripped = true;
        while stripped {
            stripped = false;
            for v in 0..n {
                if alive[v] && degree[v] <= 1 {
                    kill(v, &mut alive, &mut degree);
                    stripped = true;
                }
            }
        }
        let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if rest.is_empty() {
            break;
        }
        let (sub, back) = g.induced_subgraph(&rest);
        let structure = blocks(&sub);
        let leaf = structure
            .leaf_blocks()
            .min_by_key(|b| b[0])
            .ok_or(PartitionError::Internal("no leaf block in a nonempty graph"))?;
        if leaf.len() != 3 {
            return Err(PartitionError::Internal(
                "leaf block of a min-degree-2 triangle-forest is not a triangle",
            ));
        }
        let cut = leaf
            .iter()
            .position(|v| structure.cut_vertices.binary_search(v).is_ok());
        let (u, w) = match cut {
            Some(0) => (leaf[1], leaf[2]),
            Some(1) => (leaf[0], leaf[2]),
            _ => (leaf[0], leaf[1]),
        };
        let (u, w) = (back[u], back[w]);
        pairs.push((u, w));
        kill(u, &mut alive, &mut degree);
        kill(w, &mut alive, &mut degree);
    }

    let m = Matching::new(g, pairs).map_err(|_| PartitionError::Internal("not a matching"))?;
    let (q, _) = quotient_by_matching(g, &m).map_err(|_| PartitionError::Internal("quotient"))?;
    if !is_forest(&q) {
        return Err(PartitionError::Internal("contracted graph is not a forest"));
    }
    Ok(m)
}

/// Output of [`planar_contractible_matching`].
#[derive(Debug, Clone)]
pub struct PlanarMatching {
    pub matching: Matching,
    /// The triangle-forest split of the input graph.
    pub split: VertexPartition,
    /// `g / matching`.
    pub quotient: Graph,
    /// Input vertex to quotient vertex.
    pub class_map: VertexMap,
    /// Images of the split parts; each induces a forest in `quotient`.
    pub forests: VertexPartition,
}

/// A matching of a planar graph whose contraction splits into two induced
/// forests: triangle-forest split, then a contractible matching per side.
pub fn planar_contractible_matching(g: &Graph) -> Result<PlanarMatching, PartitionError> {
    let split = two_triangle_forest_partition(g)?;
    let mut pairs = Vec::new();
    for part in split.parts() {
        let (sub, back) = g.induced_subgraph(part);
        let m = contractible_matching(&sub)?;
        pairs.extend(m.edges().iter().map(|&(u, v)| (back[u], back[v])));
    }
    let matching = Matching::union_unchecked(pairs);
    let (quotient, class_map) =
        quotient_by_matching(g, &matching).map_err(|_| PartitionError::Internal("union"))?;
    let mut image_labels = vec![usize::MAX; quotient.vertex_count()];
    for v in 0..g.vertex_count() {
        image_labels[class_map.get(v)] = split.part_of(v);
    }
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); split.len()];
    for (q, &side) in image_labels.iter().enumerate() {
        parts[side].push(q);
    }
    let forests = VertexPartition::new(quotient.vertex_count(), parts)
        .map_err(|_| PartitionError::Internal("forest images do not partition the quotient"))?;
    for part in forests.parts() {
        if !is_forest(&quotient.induced_subgraph(part).0) {
            return Err(PartitionError::Internal("quotient side is not a forest"));
        }
    }
    Ok(PlanarMatching {
        matching,
        split,
        quotient,
        class_map,
        forests,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalogue::{dodecahedron, icosahedron, octahedron};
    use crate::graph::{complete_graph, connected_components};

    fn chain_of_triangles(k: usize) -> Graph {
        // triangles (0,1,2), (2,3,4), (4,5,6), ...
        let mut e = Vec::new();
        for i in 0..k {
            let a = 2 * i;
            e.extend([(a, a + 1), (a + 1, a + 2), (a, a + 2)]);
        }
        Graph::from_edges(2 * k + 1, e).unwrap()
    }

    #[test]
    fn partition_constructor_checks() {
        assert_eq!(
            VertexPartition::new(3, vec![vec![0], vec![]]),
            Err(PartitionError::EmptyPart(1))
        );
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(PartitionError::Overlap(1))
        );
        assert_eq!(
            VertexPartition::new(3, vec![vec![0, 1]]),
            Err(PartitionError::Uncovered(2))
        );
        assert_eq!(
            VertexPartition::new(2, vec![vec![0, 2]]),
            Err(PartitionError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        let p = VertexPartition::from_labels(&[7, 3, 7, 1]);
        assert_eq!(p.parts(), &[vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn restriction_keeps_original_part_ids() {
        let p = VertexPartition::from_labels(&[0, 1, 1, 2, 0]);
        let (r, origin) = p.restrict(&[4, 2, 1]);
        assert_eq!(r.parts(), &[vec![0], vec![1, 2]]);
        assert_eq!(origin, vec![0, 1]);
    }

    #[test]
    fn forests_stay_in_one_part() {
        let p = two_triangle_forest_partition(&Graph::path(6)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.part(0), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn k4_splits_two_and_two() {
        let p = two_triangle_forest_partition(&complete_graph(4).unwrap()).unwrap();
        // K4 itself is not a triangle-forest, so both sides are used
        assert_eq!(p.len(), 2);
        assert!(p.parts().iter().all(|part| part.len() <= 3));
    }

    #[test]
    fn octahedron_and_platonic_split() {
        for g in [octahedron(), icosahedron(), dodecahedron()] {
            let p = two_triangle_forest_partition(&g).unwrap();
            for part in p.parts() {
                assert!(is_triangle_forest(&g.induced_subgraph(part).0));
            }
        }
    }

    #[test]
    fn nonplanar_input_rejected() {
        assert_eq!(
            two_triangle_forest_partition(&complete_graph(5).unwrap()),
            Err(PartitionError::NotPlanar)
        );
    }

    #[test]
    fn matching_examples() {
        assert!(contractible_matching(&Graph::path(5)).unwrap().is_empty());
        let m = contractible_matching(&complete_graph(3).unwrap()).unwrap();
        assert_eq!(m.edges(), &[(0, 1)]);

        let g = chain_of_triangles(3);
        let m = contractible_matching(&g).unwrap();
        assert_eq!(m.len(), 3);
        let cuts = blocks(&g).cut_vertices;
        for &(u, v) in m.edges() {
            assert!(!(cuts.contains(&u) && cuts.contains(&v)), "matched a cut edge {u}-{v}");
        }
        let (q, _) = quotient_by_matching(&g, &m).unwrap();
        assert!(crate::graph::is_tree(&q));
    }

    #[test]
    fn matching_rejects_non_triangle_forests() {
        assert_eq!(
            contractible_matching(&Graph::cycle(4)),
            Err(PartitionError::NotTriangleForest)
        );
    }

    #[test]
    fn planar_matching_on_k4_and_dodecahedron() {
        for g in [complete_graph(4).unwrap(), dodecahedron(), Graph::path(4)] {
            let pm = planar_contractible_matching(&g).unwrap();
            assert!(pm.matching.len() <= g.vertex_count() / 2);
            assert_eq!(pm.quotient.vertex_count(), g.vertex_count() - pm.matching.len());
            for part in pm.forests.parts() {
                assert!(is_forest(&pm.quotient.induced_subgraph(part).0));
            }
        }
        let tree = planar_contractible_matching(&Graph::path(4)).unwrap();
        assert!(tree.matching.is_empty());
        assert_eq!(tree.forests.len(), 1);
    }

    #[test]
    fn disconnected_triangle_forest() {
        let g = Graph::from_edges(
            7,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (5, 6)],
        )
        .unwrap();
        let m = contractible_matching(&g).unwrap();
        assert_eq!(m.len(), 2);
        let (q, _) = quotient_by_matching(&g, &m).unwrap();
        assert!(is_forest(&q));
        assert_eq!(connected_components(&q).len(), 2);
    }
}
