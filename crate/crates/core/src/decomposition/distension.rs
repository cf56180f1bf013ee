//! Decompositions of a distension built from a decomposition of its base.

use super::{first_common_bag, DecompositionError, PathDecomposition, TreeDecomposition};
use crate::graph::Graph;
use crate::lowerbound::DistensionGraph;

fn check_distension(g: &Graph, dist: &DistensionGraph) -> Result<(), DecompositionError> {
    if dist.base != *g {
        return Err(DecompositionError::NotADistension(
            "base graph differs from the decomposed graph".into(),
        ));
    }
    dist.check().map_err(DecompositionError::NotADistension)
}

/// For each base edge `vw` with path `u_1..u_t`, hangs the bags
/// `{v, w, u_i, u_{i+1}}` as a path off the lowest node containing `v, w`.
/// Width is at most `max(width(d), 3)`.
///
/// With `t = 1` there is no consecutive pair, so a single bag `{v, w, u_1}`
/// is hung instead.
pub fn distension_tree_decomposition(
    g: &Graph,
    d: &TreeDecomposition,
    dist: &DistensionGraph,
) -> Result<TreeDecomposition, DecompositionError> {
    d.validate(g)?;
    check_distension(g, dist)?;
    let mut bags = d.bags().to_vec();
    let mut tree_edges: Vec<(usize, usize)> = d.tree().edges().collect();
    for (&(v, w), path) in &dist.edge_paths {
        let x0 = first_common_bag(d.bags(), v, w).expect("validated decomposition covers every edge");
        let new_bags: Vec<Vec<usize>> = if path.len() == 1 {
            vec![vec![v, w, path[0]]]
        } else {
            path.windows(2).map(|u| vec![v, w, u[0], u[1]]).collect()
        };
        let mut prev = x0;
        for bag in new_bags {
            let x = bags.len();
            bags.push(bag);
            tree_edges.push((prev, x));
            prev = x;
        }
    }
    let tree = Graph::from_edges(bags.len(), tree_edges).expect("fresh nodes form a tree");
    Ok(TreeDecomposition::new(tree, bags))
}

/// Assigns every base edge to the first bag containing both ends. Each bag
/// `B_i` is repeated once per assigned edge (edges in lexicographic order),
/// and after each copy the bags `B_i ∪ {u_k, u_{k+1}}` for that edge's path
/// are inserted. Width is at most `width(d) + 2`.
///
/// With `t = 1` the single bag `B_i ∪ {u_1}` is inserted.
pub fn distension_path_decomposition(
    g: &Graph,
    d: &PathDecomposition,
    dist: &DistensionGraph,
) -> Result<PathDecomposition, DecompositionError> {
    d.validate(g)?;
    check_distension(g, dist)?;
    let mut assigned: Vec<Vec<&[usize]>> = vec![Vec::new(); d.bags().len()];
    for (&(v, w), path) in &dist.edge_paths {
        let i = first_common_bag(d.bags(), v, w).expect("validated decomposition covers every edge");
        assigned[i].push(path);
    }
    let mut out = Vec::new();
    for (bag, paths) in d.bags().iter().zip(&assigned) {
        if paths.is_empty() {
            out.push(bag.clone());
        }
        for path in paths {
            out.push(bag.clone());
            if path.len() == 1 {
                out.push(bag.iter().copied().chain([path[0]]).collect());
            }
            for u in path.windows(2) {
                out.push(bag.iter().copied().chain([u[0], u[1]]).collect());
            }
        }
    }
    Ok(PathDecomposition::new(out))
}
