//! Exact treewidth and pathwidth by dynamic programming over vertex subsets.
//!
//! Both run in `O(2^n * n^2)` time and `2^n` bytes, so they refuse inputs
//! above a configurable vertex cap.

use super::{DecompositionError, PathDecomposition, TreeDecomposition};
use crate::graph::Graph;

/// Above this the subset tables no longer fit comfortably in memory.
const HARD_LIMIT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest vertex count accepted.
    pub vertex_cap: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { vertex_cap: 14 }
    }
}

/// An exact width together with a decomposition attaining it.
#[derive(Debug, Clone)]
pub struct ExactWidth<D> {
    pub width: usize,
    pub decomposition: D,
    /// Vertex elimination (or layout) order behind the decomposition.
    pub order: Vec<usize>,
}

fn check_cap(g: &Graph, config: &ExactConfig) -> Result<Vec<u64>, DecompositionError> {
    let n = g.vertex_count();
    let cap = config.vertex_cap.min(HARD_LIMIT);
    if n > cap {
        return Err(DecompositionError::CapExceeded { n, cap });
    }
    Ok(g.adjacency_masks())
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            v
        })
    })
}

fn neighbourhood(adj: &[u64], s: u64) -> u64 {
    bits(s).fold(0, |acc, x| acc | adj[x])
}

/// Vertices outside `s + v` adjacent to the component of `v` in `G[s + v]`:
/// the neighbourhood `v` has at the moment it is eliminated after `s`.
fn q_size(adj: &[u64], s: u64, v: usize) -> u32 {
    let allowed = s | 1 << v;
    let mut comp = 1u64 << v;
    let mut frontier = comp;
    loop {
        let new = neighbourhood(adj, frontier) & allowed & !comp;
        if new == 0 {
            break;
        }
        comp |= new;
        frontier = new;
    }
    (neighbourhood(adj, comp) & !allowed).count_ones()
}

/// Exact treewidth with an optimal decomposition.
///
/// The empty graph gets width 0 and a single empty bag.
pub fn exact_treewidth(
    g: &Graph,
    config: &ExactConfig,
) -> Result<ExactWidth<TreeDecomposition>, DecompositionError> {
    let adj = check_cap(g, config)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ExactWidth {
            width: 0,
            decomposition: TreeDecomposition::new(Graph::empty(1), vec![vec![]]),
            order: vec![],
        });
    }
    let full: u64 = (1 << n) - 1;
    let mut tw = vec![0u8; 1 << n];
    for s in 1..=full {
        tw[s as usize] = bits(s)
            .map(|v| {
                let rest = s & !(1 << v);
                tw[rest as usize].max(q_size(&adj, rest, v) as u8)
            })
            .min()
            .expect("non-empty subset");
    }
    let mut reversed = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = bits(s)
            .find(|&v| {
                let rest = s & !(1 << v);
                tw[rest as usize].max(q_size(&adj, rest, v) as u8) == tw[s as usize]
            })
            .expect("optimum is attained");
        reversed.push(v);
        s &= !(1 << v);
    }
    reversed.reverse();
    let order = reversed;
    let decomposition = elimination_decomposition(&adj, &order);
    Ok(ExactWidth {
        width: tw[full as usize] as usize,
        decomposition,
        order,
    })
}

/// Decomposition from an elimination order: node `i` holds `order[i]` and
/// its later neighbours in the filled graph, and hangs off the node of the
/// earliest of those. Nodes with no later neighbour are chained.
pub(crate) fn elimination_decomposition(adj: &[u64], order: &[usize]) -> TreeDecomposition {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut filled = adj.to_vec();
    let mut remaining: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, &v) in order.iter().enumerate() {
        remaining &= !(1 << v);
        let later = filled[v] & remaining;
        for x in bits(later) {
            filled[x] |= later & !(1 << x);
        }
        bags.push(bits(later).chain([v]).collect::<Vec<_>>());
        match bits(later).map(|x| pos[x]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    tree_edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    let tree = Graph::simplified(n, tree_edges);
    TreeDecomposition::new(tree, bags)
}

/// Exact pathwidth (vertex separation number) with an optimal path
/// decomposition. Bag `i` is the boundary of the first `i - 1` vertices of
/// the layout plus the `i`-th vertex.
pub fn exact_pathwidth(
    g: &Graph,
    config: &ExactConfig,
) -> Result<ExactWidth<PathDecomposition>, DecompositionError> {
    let adj = check_cap(g, config)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ExactWidth {
            width: 0,
            decomposition: PathDecomposition::new(vec![vec![]]),
            order: vec![],
        });
    }
    let full: u64 = (1 << n) - 1;
    let boundary = |s: u64| {
        bits(s)
            .filter(|&u| adj[u] & !s != 0)
            .fold(0u64, |m, u| m | 1 << u)
    };
    let mut pw = vec![0u8; 1 << n];
    for s in 1..=full {
        let best = bits(s)
            .map(|v| pw[(s & !(1 << v)) as usize])
            .min()
            .expect("non-empty subset");
        pw[s as usize] = best.max(boundary(s).count_ones() as u8);
    }
    let mut reversed = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let b = boundary(s).count_ones() as u8;
        let v = bits(s)
            .find(|&v| pw[(s & !(1 << v)) as usize].max(b) == pw[s as usize])
            .expect("optimum is attained");
        reversed.push(v);
        s &= !(1 << v);
    }
    reversed.reverse();
    let order = reversed;
    let mut bags = Vec::with_capacity(n);
    let mut prefix = 0u64;
    for &v in &order {
        bags.push(bits(boundary(prefix)).chain([v]).collect::<Vec<_>>());
        prefix |= 1 << v;
    }
    let decomposition = PathDecomposition::new(bags);
    Ok(ExactWidth {
        width: decomposition.width(),
        decomposition,
        order,
    })
}
