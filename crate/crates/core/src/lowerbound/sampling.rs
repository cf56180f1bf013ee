//! Random valid `(P, Q)` pairs: `P` a tree-partition, `Q` any partition
//! with `|P ∩ Q| <= c`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::layered_tree_partition_grouped;
use crate::graph::{connected_components, quotient_by_partition, Graph};
use crate::partition::VertexPartition;

/// BFS layering from a random root, with random merging of consecutive
/// layers, then random contraction of quotient edges.
pub fn random_tree_partition<R: Rng>(g: &Graph, rng: &mut R) -> VertexPartition {
    if g.vertex_count() == 0 {
        return VertexPartition::singletons(0);
    }
    let root = rng.gen_range(0..g.vertex_count());
    let merge_prob = rng.gen_range(0.0..0.6);
    let merges: Vec<bool> = (0..=g.vertex_count() + 2).map(|_| rng.gen_bool(merge_prob)).collect();
    let p = layered_tree_partition_grouped(g, root, &|i| merges.get(i).copied().unwrap_or(false));
    let contract_prob = rng.gen_range(0.0..0.5);
    contract_quotient_edges(g, &p, contract_prob, rng)
}

/// Unions the two parts of each quotient edge with probability `prob`.
/// Contracting edges of a forest leaves a forest.
pub fn contract_quotient_edges<R: Rng>(
    g: &Graph,
    p: &VertexPartition,
    prob: f64,
    rng: &mut R,
) -> VertexPartition {
    let (quotient, _) = quotient_by_partition(g, p).expect("partition of g");
    let kept = quotient
        .edges()
        .filter(|_| rng.gen_bool(prob))
        .collect::<Vec<_>>();
    let merged = Graph::simplified(quotient.vertex_count(), kept);
    let mut label = vec![0; quotient.vertex_count()];
    for (i, comp) in connected_components(&merged).iter().enumerate() {
        for &x in comp {
            label[x] = i;
        }
    }
    let labels: Vec<usize> = (0..g.vertex_count()).map(|v| label[p.part_of(v)]).collect();
    VertexPartition::from_labels(&labels)
}

/// A random nonempty centre set plus the components of the rest; the
/// quotient is contained in a star.
pub fn random_star_partition<R: Rng>(g: &Graph, rng: &mut R) -> VertexPartition {
    let n = g.vertex_count();
    if n == 0 {
        return VertexPartition::singletons(0);
    }
    let density = rng.gen_range(0.0..0.5);
    let mut centre: Vec<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
    if centre.is_empty() {
        centre.push(rng.gen_range(0..n));
    }
    let (rest, back) = g.remove_vertices(&centre);
    let mut labels = vec![0; n];
    for (i, comp) in connected_components(&rest).iter().enumerate() {
        for &x in comp {
            labels[back[x]] = i + 1;
        }
    }
    VertexPartition::from_labels(&labels)
}

/// Greedy random `Q` respecting `|P ∩ Q| <= c`: vertices in random order
/// join a neighbour's part, a random existing part, or a new part.
pub fn random_capped_partition<R: Rng>(
    g: &Graph,
    p: &VertexPartition,
    c: usize,
    rng: &mut R,
) -> VertexPartition {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let fresh_prob = rng.gen_range(0.05..0.6);
    let mut label = vec![usize::MAX; n];
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next = 0;
    for v in order {
        let pv = p.part_of(v);
        let mut candidates: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| label[w])
            .filter(|&l| l != usize::MAX)
            .collect();
        if next > 0 {
            candidates.extend((0..3).map(|_| rng.gen_range(0..next)));
        }
        candidates.shuffle(rng);
        let chosen = if rng.gen_bool(fresh_prob) {
            None
        } else {
            candidates
                .into_iter()
                .find(|&l| counts.get(&(pv, l)).copied().unwrap_or(0) < c)
        };
        let l = chosen.unwrap_or_else(|| {
            next += 1;
            next - 1
        });
        label[v] = l;
        *counts.entry((pv, l)).or_default() += 1;
    }
    VertexPartition::from_labels(&label)
}

/// Every tree-partition of a double-fan separating the centres has exactly
/// two parts; this samples one uniformly at random from a random bias.
pub fn random_split_double_fan_partition<R: Rng>(
    n: usize,
    centres: (usize, usize),
    rng: &mut R,
) -> VertexPartition {
    let bias = rng.gen_range(0.0..1.0);
    let labels: Vec<usize> = (0..n)
        .map(|v| match v {
            _ if v == centres.0 => 0,
            _ if v == centres.1 => 1,
            _ => usize::from(rng.gen_bool(bias)),
        })
        .collect();
    VertexPartition::from_labels(&labels)
}

/// A valid pair for a double-fan with `P1 != P2` and `Q1 != Q2`, by
/// rejection on `Q`.
pub fn random_double_fan_pair<R: Rng>(
    f: &Graph,
    centres: (usize, usize),
    c: usize,
    rng: &mut R,
) -> (VertexPartition, VertexPartition) {
    let p = random_split_double_fan_partition(f.vertex_count(), centres, rng);
    loop {
        let q = random_capped_partition(f, &p, c, rng);
        if q.part_of(centres.0) != q.part_of(centres.1) {
            return (p, q);
        }
    }
}
