//! Random instances for property tests and acceptance runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

fn relabel<R: Rng>(n: usize, edges: Vec<(usize, usize)>, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
        .expect("generator edges are simple")
}

/// A random stacked triangulation on `n` vertices (each new vertex placed in
/// a random face), with each edge then kept with probability `keep`, and
/// vertices shuffled. Always planar.
pub fn random_planar_graph<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    if n >= 2 {
        edges.push((0, 1));
    }
    if n >= 3 {
        edges.extend([(0, 2), (1, 2)]);
    }
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    edges.retain(|_| rng.gen_bool(keep));
    relabel(n, edges, rng)
}

/// A random triangle-forest on `n` vertices: new blocks (`K_2` or `K_3`)
/// are glued at random existing vertices, occasionally starting a new
/// component. Vertices are shuffled.
pub fn random_triangle_forest<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    let mut size = n.min(1);
    while size < n {
        if rng.gen_bool(0.05) {
            size += 1;
            continue;
        }
        let at = rng.gen_range(0..size);
        if size + 2 <= n && rng.gen_bool(0.5) {
            let (u, v) = (size, size + 1);
            edges.extend([(at, u), (at, v), (u, v)]);
            size += 2;
        } else {
            edges.push((at, size));
            size += 1;
        }
    }
    relabel(n, edges, rng)
}

/// A random planar core on `core` vertices plus two universal vertices
/// (adjacent to each other and to everything), vertices shuffled.
pub fn random_two_apex_graph<R: Rng>(core: usize, rng: &mut R) -> Graph {
    let keep = rng.gen_range(0.5..1.0);
    let planar = random_planar_graph(core, keep, rng);
    let (a, b) = (core, core + 1);
    let mut edges: Vec<(usize, usize)> = planar.edges().collect();
    edges.push((a, b));
    for v in 0..core {
        edges.extend([(v, a), (v, b)]);
    }
    relabel(core + 2, edges, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_triangle_forest;
    use crate::graph::is_planar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_have_their_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..30 {
            let g = random_planar_graph(n, 1.0, &mut rng);
            assert!(is_planar(&g));
            if n >= 3 {
                assert_eq!(g.edge_count(), 3 * n - 6);
            }
            assert!(is_triangle_forest(&random_triangle_forest(n, &mut rng)));
            assert_eq!(random_triangle_forest(n, &mut rng).vertex_count(), n);
        }
        let g = random_two_apex_graph(12, &mut rng);
        assert_eq!(g.vertex_count(), 14);
        assert!((0..14).filter(|&v| g.degree(v) == 13).count() >= 2);
    }
}
