//! Brute-force oracles. Deliberately naive and independent of the library
//! algorithms they check.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use prodstruct::graph::catalogue::all_graphs;
use prodstruct::graph::{canonical_form, CanonicalForm};
use prodstruct::Graph;

/// Every graph on `1..=8` vertices up to isomorphism, built once per test
/// binary.
pub fn catalogue(max_n: usize) -> Vec<&'static Graph> {
    static ALL: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    let all = ALL.get_or_init(|| (0..=8).map(all_graphs).collect());
    all[1..=max_n].iter().flatten().collect()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Length of the longest simple cycle (0 if acyclic), by extending every
/// simple path from its smallest vertex.
pub fn longest_cycle(g: &Graph) -> usize {
    let a = adjacency(g);
    let n = g.vertex_count();
    let mut best = 0;
    fn extend(a: &[Vec<bool>], start: usize, path: &mut Vec<usize>, used: &mut [bool], best: &mut usize) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && a[last][start] {
            *best = (*best).max(path.len());
        }
        for next in start + 1..a.len() {
            if a[last][next] && !used[next] {
                used[next] = true;
                path.push(next);
                extend(a, start, path, used, best);
                path.pop();
                used[next] = false;
            }
        }
    }
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        extend(&a, s, &mut vec![s], &mut used, &mut best);
    }
    best
}

/// Every cycle is a triangle.
pub fn cycles_are_triangles(g: &Graph) -> bool {
    longest_cycle(g) <= 3
}

/// Width of the elimination ordering `order`, by explicit fill-in.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    let mut a = adjacency(g);
    let mut gone = vec![false; g.vertex_count()];
    let mut width = 0;
    for &v in order {
        let nbrs: Vec<usize> = (0..a.len()).filter(|&w| a[v][w] && !gone[w]).collect();
        width = width.max(nbrs.len());
        for &x in &nbrs {
            for &y in &nbrs {
                if x != y {
                    a[x][y] = true;
                }
            }
        }
        gone[v] = true;
    }
    width
}

/// Whether some elimination ordering has width below `bound`: depth-first
/// over orderings, abandoning a prefix once it reaches `bound`.
pub fn some_ordering_below(g: &Graph, bound: usize) -> bool {
    let n = g.vertex_count();
    fn go(a: &mut Vec<Vec<bool>>, gone: &mut Vec<bool>, left: usize, bound: usize) -> bool {
        if left == 0 {
            return true;
        }
        let n = a.len();
        for v in 0..n {
            if gone[v] {
                continue;
            }
            let nbrs: Vec<usize> = (0..n).filter(|&w| a[v][w] && !gone[w]).collect();
            if nbrs.len() >= bound {
                continue;
            }
            let saved = a.clone();
            for &x in &nbrs {
                for &y in &nbrs {
                    if x != y {
                        a[x][y] = true;
                    }
                }
            }
            gone[v] = true;
            let found = go(a, gone, left - 1, bound);
            gone[v] = false;
            *a = saved;
            if found {
                return true;
            }
        }
        false
    }
    go(&mut adjacency(g), &mut vec![false; n], n, bound)
}

/// Largest boundary over prefixes of a layout (vertex separation).
pub fn layout_width(g: &Graph, order: &[usize]) -> usize {
    let a = adjacency(g);
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut width = 0;
    for &v in order {
        placed[v] = true;
        let boundary = (0..n)
            .filter(|&u| placed[u] && (0..n).any(|w| a[u][w] && !placed[w]))
            .count();
        width = width.max(boundary);
    }
    width
}

/// Minimum vertex separation over all `n!` layouts.
pub fn brute_pathwidth(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = layout_width(g, &order);
    permute(&mut order, 0, &mut |o| best = best.min(layout_width(g, o)));
    best
}

/// Calls `f` on every permutation of `items[k..]` (Heap-free recursion).
pub fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// All set partitions of `0..n` as label vectors (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            go(labels, n, max.max(l), out);
            labels.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    go(&mut vec![0], n, 0, &mut out);
    out
}

fn has_k5_or_k33_subgraph(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    };
    for s in subsets(5) {
        if s.iter().all(|&x| s.iter().all(|&y| x == y || a[x][y])) {
            return true;
        }
    }
    for s in subsets(6) {
        // split s into two triples with all nine cross edges
        for mask in 0u32..64 {
            if mask.count_ones() != 3 || mask & 1 == 0 {
                continue;
            }
            let (l, r): (Vec<usize>, Vec<usize>) =
                (0..6).partition(|&i| mask >> i & 1 == 1);
            if l.iter().all(|&i| r.iter().all(|&j| a[s[i]][s[j]])) {
                return true;
            }
        }
    }
    false
}

/// Kuratowski–Wagner: planar iff no `K5` or `K3,3` minor. A minor exists iff
/// some sequence of edge contractions produces a graph containing one as a
/// subgraph. Memoised on canonical forms.
pub fn planar_by_minors(g: &Graph) -> bool {
    fn nonplanar(g: &Graph, memo: &mut HashMap<CanonicalForm, bool>) -> bool {
        let n = g.vertex_count();
        if n < 5 {
            return false;
        }
        let key = canonical_form(g);
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let mut r = has_k5_or_k33_subgraph(&adjacency(g));
        if !r {
            for (u, v) in g.edges() {
                // contract v into u
                let rename = |x: usize| {
                    let x = if x == v { u } else { x };
                    if x > v { x - 1 } else { x }
                };
                let edges: std::collections::BTreeSet<(usize, usize)> = g
                    .edges()
                    .map(|(x, y)| (rename(x), rename(y)))
                    .filter(|(x, y)| x != y)
                    .map(|(x, y)| (x.min(y), x.max(y)))
                    .collect();
                let h = Graph::from_edges(n - 1, edges).unwrap();
                if nonplanar(&h, memo) {
                    r = true;
                    break;
                }
            }
        }
        memo.insert(key, r);
        r
    }
    thread_local! {
        static MEMO: std::cell::RefCell<HashMap<CanonicalForm, bool>> = Default::default();
    }
    MEMO.with(|m| !nonplanar(g, &mut m.borrow_mut()))
}

/// Is `sub` (as a set of vertices) a clique of size 4 in `g`?
pub fn is_four_clique(g: &Graph, vs: [usize; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(vs[i], vs[j])))
}

/// Relabel by a permutation.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.vertex_count(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}
