//! Canonical labelling by colour refinement plus exhaustive individualisation.
//!
//! No automorphism pruning is done, so highly symmetric graphs cost up to
//! `n!` leaves. That is fine for the catalogue sizes used here (n <= 8) and
//! is the reason this is not offered for large inputs.

use super::Graph;

/// The lexicographically smallest relabelled edge list over all orderings the
/// search visits. Two graphs are isomorphic iff their forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::simplified(self.n, self.edges.iter().copied())
    }
}

/// Refines `colour` to the coarsest equitable colouring it admits. Colours
/// are renumbered `0..k` in an isomorphism-invariant order.
fn refine(g: &Graph, colour: &mut [usize]) {
    let n = g.vertex_count();
    let mut classes = count_classes(colour);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colour[sigs[i].2] = next;
        }
        let new_classes = if n == 0 { 0 } else { next + 1 };
        if new_classes == classes {
            return;
        }
        classes = new_classes;
    }
}

fn count_classes(colour: &[usize]) -> usize {
    let mut c: Vec<usize> = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(g: &Graph, colour: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
    let n = g.vertex_count();
    // smallest colour class with more than one member
    let mut sizes = vec![0usize; n];
    for &c in &colour {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1);
    match target {
        None => {
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .map(|(u, v)| {
                    let (a, b) = (colour[u], colour[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                *best = Some(edges);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colour[v] == cell) {
                // v goes first within its cell
                let mut c: Vec<usize> = colour.iter().map(|&x| 2 * x + 1).collect();
                c[v] = 2 * cell;
                refine(g, &mut c);
                search(g, c, best);
            }
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    refine(g, &mut colour);
    let mut best = None;
    search(g, colour, &mut best);
    CanonicalForm {
        n,
        edges: best.unwrap_or_default(),
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}
