//! Fans, double-fans and distensions, the planar graph that defeats
//! `H ⊠ T ⊠ K_c` with `tw(H) <= 2`, and constructive searches for the
//! rainbow 4-cliques that certify it, plus an exhaustive clique oracle.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::{is_forest, quotient_by_partition, Graph};
use crate::partition::VertexPartition;

pub mod sampling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerBoundError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(#[from] Precondition),
    #[error("c = {c} is above the size guard ({cap}); the graph would have about {vertices} vertices")]
    SizeGuard { c: usize, cap: usize, vertices: u128 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Which hypothesis of a finder failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Precondition {
    #[error("c must be at least 1")]
    ZeroC,
    #[error("graph is not a fan with centre {0}")]
    NotAFan(usize),
    #[error("graph is not a double-fan with centres {0} and {1}")]
    NotADoubleFan(usize, usize),
    #[error("need at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("partition covers {got} vertices, graph has {expected}")]
    PartitionSize { expected: usize, got: usize },
    #[error("P is not a tree-partition")]
    NotTreePartition,
    #[error("part {p} of P and part {q} of Q share {size} vertices, more than c = {c}")]
    IntersectionTooLarge {
        p: usize,
        q: usize,
        size: usize,
        c: usize,
    },
    #[error("the centres lie in the same part of P")]
    CentresShareP,
    #[error("the centres lie in the same part of Q")]
    CentresShareQ,
}

/// The fan on `n` vertices: centre 0 dominant over the path `1, ..., n-1`.
pub fn fan(n: usize) -> Result<(Graph, usize), LowerBoundError> {
    if n < 2 {
        return Err(LowerBoundError::InvalidParameter(format!(
            "a fan needs at least 2 vertices, got {n}"
        )));
    }
    let spokes = (1..n).map(|i| (0, i));
    let path = (1..n - 1).map(|i| (i, i + 1));
    Ok((Graph::simplified(n, spokes.chain(path)), 0))
}

/// The double-fan on `n` vertices: centres 0 and 1 dominant over the path
/// `2, ..., n-1`.
pub fn double_fan(n: usize) -> Result<(Graph, (usize, usize)), LowerBoundError> {
    if n < 3 {
        return Err(LowerBoundError::InvalidParameter(format!(
            "a double-fan needs at least 3 vertices, got {n}"
        )));
    }
    let spokes = (2..n).flat_map(|i| [(0, i), (1, i)]);
    let path = (2..n - 1).map(|i| (i, i + 1));
    let edges = std::iter::once((0, 1)).chain(spokes).chain(path);
    Ok((Graph::simplified(n, edges), (0, 1)))
}

/// A graph obtained from `base` by adding, for each base edge `vw`, a fresh
/// path complete to `{v, w}`. Base vertices keep their indices.
#[derive(Debug, Clone)]
pub struct DistensionGraph {
    pub graph: Graph,
    pub base: Graph,
    pub t: usize,
    /// Path vertices for each base edge `(v, w)`, `v < w`, in path order.
    pub edge_paths: BTreeMap<(usize, usize), Vec<usize>>,
}

/// The `t`-distension of `g`. New vertices are numbered from `|V(g)|`,
/// path by path in lexicographic edge order.
pub fn distension(g: &Graph, t: usize) -> Result<DistensionGraph, LowerBoundError> {
    if t == 0 {
        return Err(LowerBoundError::InvalidParameter(
            "distension paths need at least one vertex".into(),
        ));
    }
    let n = g.vertex_count();
    let total = n + t * g.edge_count();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut edge_paths = BTreeMap::new();
    let mut next = n;
    for (v, w) in g.edges() {
        let path: Vec<usize> = (next..next + t).collect();
        next += t;
        for (i, &u) in path.iter().enumerate() {
            edges.push((v, u));
            edges.push((w, u));
            if i + 1 < t {
                edges.push((u, u + 1));
            }
        }
        edge_paths.insert((v, w), path);
    }
    Ok(DistensionGraph {
        graph: Graph::simplified(total, edges),
        base: g.clone(),
        t,
        edge_paths,
    })
}

impl DistensionGraph {
    pub fn path(&self, v: usize, w: usize) -> Option<&[usize]> {
        self.edge_paths
            .get(&(v.min(w), v.max(w)))
            .map(Vec::as_slice)
    }

    /// `[v, w, u_1, ..., u_t]`: the vertices of the double-fan on base edge
    /// `vw`, centres first. Inducing on this list in this order gives
    /// exactly [`double_fan`]`(t + 2)`.
    pub fn double_fan_vertices(&self, v: usize, w: usize) -> Option<Vec<usize>> {
        let path = self.path(v, w)?;
        Some([v, w].into_iter().chain(path.iter().copied()).collect())
    }

    /// Checks every structural claim: base embedded on the first indices,
    /// one disjoint `t`-path per base edge, each complete to its edge, and
    /// nothing else.
    pub fn check(&self) -> Result<(), String> {
        let nb = self.base.vertex_count();
        let mb = self.base.edge_count();
        let t = self.t;
        if t == 0 {
            return Err("t must be positive".into());
        }
        if self.graph.vertex_count() != nb + t * mb {
            return Err(format!(
                "{} vertices, expected {} + {}*{}",
                self.graph.vertex_count(),
                nb,
                t,
                mb
            ));
        }
        if self.graph.edge_count() != mb + mb * (3 * t - 1) {
            return Err(format!(
                "{} edges, expected {}",
                self.graph.edge_count(),
                mb + mb * (3 * t - 1)
            ));
        }
        let base_edges: Vec<(usize, usize)> = self.base.edges().collect();
        let keys: Vec<(usize, usize)> = self.edge_paths.keys().copied().collect();
        if base_edges != keys {
            return Err("path keys differ from the base edges".into());
        }
        if self.base.edges().any(|(v, w)| !self.graph.has_edge(v, w)) {
            return Err("a base edge is missing".into());
        }
        let mut used = vec![false; self.graph.vertex_count()];
        for (&(v, w), path) in &self.edge_paths {
            if path.len() != t {
                return Err(format!("path of {v}-{w} has {} vertices", path.len()));
            }
            for (i, &u) in path.iter().enumerate() {
                if u < nb || u >= used.len() || std::mem::replace(&mut used[u], true) {
                    return Err(format!("path vertex {u} of {v}-{w} is reused or a base vertex"));
                }
                if !self.graph.has_edge(u, v) || !self.graph.has_edge(u, w) {
                    return Err(format!("path vertex {u} not complete to {v}-{w}"));
                }
                if i + 1 < t && !self.graph.has_edge(u, path[i + 1]) {
                    return Err(format!("path of {v}-{w} is broken at {u}"));
                }
            }
        }
        // the edge count then leaves no room for other edges
        Ok(())
    }
}

/// Size guard for [`counterexample_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetConfig {
    pub max_c: usize,
}

impl Default for GadgetConfig {
    fn default() -> Self {
        GadgetConfig { max_c: 2 }
    }
}

/// The planar graph for parameter `c`: a fan `F` on `t + 1` vertices
/// (`t = 8c² + 2c - 1`), its `t`-distension `J`, and the `t`-distension `G`
/// of `J`. Vertex indices are shared across the layers: `F` occupies the
/// first indices of `J`, and `J` the first indices of `G`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub c: usize,
    pub t: usize,
    pub fan: Graph,
    pub centre: usize,
    pub j: DistensionGraph,
    pub g: DistensionGraph,
}

pub fn path_length_for(c: usize) -> usize {
    8 * c * c + 2 * c - 1
}

/// Vertex count of the counterexample graph for `c`, without building it.
pub fn counterexample_order(c: usize) -> u128 {
    let t = path_length_for(c) as u128;
    let (nf, mf) = (t + 1, 2 * (t + 1) - 3);
    let (nj, mj) = (nf + t * mf, mf + mf * (3 * t - 1));
    nj + t * mj
}

pub fn counterexample_graph(
    c: usize,
    config: &GadgetConfig,
) -> Result<Counterexample, LowerBoundError> {
    if c == 0 {
        return Err(Precondition::ZeroC.into());
    }
    if c > config.max_c {
        return Err(LowerBoundError::SizeGuard {
            c,
            cap: config.max_c,
            vertices: counterexample_order(c),
        });
    }
    let t = path_length_for(c);
    let (fan, centre) = fan(t + 1)?;
    let j = distension(&fan, t)?;
    let g = distension(&j.graph, t)?;
    Ok(Counterexample {
        c,
        t,
        fan,
        centre,
        j,
        g,
    })
}

/// True iff `g / p` is a forest (and so is contained in a tree).
pub fn is_tree_partition(g: &Graph, p: &VertexPartition) -> bool {
    quotient_by_partition(g, p).is_ok_and(|(q, _)| is_forest(&q))
}

/// A 4-clique whose vertices lie in four distinct parts of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RainbowK4 {
    pub vertices: [usize; 4],
    pub q_parts: [usize; 4],
}

/// Independent check of a claimed rainbow 4-clique.
pub fn is_rainbow_k4(g: &Graph, q: &VertexPartition, k: &RainbowK4) -> bool {
    let vs = k.vertices;
    vs.iter().all(|&v| v < g.vertex_count())
        && q.vertex_count() == g.vertex_count()
        && (0..4).all(|i| (i + 1..4).all(|j| g.has_edge(vs[i], vs[j])))
        && (0..4).all(|i| q.part_of(vs[i]) == k.q_parts[i])
        && (0..4).all(|i| (i + 1..4).all(|j| k.q_parts[i] != k.q_parts[j]))
}

/// Exhaustive search over all 4-cliques `a < b < c < d`; returns the first
/// rainbow one.
pub fn rainbow_k4_oracle(g: &Graph, q: &VertexPartition) -> Option<RainbowK4> {
    if q.vertex_count() != g.vertex_count() {
        return None;
    }
    let part = |v: usize| q.part_of(v);
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            if part(a) == part(b) {
                continue;
            }
            let common: Vec<usize> = sorted_common(g.neighbors(a), g.neighbors(b))
                .into_iter()
                .filter(|&x| x > b && part(x) != part(a) && part(x) != part(b))
                .collect();
            for (i, &c) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if part(c) != part(d) && g.has_edge(c, d) {
                        return Some(RainbowK4 {
                            vertices: [a, b, c, d],
                            q_parts: [part(a), part(b), part(c), part(d)],
                        });
                    }
                }
            }
        }
    }
    None
}

fn sorted_common(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn check_sizes(g: &Graph, p: &VertexPartition, q: &VertexPartition) -> Result<(), Precondition> {
    for x in [p, q] {
        if x.vertex_count() != g.vertex_count() {
            return Err(Precondition::PartitionSize {
                expected: g.vertex_count(),
                got: x.vertex_count(),
            });
        }
    }
    Ok(())
}

/// Checks `|P ∩ Q| <= c` for every pair of parts; reports the
/// lexicographically first offending pair.
pub fn check_intersections(
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<(), Precondition> {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in 0..p.vertex_count().min(q.vertex_count()) {
        *counts.entry((p.part_of(v), q.part_of(v))).or_default() += 1;
    }
    match counts.into_iter().find(|&(_, size)| size > c) {
        Some(((p, q), size)) => Err(Precondition::IntersectionTooLarge { p, q, size, c }),
        None => Ok(()),
    }
}

fn check_pair(
    g: &Graph,
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<(), Precondition> {
    if c == 0 {
        return Err(Precondition::ZeroC);
    }
    check_sizes(g, p, q)?;
    if !is_tree_partition(g, p) {
        return Err(Precondition::NotTreePartition);
    }
    check_intersections(p, q, c)
}

/// Orders the vertices of `g - removed` along the path they form, starting
/// from the lower-indexed end. `None` if they do not form a path.
fn path_order(g: &Graph, removed: &[usize]) -> Option<Vec<usize>> {
    let (rest, back) = g.remove_vertices(removed);
    let k = rest.vertex_count();
    if k == 0 || rest.edge_count() + 1 != k || (0..k).any(|v| rest.degree(v) > 2) {
        return None;
    }
    let start = (0..k).find(|&v| rest.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = rest.neighbors(cur).iter().find(|&&x| x != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    (order.len() == k).then(|| order.into_iter().map(|v| back[v]).collect())
}

fn is_dominant(g: &Graph, v: usize) -> bool {
    g.degree(v) + 1 == g.vertex_count()
}

/// Maximal runs of consecutive path vertices not in `excluded`.
fn segments(path: &[usize], excluded: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut run = Vec::new();
    for &v in path {
        if excluded(v) {
            if !run.is_empty() {
                out.push(std::mem::take(&mut run));
            }
        } else {
            run.push(v);
        }
    }
    if !run.is_empty() {
        out.push(run);
    }
    out
}

/// The run with at least `min` vertices whose smallest vertex is lowest.
fn pick_segment(segs: Vec<Vec<usize>>, min: usize) -> Option<Vec<usize>> {
    segs.into_iter()
        .filter(|s| s.len() >= min)
        .min_by_key(|s| s.iter().copied().min())
}

/// The consecutive pair of `run` in different parts of `q`, choosing the
/// lexicographically smallest `(min, max)`.
fn crossing_edge(run: &[usize], q: &VertexPartition) -> Option<(usize, usize)> {
    run.windows(2)
        .filter(|w| q.part_of(w[0]) != q.part_of(w[1]))
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .min()
}

fn internal(msg: &str) -> LowerBoundError {
    LowerBoundError::Internal(msg.to_string())
}

/// Given a fan with centre `v1` on at least `c² + c + 1` vertices, a
/// tree-partition `P` and a partition `Q` with `|P ∩ Q| <= c`, returns a
/// non-centre vertex `v2` with `Q(v2) != Q(v1)`.
///
/// `P` is a star-partition centred at `P1`; some run of the path avoiding
/// `P1 ∩ Q1` has at least `c + 1` vertices, and either it meets `P1` (any
/// such vertex is outside `Q1`) or it lies inside one other part, which it
/// overfills for `Q1`.
pub fn fan_two_parts_witness(
    f: &Graph,
    centre: usize,
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<usize, LowerBoundError> {
    if centre >= f.vertex_count() || !is_dominant(f, centre) {
        return Err(Precondition::NotAFan(centre).into());
    }
    let path = path_order(f, &[centre]).ok_or(Precondition::NotAFan(centre))?;
    let need = c * c + c + 1;
    if f.vertex_count() < need {
        return Err(Precondition::TooSmall {
            need,
            got: f.vertex_count(),
        }
        .into());
    }
    check_pair(f, p, q, c)?;

    let p1 = p.part_of(centre);
    let q1 = q.part_of(centre);
    let (quotient, _) = quotient_by_partition(f, p).map_err(|e| internal(&e.to_string()))?;
    if quotient.edges().any(|(a, b)| a != p1 && b != p1) {
        return Err(internal("tree-partition of a fan is not a star centred at P1"));
    }
    let run = pick_segment(
        segments(&path, |v| p.part_of(v) == p1 && q.part_of(v) == q1),
        c + 1,
    )
    .ok_or_else(|| internal("no run of c + 1 vertices avoids P1 ∩ Q1"))?;
    if let Some(&v2) = run.iter().filter(|&&v| p.part_of(v) == p1).min() {
        return Ok(v2);
    }
    let p2 = p.part_of(run[0]);
    if run.iter().any(|&v| p.part_of(v) != p2) {
        return Err(internal("run outside P1 spans several parts"));
    }
    run.iter()
        .copied()
        .filter(|&v| q.part_of(v) != q1)
        .min()
        .ok_or_else(|| internal("run inside one part lies entirely in Q1"))
}

/// Given a double-fan with centres `(v1, v2)` on at least `8c² + 2c + 1`
/// vertices, a tree-partition `P` and partition `Q` with `|P ∩ Q| <= c`,
/// `P1 != P2` and `Q1 != Q2`, returns a 4-clique `{v1, v2, v3, v4}` with
/// four distinct `Q` parts.
///
/// Every vertex lies in `P1 ∪ P2`, so `Q` parts have at most `2c` vertices;
/// the path minus `Q1 ∪ Q2` then has a run of `2c + 1` vertices, which must
/// contain an edge crossing between `Q` parts.
pub fn double_fan_rainbow_k4(
    f: &Graph,
    centres: (usize, usize),
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<RainbowK4, LowerBoundError> {
    let (v1, v2) = centres;
    let not_double_fan = Precondition::NotADoubleFan(v1, v2);
    if v1 == v2
        || v1.max(v2) >= f.vertex_count()
        || !is_dominant(f, v1)
        || !is_dominant(f, v2)
    {
        return Err(not_double_fan.into());
    }
    let path = path_order(f, &[v1, v2]).ok_or(not_double_fan)?;
    let need = 8 * c * c + 2 * c + 1;
    if f.vertex_count() < need {
        return Err(Precondition::TooSmall {
            need,
            got: f.vertex_count(),
        }
        .into());
    }
    check_pair(f, p, q, c)?;
    let (p1, p2) = (p.part_of(v1), p.part_of(v2));
    let (q1, q2) = (q.part_of(v1), q.part_of(v2));
    if p1 == p2 {
        return Err(Precondition::CentresShareP.into());
    }
    if q1 == q2 {
        return Err(Precondition::CentresShareQ.into());
    }

    if path.iter().any(|&v| p.part_of(v) != p1 && p.part_of(v) != p2) {
        return Err(internal("tree-partition of a double-fan uses a third part"));
    }
    let run = pick_segment(
        segments(&path, |v| q.part_of(v) == q1 || q.part_of(v) == q2),
        2 * c + 1,
    )
    .ok_or_else(|| internal("no run of 2c + 1 vertices avoids Q1 ∪ Q2"))?;
    let (v3, v4) = crossing_edge(&run, q)
        .ok_or_else(|| internal("run of 2c + 1 vertices lies in a single Q part"))?;
    Ok(RainbowK4 {
        vertices: [v1, v2, v3, v4],
        q_parts: [q1, q2, q.part_of(v3), q.part_of(v4)],
    })
}

/// Which case of the counterexample argument produced the clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    /// `P1 != P2`: the double-fan of `J` on `v1 v2`.
    CentresSplit,
    /// Some `v'` on the path of `v1 v2` leaves `P1`: a double-fan of `G`.
    SecondLevel,
    /// The whole path lies in `P1`: a crossing edge of the path itself.
    SinglePart,
}

/// Runs a finder on the subgraph induced by `vertices` (whose first two
/// entries are the centres) and maps the clique back to `g`'s indices and
/// `q`'s part numbers.
fn rainbow_in_double_fan(
    g: &Graph,
    vertices: &[usize],
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<RainbowK4, LowerBoundError> {
    let (sub, back) = g.induced_subgraph(vertices);
    let (sp, _) = p.restrict(vertices);
    let (sq, q_origin) = q.restrict(vertices);
    let local = double_fan_rainbow_k4(&sub, (0, 1), &sp, &sq, c).map_err(|e| match e {
        LowerBoundError::Precondition(pre) => {
            LowerBoundError::Internal(format!("induced double-fan instance: {pre}"))
        }
        other => other,
    })?;
    Ok(RainbowK4 {
        vertices: local.vertices.map(|v| back[v]),
        q_parts: local.q_parts.map(|x| q_origin[x]),
    })
}

/// Finds a rainbow 4-clique in the counterexample graph for any
/// tree-partition `P` and partition `Q` of it with `|P ∩ Q| <= c`.
pub fn find_rainbow_k4(
    cx: &Counterexample,
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<RainbowK4, LowerBoundError> {
    find_rainbow_k4_with_stage(cx, p, q, c).map(|(k, _)| k)
}

pub fn find_rainbow_k4_with_stage(
    cx: &Counterexample,
    p: &VertexPartition,
    q: &VertexPartition,
    c: usize,
) -> Result<(RainbowK4, Stage), LowerBoundError> {
    let g = &cx.g.graph;
    if c == 0 {
        return Err(Precondition::ZeroC.into());
    }
    if path_length_for(c) > cx.t {
        return Err(Precondition::TooSmall {
            need: path_length_for(c) + 2,
            got: cx.t + 2,
        }
        .into());
    }
    check_pair(g, p, q, c)?;

    // the fan occupies the first indices of G
    let fan_vertices: Vec<usize> = (0..cx.fan.vertex_count()).collect();
    let (fp, _) = p.restrict(&fan_vertices);
    let (fq, _) = q.restrict(&fan_vertices);
    let v1 = cx.centre;
    let v2 = fan_two_parts_witness(&cx.fan, v1, &fp, &fq, c).map_err(|e| match e {
        LowerBoundError::Precondition(pre) => {
            LowerBoundError::Internal(format!("induced fan instance: {pre}"))
        }
        other => other,
    })?;
    let (p1, p2) = (p.part_of(v1), p.part_of(v2));
    let (q1, q2) = (q.part_of(v1), q.part_of(v2));
    if q1 == q2 {
        return Err(internal("fan witness shares Q1"));
    }

    let j_fan = cx
        .j
        .double_fan_vertices(v1, v2)
        .ok_or_else(|| internal("fan witness is not adjacent to the centre"))?;
    if p1 != p2 {
        let k = rainbow_in_double_fan(&cx.j.graph, &j_fan, p, q, c)?;
        return Ok((k, Stage::CentresSplit));
    }

    let path_c = &j_fan[2..];
    for &v in path_c {
        if p.part_of(v) == p1 {
            continue;
        }
        let qv = q.part_of(v);
        let vi = if qv != q1 { v1 } else { v2 };
        let vertices = cx
            .g
            .double_fan_vertices(vi, v)
            .ok_or_else(|| internal("path vertex is not adjacent to a centre in J"))?;
        // centres in the order (v_i, v')
        let ordered: Vec<usize> = [vi, v]
            .into_iter()
            .chain(vertices[2..].iter().copied())
            .collect();
        let k = rainbow_in_double_fan(g, &ordered, p, q, c)?;
        return Ok((k, Stage::SecondLevel));
    }

    let run = pick_segment(
        segments(path_c, |v| q.part_of(v) == q1 || q.part_of(v) == q2),
        c + 1,
    )
    .ok_or_else(|| internal("no run of c + 1 vertices avoids Q1 ∪ Q2"))?;
    let (v3, v4) = crossing_edge(&run, q)
        .ok_or_else(|| internal("run inside P1 lies in a single Q part"))?;
    Ok((
        RainbowK4 {
            vertices: [v1, v2, v3, v4],
            q_parts: [q1, q2, q.part_of(v3), q.part_of(v4)],
        },
        Stage::SinglePart,
    ))
}

/// BFS layering from `root`: the parts of layer `i` are the components of
/// `G[layers >= i]` restricted to layer `i`. Unreached vertices are layered
/// from the lowest unreached vertex. The quotient is always a forest.
pub fn layered_tree_partition(g: &Graph, root: usize) -> VertexPartition {
    layered_tree_partition_grouped(g, root, &|_| false)
}

/// As [`layered_tree_partition`], but consecutive layers `i - 1` and `i`
/// are treated as one whenever `merge(i)` holds.
pub fn layered_tree_partition_grouped(
    g: &Graph,
    root: usize,
    merge: &dyn Fn(usize) -> bool,
) -> VertexPartition {
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut offset = 0;
    let starts = std::iter::once(root).chain(0..n);
    for s in starts {
        if s >= n || depth[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        depth[s] = offset;
        let mut deepest = offset;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    deepest = deepest.max(depth[y]);
                    queue.push_back(y);
                }
            }
        }
        // separate components by a gap so they never share a group
        offset = deepest + 2;
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let mut group = vec![0; max_depth + 1];
    for i in 1..=max_depth {
        group[i] = if merge(i) { group[i - 1] } else { group[i - 1] + 1 };
    }
    let level: Vec<usize> = depth.iter().map(|&d| group[d]).collect();
    // components of G[level >= l] restricted to level l, deepest level
    // first, with a union-find over the vertices added so far
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(level[v]), v));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut labels = vec![0; n];
    for chunk in order.chunk_by(|&a, &b| level[a] == level[b]) {
        for &v in chunk {
            for &w in g.neighbors(v) {
                if level[w] >= level[v] {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        for &v in chunk {
            labels[v] = level[v] * n + find(&mut parent, v);
        }
    }
    VertexPartition::from_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, is_planar};

    #[test]
    fn fan_and_double_fan_shapes() {
        assert_eq!(fan(2).unwrap().0, complete_graph(2).unwrap());
        assert_eq!(fan(4).unwrap().0.edge_count(), 5);
        assert_eq!(fan(10).unwrap().0.edge_count(), 17);
        assert!(fan(1).is_err());
        assert_eq!(double_fan(3).unwrap().0, complete_graph(3).unwrap());
        assert_eq!(double_fan(4).unwrap().0, complete_graph(4).unwrap());
        let (df, _) = double_fan(11).unwrap();
        assert_eq!(df.edge_count(), 27);
        assert!(is_planar(&df));
        assert!(double_fan(2).is_err());
    }

    #[test]
    fn distension_of_an_edge_is_a_triangle() {
        let d = distension(&Graph::path(2), 1).unwrap();
        assert_eq!(d.graph, complete_graph(3).unwrap());
        assert_eq!(d.check(), Ok(()));
        assert!(distension(&Graph::path(2), 0).is_err());
    }

    #[test]
    fn double_fan_vertices_induce_a_double_fan() {
        let (f, _) = fan(6).unwrap();
        let d = distension(&f, 4).unwrap();
        let vs = d.double_fan_vertices(0, 3).unwrap();
        assert_eq!(d.graph.induced_subgraph(&vs).0, double_fan(6).unwrap().0);
    }

    #[test]
    fn counterexample_bookkeeping_for_c1() {
        let cx = counterexample_graph(1, &GadgetConfig::default()).unwrap();
        assert_eq!(cx.t, 9);
        assert_eq!(cx.fan.vertex_count(), 10);
        assert_eq!(cx.j.graph.vertex_count(), 163);
        assert_eq!(cx.j.graph.edge_count(), 459);
        assert_eq!(cx.g.graph.vertex_count(), 4294);
        assert_eq!(counterexample_order(1), 4294);
        assert_eq!(cx.j.check(), Ok(()));
        assert_eq!(cx.g.check(), Ok(()));
        assert!(matches!(
            counterexample_graph(3, &GadgetConfig::default()),
            Err(LowerBoundError::SizeGuard { c: 3, cap: 2, .. })
        ));
    }

    #[test]
    fn tree_partition_basics() {
        assert!(is_tree_partition(&Graph::path(4), &VertexPartition::singletons(4)));
        assert!(!is_tree_partition(&Graph::cycle(3), &VertexPartition::singletons(3)));
        let halves = VertexPartition::new(5, vec![vec![0, 2], vec![1, 3, 4]]).unwrap();
        assert!(is_tree_partition(&complete_graph(5).unwrap(), &halves));
    }

    #[test]
    fn layered_partitions_are_tree_partitions() {
        let cx = counterexample_graph(1, &GadgetConfig::default()).unwrap();
        for root in [0, 1, 5, 200, 4000] {
            let p = layered_tree_partition(&cx.g.graph, root);
            assert!(is_tree_partition(&cx.g.graph, &p));
        }
        let p = layered_tree_partition_grouped(&cx.g.graph, 7, &|i| i % 2 == 0);
        assert!(is_tree_partition(&cx.g.graph, &p));
    }

    #[test]
    fn fan_witness_with_singleton_q() {
        let (f, centre) = fan(7).unwrap();
        let p = layered_tree_partition(&f, centre);
        let q = VertexPartition::singletons(7);
        let v2 = fan_two_parts_witness(&f, centre, &p, &q, 2).unwrap();
        assert!(f.has_edge(centre, v2));
    }

    #[test]
    fn double_fan_preconditions() {
        let (f, centres) = double_fan(11).unwrap();
        let q = VertexPartition::singletons(11);
        let same = VertexPartition::whole(11);
        assert_eq!(
            double_fan_rainbow_k4(&f, centres, &same, &q, 1),
            Err(Precondition::CentresShareP.into())
        );
        // P = odd path positions with v1, the rest with v2
        let labels: Vec<usize> = (0..11).map(|v| if v == 0 || (v >= 2 && v % 2 == 1) { 0 } else { 1 }).collect();
        let p = VertexPartition::from_labels(&labels);
        let k = double_fan_rainbow_k4(&f, centres, &p, &q, 1).unwrap();
        assert!(is_rainbow_k4(&f, &q, &k));
        assert_eq!(k.vertices, [0, 1, 2, 3]);
        let (small, c2) = double_fan(10).unwrap();
        let p10 = VertexPartition::from_labels(&labels[..10]);
        assert!(matches!(
            double_fan_rainbow_k4(&small, c2, &p10, &VertexPartition::singletons(10), 1),
            Err(LowerBoundError::Precondition(Precondition::TooSmall { need: 11, got: 10 }))
        ));
    }

    #[test]
    fn oracle_on_small_cases() {
        let k4 = complete_graph(4).unwrap();
        let k = rainbow_k4_oracle(&k4, &VertexPartition::singletons(4)).unwrap();
        assert!(is_rainbow_k4(&k4, &VertexPartition::singletons(4), &k));
        assert!(rainbow_k4_oracle(&k4, &VertexPartition::whole(4)).is_none());
        let bip = Graph::complete_bipartite(4, 4);
        assert!(rainbow_k4_oracle(&bip, &VertexPartition::singletons(8)).is_none());
    }

    #[test]
    fn finder_on_natural_layering() {
        let cx = counterexample_graph(1, &GadgetConfig::default()).unwrap();
        let g = &cx.g.graph;
        let p = layered_tree_partition(g, cx.centre);
        let q = VertexPartition::singletons(g.vertex_count());
        let (k, stage) = find_rainbow_k4_with_stage(&cx, &p, &q, 1).unwrap();
        assert!(is_rainbow_k4(g, &q, &k));
        assert_eq!(stage, Stage::CentresSplit);
        assert!(rainbow_k4_oracle(g, &q).is_some());
    }

    #[test]
    fn intersection_check_reports_first_pair() {
        let p = VertexPartition::whole(4);
        let q = VertexPartition::from_labels(&[0, 1, 1, 0]);
        assert_eq!(
            check_intersections(&p, &q, 1),
            Err(Precondition::IntersectionTooLarge { p: 0, q: 0, size: 2, c: 1 })
        );
        assert_eq!(check_intersections(&p, &q, 2), Ok(()));
    }
}
