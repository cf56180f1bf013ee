//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Tolerances are exact unless a bound is
//! stated in the criterion line.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{catalogue, cycles_are_triangles, is_four_clique, set_partitions, some_ordering_below};
use prodstruct::decomposition::{
    distension_path_decomposition, distension_tree_decomposition, exact_pathwidth,
    exact_treewidth, is_apex_forest, is_triangle_forest, ExactConfig, PathDecomposition,
    TreeDecomposition,
};
use prodstruct::embedding::{
    apex_product_structure, embedding_to_partitions, k_apex_product_structure,
    partitions_to_embedding, ProductEmbedding,
};
use prodstruct::generators::{random_triangle_forest, random_two_apex_graph};
use prodstruct::graph::catalogue::connected_planar_graphs;
use prodstruct::graph::{complete_graph, is_forest, is_planar};
use prodstruct::lowerbound::sampling::{
    random_capped_partition, random_double_fan_pair, random_star_partition, random_tree_partition,
};
use prodstruct::lowerbound::{
    counterexample_graph, distension, double_fan, double_fan_rainbow_k4, fan,
    fan_two_parts_witness, find_rainbow_k4, rainbow_k4_oracle, GadgetConfig,
};
use prodstruct::partition::{contractible_matching, two_triangle_forest_partition};
use prodstruct::{Graph, VertexPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- independent oracles -------------------------------------------------

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn acyclic(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Edges between distinct labels, deduplicated.
fn label_edges(g: &Graph, labels: &[usize]) -> BTreeSet<(usize, usize)> {
    g.edges()
        .map(|(u, v)| (labels[u], labels[v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect()
}

fn is_tree_partition_oracle(g: &Graph, labels: &[usize]) -> bool {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    acyclic(k, label_edges(g, labels))
}

fn labels_of(p: &VertexPartition, n: usize) -> Vec<usize> {
    (0..n).map(|v| p.part_of(v)).collect()
}

fn max_intersection(p: &[usize], q: &[usize]) -> usize {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&a, &b) in p.iter().zip(q) {
        *counts.entry((a, b)).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

fn rainbow(g: &Graph, q: &VertexPartition, vs: [usize; 4]) -> bool {
    let parts: BTreeSet<usize> = vs.iter().map(|&v| q.part_of(v)).collect();
    is_four_clique(g, vs) && parts.len() == 4
}

/// Coordinates distinct, in range, and every edge (plus augmented pair)
/// maps to equal-or-adjacent coordinates in both hosts.
fn embedding_oracle(e: &ProductEmbedding) -> Result<(), String> {
    let n = e.source.vertex_count();
    ensure(e.map.len() == n && e.c > 0, || "bad shape".into())?;
    let mut seen = BTreeSet::new();
    for (v, p) in e.map.iter().enumerate() {
        ensure(
            p.x < e.host1.vertex_count()
                && p.y < e.host2.vertex_count()
                && (1..=e.c).contains(&p.layer),
            || format!("vertex {v} out of range"),
        )?;
        ensure(seen.insert((p.x, p.y, p.layer)), || format!("vertex {v} collides"))?;
    }
    let near = |h: &Graph, a: usize, b: usize| a == b || h.has_edge(a, b);
    for (u, v) in e.source.edges().chain(e.augmented_edges.iter().copied()) {
        let (a, b) = (e.map[u], e.map[v]);
        ensure(near(&e.host1, a.x, b.x) && near(&e.host2, a.y, b.y), || {
            format!("edge {u}-{v} not preserved")
        })?;
    }
    Ok(())
}

fn apex_forest_oracle(h: &Graph) -> bool {
    is_forest(h) || (0..h.vertex_count()).any(|a| is_forest(&h.remove_vertices(&[a]).0))
}

fn fibre_intersection(e: &ProductEmbedding) -> usize {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &e.map {
        *counts.entry((p.x, p.y)).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// Checks an embedding with c = `c` and hosts that are apex-forests of
/// treewidth at most 2, the latter both by the library's exact search and
/// by ordering search.
fn check_embedding(g: &Graph, e: &ProductEmbedding, c: usize) -> Result<(), String> {
    ensure(&e.source == g, || "source differs".into())?;
    ensure(e.c == c, || format!("c = {}, expected {c}", e.c))?;
    embedding_oracle(e).map_err(|m| format!("{g:?}: {m}"))?;
    for h in [&e.host1, &e.host2] {
        ensure(apex_forest_oracle(h), || format!("{g:?}: host {h:?} not an apex-forest"))?;
        ensure(is_apex_forest(h).is_some(), || format!("{g:?}: library rejects host"))?;
        let tw = exact_treewidth(h, &ExactConfig { vertex_cap: 20 })
            .map_err(|e| e.to_string())?
            .width;
        ensure(tw <= 2 && some_ordering_below(h, 3), || {
            format!("{g:?}: host treewidth {tw}")
        })?;
    }
    Ok(())
}

/// Independent check of a tree decomposition; returns its width.
fn tree_decomposition_oracle(g: &Graph, td: &TreeDecomposition) -> Result<usize, String> {
    let tree = td.tree();
    let k = tree.vertex_count();
    let bags = td.bags();
    ensure(k > 0 && bags.len() == k, || "index/bag count".into())?;
    ensure(tree.edge_count() + 1 == k && acyclic(k, tree.edges()), || {
        "index is not a tree".into()
    })?;
    decomposition_traces(g, bags, |trace| {
        let start = trace[0];
        let inside: BTreeSet<usize> = trace.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (a, b) in tree.edges() {
                let y = if a == x { b } else if b == x { a } else { continue };
                if inside.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == inside.len()
    })
}

fn path_decomposition_oracle(g: &Graph, pd: &PathDecomposition) -> Result<usize, String> {
    decomposition_traces(g, pd.bags(), |trace| {
        trace.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

fn decomposition_traces(
    g: &Graph,
    bags: &[Vec<usize>],
    connected: impl Fn(&[usize]) -> bool,
) -> Result<usize, String> {
    let mut traces = vec![Vec::new(); g.vertex_count()];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            ensure(v < traces.len(), || format!("bag {i} names {v}"))?;
            traces[v].push(i);
        }
    }
    for (v, t) in traces.iter().enumerate() {
        ensure(!t.is_empty() && connected(t), || format!("trace of {v}"))?;
    }
    for (u, v) in g.edges() {
        ensure(bags.iter().any(|b| b.contains(&u) && b.contains(&v)), || {
            format!("edge {u}-{v} uncovered")
        })?;
    }
    Ok(bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1))
}

/// Matching of `g` whose contraction is acyclic, checked by union-find.
fn contracts_to_forest(g: &Graph, pairs: &[(usize, usize)]) -> Result<(), String> {
    let n = g.vertex_count();
    let mut rep: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    for &(u, v) in pairs {
        ensure(g.has_edge(u, v), || format!("{u}-{v} is not an edge"))?;
        ensure(!used[u] && !used[v], || format!("{u}-{v} reuses a vertex"))?;
        used[u] = true;
        used[v] = true;
        rep[u.max(v)] = u.min(v);
    }
    ensure(acyclic(n, label_edges(g, &rep)), || "contraction has a cycle".into())
}

// ---- criteria -------------------------------------------------------------

fn pipeline_on_connected_planar_graphs() -> Result<String, String> {
    let graphs = connected_planar_graphs(8);
    let expected: usize = [1, 1, 2, 6, 20, 99, 646, 5974].iter().sum();
    ensure(graphs.len() == expected, || format!("{} graphs, expected {expected}", graphs.len()))?;
    for g in &graphs {
        ensure(is_planar(g), || format!("{g:?} not planar"))?;
        let e = apex_product_structure(g).map_err(|e| format!("{g:?}: {e}"))?;
        check_embedding(g, &e, 2)?;
    }
    Ok(format!("{} graphs, hosts apex-forests with tw <= 2", graphs.len()))
}

fn complete_and_two_apex_graphs() -> Result<String, String> {
    for n in [5, 6] {
        let g = complete_graph(n).unwrap();
        let e = apex_product_structure(&g).map_err(|e| e.to_string())?;
        check_embedding(&g, &e, 2)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA9E);
    for i in 0..50 {
        let g = random_two_apex_graph(1 + i % 12, &mut rng);
        let e = apex_product_structure(&g).map_err(|e| format!("{g:?}: {e}"))?;
        check_embedding(&g, &e, 2)?;
    }
    let k7 = complete_graph(7).unwrap();
    ensure(apex_product_structure(&k7).is_err(), || "K7 accepted as 2-apex".into())?;
    let e = k_apex_product_structure(&k7, 3).map_err(|e| e.to_string())?;
    check_embedding(&k7, &e, 3)?;
    Ok("K5, K6, 50 random 2-apex with K2 fibre; K7 (k=3) with K3 fibre".into())
}

fn matchings_on_random_triangle_forests() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7F);
    for i in 0..1000 {
        let g = random_triangle_forest(1 + i % 40, &mut rng);
        ensure(cycles_are_triangles(&g), || format!("generator produced {g:?}"))?;
        let m = contractible_matching(&g).map_err(|e| e.to_string())?;
        contracts_to_forest(&g, m.edges()).map_err(|e| format!("{g:?}: {e}"))?;
    }
    Ok("1000 triangle-forests, quotient acyclic".into())
}

fn triangle_forest_partitions() -> Result<String, String> {
    let mut count = 0;
    for g in catalogue(8).into_iter().filter(|g| is_planar(g)) {
        let p = two_triangle_forest_partition(g).map_err(|e| format!("{g:?}: {e}"))?;
        ensure(p.len() <= 2 && p.vertex_count() == g.vertex_count(), || {
            format!("{g:?}: {} parts", p.len())
        })?;
        for part in p.parts() {
            let side = g.induced_subgraph(part).0;
            ensure(is_triangle_forest(&side) && cycles_are_triangles(&side), || {
                format!("{g:?}: side {part:?}")
            })?;
        }
        count += 1;
    }
    ensure(count == 1 + 2 + 4 + 11 + 33 + 142 + 822 + 6966, || format!("{count} planar graphs"))?;
    Ok(format!("{count} planar graphs, both sides triangle-forests"))
}

fn round_trip_through_partitions() -> Result<String, String> {
    let graphs = catalogue(6);
    for g in &graphs {
        let e = apex_product_structure(g).map_err(|e| format!("{g:?}: {e}"))?;
        embedding_oracle(&e)?;
        let width = fibre_intersection(&e);
        ensure(width <= 2, || format!("{g:?}: |A1 ∩ A2| = {width}"))?;
        let f = embedding_to_partitions(&e).map_err(|e| e.to_string())?;
        let back =
            partitions_to_embedding(g, &f.p1, &f.p2, e.c, &e.host1, &e.host2, &f.m1, &f.m2)
                .map_err(|e| format!("{g:?}: {e}"))?;
        embedding_oracle(&back).map_err(|m| format!("{g:?}: {m}"))?;
        ensure(fibre_intersection(&back) <= 2, || format!("{g:?}: round trip widened"))?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn fan_exhaustive(n: usize, c: usize) -> Result<usize, String> {
    let (f, centre) = fan(n).map_err(|e| e.to_string())?;
    let all = set_partitions(n);
    let mut pairs = 0;
    for pl in all.iter().filter(|l| is_tree_partition_oracle(&f, l)) {
        let p = VertexPartition::from_labels(pl);
        for ql in all.iter().filter(|ql| max_intersection(pl, ql) <= c) {
            let q = VertexPartition::from_labels(ql);
            let v = fan_two_parts_witness(&f, centre, &p, &q, c)
                .map_err(|e| format!("{pl:?} {ql:?}: {e}"))?;
            ensure(v != centre && ql[v] != ql[centre], || {
                format!("{pl:?} {ql:?}: bad witness {v}")
            })?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn fan_witness() -> Result<String, String> {
    let a = fan_exhaustive(3, 1)?;
    let b = fan_exhaustive(7, 2)?;
    Ok(format!("fan(3) c=1: {a} pairs; fan(7) c=2: {b} pairs"))
}

fn double_fan_samples() -> Result<String, String> {
    let c = 1;
    let (f, centres) = double_fan(11).map_err(|e| e.to_string())?;
    let n = f.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(0xDF);
    for i in 0..10_000 {
        let (p, q) = random_double_fan_pair(&f, centres, c, &mut rng);
        let (pl, ql) = (labels_of(&p, n), labels_of(&q, n));
        ensure(is_tree_partition_oracle(&f, &pl) && max_intersection(&pl, &ql) <= c, || {
            format!("sample {i} violates the hypotheses")
        })?;
        let k = double_fan_rainbow_k4(&f, centres, &p, &q, c).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(rainbow(&f, &q, k.vertices), || format!("sample {i}: {:?}", k.vertices))?;
        let o = rainbow_k4_oracle(&f, &q).ok_or_else(|| format!("sample {i}: oracle finds none"))?;
        ensure(rainbow(&f, &q, o.vertices), || format!("sample {i}: oracle output"))?;
    }
    Ok("10000 pairs on double_fan(11)".into())
}

fn counterexample_samples() -> Result<String, String> {
    let cx = counterexample_graph(1, &GadgetConfig::default()).map_err(|e| e.to_string())?;
    let g = &cx.g.graph;
    let n = g.vertex_count();
    ensure(n == 4294, || format!("{n} vertices"))?;
    ensure(g.edge_count() <= 3 * n - 6 && is_planar(g), || "not planar".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0);
    for i in 0..1000 {
        let p = if i % 2 == 0 {
            random_tree_partition(g, &mut rng)
        } else {
            random_star_partition(g, &mut rng)
        };
        let q = random_capped_partition(g, &p, 1, &mut rng);
        let (pl, ql) = (labels_of(&p, n), labels_of(&q, n));
        ensure(is_tree_partition_oracle(g, &pl) && max_intersection(&pl, &ql) <= 1, || {
            format!("sample {i} violates the hypotheses")
        })?;
        let k = find_rainbow_k4(&cx, &p, &q, 1).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(rainbow(g, &q, k.vertices), || format!("sample {i}: {:?}", k.vertices))?;
        let o = rainbow_k4_oracle(g, &q).ok_or_else(|| format!("sample {i}: oracle finds none"))?;
        ensure(rainbow(g, &q, o.vertices), || format!("sample {i}: oracle output"))?;
    }
    Ok("4294 vertices, planar, 1000 pairs".into())
}

fn random_small_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=8);
    let density: f64 = rng.gen_range(0.2..0.9);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn distension_widths() -> Result<String, String> {
    let cfg = ExactConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD5);
    for i in 0..200 {
        let g = random_small_graph(&mut rng);
        let t = rng.gen_range(1..=3);
        let tw = exact_treewidth(&g, &cfg).map_err(|e| e.to_string())?;
        let pw = exact_pathwidth(&g, &cfg).map_err(|e| e.to_string())?;
        ensure(tree_decomposition_oracle(&g, &tw.decomposition)? == tw.width, || {
            format!("pair {i}: treewidth decomposition")
        })?;
        ensure(tw.width == 0 || !some_ordering_below(&g, tw.width), || {
            format!("pair {i}: treewidth not optimal")
        })?;
        ensure(path_decomposition_oracle(&g, &pw.decomposition)? == pw.width, || {
            format!("pair {i}: pathwidth decomposition")
        })?;
        let d = distension(&g, t).map_err(|e| e.to_string())?;
        let td = distension_tree_decomposition(&g, &tw.decomposition, &d).map_err(|e| e.to_string())?;
        let width = tree_decomposition_oracle(&d.graph, &td)?;
        ensure(width <= tw.width.max(3), || format!("pair {i} (t={t}): tree width {width}"))?;
        let pd = distension_path_decomposition(&g, &pw.decomposition, &d).map_err(|e| e.to_string())?;
        let width = path_decomposition_oracle(&d.graph, &pd)?;
        ensure(width <= pw.width + 2, || format!("pair {i} (t={t}): path width {width}"))?;
    }

    let cx = counterexample_graph(1, &GadgetConfig::default()).map_err(|e| e.to_string())?;
    let fan_tw = exact_treewidth(&cx.fan, &cfg).map_err(|e| e.to_string())?;
    let fan_pw = exact_pathwidth(&cx.fan, &cfg).map_err(|e| e.to_string())?;
    ensure(fan_pw.width == 2, || format!("fan pathwidth {}", fan_pw.width))?;
    let td = distension_tree_decomposition(&cx.fan, &fan_tw.decomposition, &cx.j).map_err(|e| e.to_string())?;
    let td = distension_tree_decomposition(&cx.j.graph, &td, &cx.g).map_err(|e| e.to_string())?;
    let tree = tree_decomposition_oracle(&cx.g.graph, &td)?;
    let pd = distension_path_decomposition(&cx.fan, &fan_pw.decomposition, &cx.j).map_err(|e| e.to_string())?;
    let pd = distension_path_decomposition(&cx.j.graph, &pd, &cx.g).map_err(|e| e.to_string())?;
    let path = path_decomposition_oracle(&cx.g.graph, &pd)?;
    ensure(tree <= 3 && path <= 6, || format!("counterexample widths tw {tree}, pw {path}"))?;
    Ok(format!("200 pairs; counterexample(1) tree width {tree} <= 3, path width {path} <= 6"))
}

// ---- CLI determinism --------------------------------------------------------

/// Runs the binary in `dir`; returns the report with timing removed.
fn run_cli(dir: &Path, args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_prodstruct"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let mut report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: stdout: {e}"))?;
    ensure(report["exit_code"] == out.status.code().unwrap_or(-1), || {
        format!("{args:?}: exit code disagrees with report")
    })?;
    ensure(report["outcome"] == "ok", || format!("{args:?}: {}", report["detail"]))?;
    report.as_object_mut().unwrap().remove("timing_ms");
    Ok(report)
}

fn cli_artifacts_are_deterministic() -> Result<String, String> {
    let commands: &[&[&str]] = &[
        &["gadget", "fan", "10", "--out", "fan.txt", "--sidecar", "fan.json"],
        &["gadget", "double-fan", "11", "--out", "df.txt", "--sidecar", "df.json"],
        &["gadget", "distension", "fan.txt", "--t", "2", "--out", "dist.txt", "--sidecar", "dist.json"],
        &["gadget", "counterexample", "1", "--out", "cx.txt", "--sidecar", "cx.json"],
        &["embed", "graphs/k6.txt", "--out", "emb.json"],
        &["verify", "emb.json", "graphs/k6.txt"],
        &["embed", "graphs/k7.txt", "--k", "3", "--out", "emb3.json"],
        &["tw", "df.txt", "--path", "--out", "tw.json"],
        &["partition", "df.txt", "--out", "part.json"],
        &["rainbow", "--c", "1", "--layered-p", "--singleton-q", "--out", "rb.json"],
        &["corpus", "graphs", "--out", "corpus.json"],
    ];
    let artifacts = [
        "fan.txt", "fan.json", "df.txt", "df.json", "dist.txt", "dist.json", "cx.txt", "cx.json",
        "emb.json", "emb3.json", "tw.json", "part.json", "rb.json", "corpus.json",
    ];
    let mut runs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let graphs = dir.path().join("graphs");
        std::fs::create_dir(&graphs).map_err(|e| e.to_string())?;
        for n in [6, 7] {
            let text = prodstruct::graph::format_edge_list(&complete_graph(n).unwrap());
            std::fs::write(graphs.join(format!("k{n}.txt")), text).map_err(|e| e.to_string())?;
        }
        let mut reports = Vec::new();
        for args in commands {
            reports.push(run_cli(dir.path(), args)?);
        }
        let mut bytes = Vec::new();
        for a in artifacts {
            bytes.push(std::fs::read(dir.path().join(a)).map_err(|e| format!("{a}: {e}"))?);
        }
        runs.push((reports, bytes));
    }
    for (i, args) in commands.iter().enumerate() {
        ensure(runs[0].0[i] == runs[1].0[i], || format!("{args:?}: reports differ"))?;
    }
    for (i, a) in artifacts.iter().enumerate() {
        ensure(runs[0].1[i] == runs[1].1[i], || format!("{a} differs between runs"))?;
    }
    Ok(format!("{} commands, {} artifacts byte-identical", commands.len(), artifacts.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("pipeline embeds all connected planar graphs <= 8 vertices", pipeline_on_connected_planar_graphs),
        ("K5, K6, random 2-apex (K2 fibre) and K7 with k=3 (K3 fibre)", complete_and_two_apex_graphs),
        ("contractible matching on 1000 random triangle-forests", matchings_on_random_triangle_forests),
        ("two triangle-forest partition of all planar graphs <= 8", triangle_forest_partitions),
        ("embedding/partition round trip on all graphs <= 6, |A1 ∩ A2| <= 2", round_trip_through_partitions),
        ("fan witness exhaustive: fan(3) c=1, fan(7) c=2", fan_witness),
        ("double_fan(11) c=1 rainbow K4 on 10^4 samples", double_fan_samples),
        ("counterexample(1): 4294 vertices, planar, 10^3 rainbow K4 samples", counterexample_samples),
        ("distension widths: tw <= max(tw,3), pw <= pw+2; counterexample(1) tw <= 3, pw <= 6", distension_widths),
        ("CLI artifacts byte-identical across reruns", cli_artifacts_are_deterministic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
