//! Left-right planarity test (de Fraysseix–Rosenstiehl criterion in the
//! formulation of Brandes, "The Left-Right Planarity Test").
//!
//! Only the decision is computed; no embedding is produced. Both DFS phases
//! run on explicit stacks so that long paths do not exhaust the call stack.

use super::Graph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    g: &'g Graph,
    // edge id of adjacency slot (v, i)
    slot_edge: Vec<Vec<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    reference: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    conflicts: Vec<ConflictPair>,
}

impl<'g> LrState<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut slot_edge: Vec<Vec<usize>> = (0..n).map(|v| vec![NONE; g.degree(v)]).collect();
        for (id, (u, v)) in g.edges().enumerate() {
            let iu = g.neighbors(u).binary_search(&v).expect("edge present");
            let iv = g.neighbors(v).binary_search(&u).expect("edge present");
            slot_edge[u][iu] = id;
            slot_edge[v][iv] = id;
        }
        LrState {
            g,
            slot_edge,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out_edges: vec![Vec::new(); n],
            reference: vec![None; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            conflicts: Vec::new(),
        }
    }

    fn orient(&mut self, root: usize) {
        let mut next = vec![0usize; self.g.vertex_count()];
        let mut resumed = vec![false; self.src.len()];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let parent = self.parent_edge[v];
            while next[v] < self.g.degree(v) {
                let w = self.g.neighbors(v)[next[v]];
                let e = self.slot_edge[v][next[v]];
                if !resumed[e] {
                    if self.oriented[e] {
                        next[v] += 1;
                        continue;
                    }
                    self.oriented[e] = true;
                    self.src[e] = v;
                    self.dst[e] = w;
                    self.out_edges[v].push(e);
                    self.lowpt[e] = self.height[v];
                    self.lowpt2[e] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = Some(e);
                        self.height[w] = self.height[v] + 1;
                        resumed[e] = true;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    self.lowpt[e] = self.height[w];
                }

                self.nesting_depth[e] = 2 * self.lowpt[e];
                if self.lowpt2[e] < self.height[v] {
                    // chordal
                    self.nesting_depth[e] += 1;
                }

                if let Some(pe) = parent {
                    if self.lowpt[e] < self.lowpt[pe] {
                        self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                        self.lowpt[pe] = self.lowpt[e];
                    } else if self.lowpt[e] > self.lowpt[pe] {
                        self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
                    } else {
                        self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
                    }
                }
                next[v] += 1;
            }
        }
    }

    fn conflicting(&self, i: &Interval, e: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[e],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        let low = |i: &Interval| self.lowpt[i.low.expect("non-empty interval has a low edge")];
        if p.left.is_empty() {
            low(&p.right)
        } else if p.right.is_empty() {
            low(&p.left)
        } else {
            low(&p.left).min(low(&p.right))
        }
    }

    fn set_ref(&mut self, at: Option<usize>, to: Option<usize>) {
        if let Some(e) = at {
            self.reference[e] = to;
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let mut next = vec![0usize; self.g.vertex_count()];
        let mut resumed = vec![false; self.src.len()];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let parent = self.parent_edge[v];
            let mut descended = false;
            while next[v] < self.out_edges[v].len() {
                let ei = self.out_edges[v][next[v]];
                let w = self.dst[ei];
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.conflicts.len();
                    if self.parent_edge[w] == Some(ei) {
                        resumed[ei] = true;
                        descended = true;
                        stack.push(v);
                        stack.push(w);
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.conflicts.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval::single(ei),
                    });
                }

                if self.lowpt[ei] < self.height[v] {
                    let pe = parent.expect("an edge returning below v implies v is not a root");
                    if next[v] == 0 {
                        self.lowpt_edge[pe] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, pe) {
                        return false;
                    }
                }
                next[v] += 1;
            }
            if !descended {
                if let Some(pe) = parent {
                    self.remove_back_edges(pe);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        loop {
            let mut q = self.conflicts.pop().expect("ei has return edges on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.conflicts.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.conflicts.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.conflicts.pop().expect("peeked");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.conflicts.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.conflicts.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.conflicts.pop();
        }
        if let Some(mut p) = self.conflicts.pop() {
            while let Some(h) = p.left.high.filter(|&h| self.dst[h] == u) {
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.set_ref(p.left.low, p.right.low);
                p.left.low = None;
            }
            while let Some(h) = p.right.high.filter(|&h| self.dst[h] == u) {
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.set_ref(p.right.low, p.left.low);
                p.right.low = None;
            }
            self.conflicts.push(p);
        }
    }
}

/// Exact planarity decision.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    let mut state = LrState::new(g);
    let mut roots = Vec::new();
    for v in 0..n {
        if state.height[v] == NONE {
            state.height[v] = 0;
            roots.push(v);
            state.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut state.out_edges[v]);
        out.sort_by_key(|&e| state.nesting_depth[e]);
        state.out_edges[v] = out;
    }
    roots.into_iter().all(|r| state.test(r))
}
