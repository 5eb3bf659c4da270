//! Exact shortest-cycle searches.
//!
//! Girth and directed girth are polynomial (BFS from every vertex). Rainbow
//! girth is NP-hard in general, so [`rainbow_girth_exact`] is an
//! iterative-deepening DFS bounded by [`SearchLimits`]; it is exact whenever
//! it finishes inside the node budget. [`brute_force_rainbow_girth`] is an
//! independent enumeration used only to cross-check it on small graphs.

use crate::graph::{ColoredGraph, CycleCertificate, Digraph, EdgeId, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

pub const DEFAULT_MAX_LEN: usize = 20;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
/// Largest order accepted by the brute-force oracle.
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_len: usize,
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_len: DEFAULT_MAX_LEN,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchLimits {
    pub fn new(max_len: usize, node_budget: u64) -> Result<Self, SearchError> {
        if max_len < 2 || node_budget == 0 {
            return Err(SearchError::InvalidLimits { max_len, node_budget });
        }
        Ok(SearchLimits { max_len, node_budget })
    }

    pub fn with_max_len(self, max_len: usize) -> Self {
        SearchLimits { max_len, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// The node budget ran out before the search could conclude. `best` is
    /// the shortest rainbow cycle known at that point, if any.
    #[error("node budget of {nodes} exhausted")]
    BudgetExceeded {
        best: Option<CycleCertificate>,
        nodes: u64,
    },
    #[error("graph on {n} vertices is too large for brute-force enumeration")]
    TooLarge { n: usize },
    #[error("invalid search limits: max_len {max_len}, node_budget {node_budget}")]
    InvalidLimits { max_len: usize, node_budget: u64 },
}

/// True iff `c` is a cycle of `g`: at least three pairwise-distinct vertices,
/// each listed edge joining consecutive vertices cyclically.
pub fn verify_cycle(g: &ColoredGraph, c: &CycleCertificate) -> bool {
    let len = c.vertices.len();
    if len < 3 || c.edge_ids.len() != len || c.length != len {
        return false;
    }
    let distinct: HashSet<_> = c.vertices.iter().collect();
    if distinct.len() != len || c.vertices.iter().any(|&v| v >= g.n()) {
        return false;
    }
    (0..len).all(|i| {
        let (a, b) = (c.vertices[i], c.vertices[(i + 1) % len]);
        c.edge_ids[i] < g.m() && g.edge_between(a, b) == Some(c.edge_ids[i])
    })
}

/// True iff `c` is a cycle of `g` whose edge colors are pairwise distinct.
pub fn verify_rainbow_cycle(g: &ColoredGraph, c: &CycleCertificate) -> bool {
    if !verify_cycle(g, c) {
        return false;
    }
    let colors: HashSet<_> = c.edge_ids.iter().map(|&e| g.color(e)).collect();
    colors.len() == c.edge_ids.len()
}

/// True iff `c` is a directed cycle of `d` (arc ids in `edge_ids`).
pub fn verify_directed_cycle(d: &Digraph, c: &CycleCertificate) -> bool {
    let len = c.vertices.len();
    if len < 2 || c.edge_ids.len() != len || c.length != len {
        return false;
    }
    let distinct: HashSet<_> = c.vertices.iter().collect();
    if distinct.len() != len {
        return false;
    }
    (0..len).all(|i| {
        d.arcs().get(c.edge_ids[i]) == Some(&(c.vertices[i], c.vertices[(i + 1) % len]))
    })
}

/// Tree path from `v` up to the BFS root (inclusive), as vertices and edges.
fn tree_path(parent: &[Option<(VertexId, EdgeId)>], mut v: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
    let mut vs = vec![v];
    let mut es = Vec::new();
    while let Some((p, e)) = parent[v] {
        es.push(e);
        vs.push(p);
        v = p;
    }
    (vs, es)
}

fn better(candidate: &CycleCertificate, best: &Option<CycleCertificate>) -> bool {
    match best {
        None => true,
        Some(b) => (candidate.length, &candidate.vertices) < (b.length, &b.vertices),
    }
}

/// Exact girth of the underlying simple graph with a shortest-cycle witness,
/// or `None` for forests. Ties are broken by canonical vertex sequence.
pub fn undirected_girth(g: &ColoredGraph) -> Option<(usize, CycleCertificate)> {
    let n = g.n();
    let mut best: Option<CycleCertificate> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut touched = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for root in 0..n {
        for &v in &touched {
            dist[v] = u32::MAX;
            parent[v] = None;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] as usize;
            if let Some(b) = &best {
                if 2 * du + 1 >= b.length {
                    break;
                }
            }
            for &(w, e) in g.neighbors(u) {
                if parent[u].map(|(_, pe)| pe) == Some(e) {
                    continue;
                }
                if dist[w] == u32::MAX {
                    dist[w] = du as u32 + 1;
                    parent[w] = Some((u, e));
                    touched.push(w);
                    queue.push_back(w);
                    continue;
                }
                let len = du + dist[w] as usize + 1;
                if best.as_ref().is_some_and(|b| len > b.length) {
                    continue;
                }
                let (pu, eu) = tree_path(&parent, u);
                let (pw, ew) = tree_path(&parent, w);
                // both paths end at the root; a shared vertex elsewhere means
                // the walk is not a simple cycle
                let on_u: HashSet<_> = pu[..pu.len() - 1].iter().collect();
                if pw[..pw.len() - 1].iter().any(|x| on_u.contains(x)) {
                    continue;
                }
                let mut vertices: Vec<_> = pu.iter().rev().copied().collect();
                vertices.extend(pw[..pw.len() - 1].iter().copied());
                let mut edges: Vec<_> = eu.iter().rev().copied().collect();
                edges.push(e);
                edges.extend(ew.iter().copied());
                let cert = CycleCertificate::new(vertices, edges, false).canonical(false);
                if better(&cert, &best) {
                    best = Some(cert);
                }
            }
        }
    }
    best.map(|c| (c.length, c))
}

/// Exact directed girth with a witness, or `None` for acyclic digraphs.
pub fn directed_girth(d: &Digraph) -> Option<(usize, CycleCertificate)> {
    let n = d.n();
    let mut best: Option<CycleCertificate> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent: Vec<Option<(VertexId, usize)>> = vec![None; n];
    let mut touched = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        if d.in_arcs(s).is_empty() {
            continue;
        }
        for &v in &touched {
            dist[v] = u32::MAX;
            parent[v] = None;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        queue.clear();
        queue.push_back(s);
        let limit = best.as_ref().map_or(usize::MAX, |b| b.length);
        while let Some(u) = queue.pop_front() {
            if dist[u] as usize + 1 >= limit {
                break;
            }
            for &(w, a) in d.out_arcs(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = Some((u, a));
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        for &(u, a) in d.in_arcs(s) {
            if dist[u] == u32::MAX {
                continue;
            }
            let (vs, es) = tree_path(&parent, u);
            let mut vertices: Vec<_> = vs.into_iter().rev().collect();
            let mut arcs: Vec<_> = es.into_iter().rev().collect();
            arcs.push(a);
            vertices.truncate(arcs.len());
            let cert = CycleCertificate::new(vertices, arcs, false).canonical(true);
            if better(&cert, &best) {
                best = Some(cert);
            }
        }
    }
    best.map(|c| (c.length, c))
}

struct RainbowDfs<'a> {
    g: &'a ColoredGraph,
    order: Vec<Vec<(VertexId, EdgeId)>>,
    used: Vec<u64>,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    path_edges: Vec<EdgeId>,
    nodes: u64,
    budget: u64,
}

#[derive(Clone, Copy)]
enum Goal {
    /// Only cycles of exactly this length, with `dist` pruning.
    Exact(usize),
    /// The first rainbow cycle of length at most this.
    AtMost(usize),
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> RainbowDfs<'a> {
    fn new(g: &'a ColoredGraph, budget: u64) -> Self {
        let mut order: Vec<Vec<(VertexId, EdgeId)>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        for list in &mut order {
            list.sort_by_key(|&(w, _)| (g.degree(w), w));
        }
        RainbowDfs {
            g,
            order,
            used: vec![0; g.num_colors().div_ceil(64).max(1)],
            on_path: vec![false; g.n()],
            path: Vec::new(),
            path_edges: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn color_used(&self, e: EdgeId) -> bool {
        let c = self.g.color(e);
        self.used[c / 64] >> (c % 64) & 1 == 1
    }

    fn toggle_color(&mut self, e: EdgeId) {
        let c = self.g.color(e);
        self.used[c / 64] ^= 1 << (c % 64);
    }

    /// Searches rainbow cycles whose smallest vertex is `s`. `dist` holds BFS
    /// distances to `s` inside the subgraph induced by vertices `>= s`.
    fn search_from(&mut self, s: VertexId, goal: Goal, dist: &[u32]) -> Step {
        self.path.clear();
        self.path_edges.clear();
        self.path.push(s);
        self.on_path[s] = true;
        let step = self.extend(s, s, goal, dist);
        self.on_path[s] = false;
        step
    }

    fn extend(&mut self, s: VertexId, v: VertexId, goal: Goal, dist: &[u32]) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let depth = self.path_edges.len();
        let (close_now, may_continue) = match goal {
            Goal::Exact(len) => (depth + 1 == len, depth + 1 < len),
            Goal::AtMost(len) => (depth >= 2, depth + 1 < len),
        };
        if close_now && depth >= 2 {
            if let Some(e) = self.g.edge_between(v, s) {
                // each cycle is met in both directions; keep one
                if !self.color_used(e) && self.path[1] < v {
                    self.path_edges.push(e);
                    return Step::Found;
                }
            }
        }
        if !may_continue {
            return Step::Exhausted;
        }
        for i in 0..self.order[v].len() {
            let (w, e) = self.order[v][i];
            if w <= s || self.on_path[w] || self.color_used(e) {
                continue;
            }
            if let Goal::Exact(len) = goal {
                if dist[w] == u32::MAX || dist[w] as usize > len - depth - 1 {
                    continue;
                }
            }
            self.on_path[w] = true;
            self.toggle_color(e);
            self.path.push(w);
            self.path_edges.push(e);
            let step = self.extend(s, w, goal, dist);
            if matches!(step, Step::Found) {
                self.on_path[w] = false;
                self.toggle_color(e);
                return step;
            }
            self.path.pop();
            self.path_edges.pop();
            self.toggle_color(e);
            self.on_path[w] = false;
            if matches!(step, Step::OutOfBudget) {
                return step;
            }
        }
        Step::Exhausted
    }

    fn certificate(&self) -> CycleCertificate {
        CycleCertificate::new(self.path.clone(), self.path_edges.clone(), true).canonical(false)
    }
}

/// BFS distances to `s` in the subgraph induced by vertices `>= s`.
fn upper_distances(g: &ColoredGraph, s: VertexId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if w > s && dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest rainbow cycle of length at most `lim.max_len`.
///
/// `Ok(None)` means no rainbow cycle of length `<= max_len` exists (none at
/// all once `max_len >= n`). Budget exhaustion is reported as
/// [`SearchError::BudgetExceeded`] carrying whatever cycle a cheap first-fit
/// probe could find.
pub fn rainbow_girth_exact(
    g: &ColoredGraph,
    lim: SearchLimits,
) -> Result<Option<(usize, CycleCertificate)>, SearchError> {
    let n = g.n();
    let max_len = lim.max_len.min(n);
    let mut dfs = RainbowDfs::new(g, lim.node_budget);
    let mut dists: Vec<Option<Vec<u32>>> = vec![None; n];
    for len in 3..=max_len {
        for (s, slot) in dists.iter_mut().enumerate().take(n - len + 1) {
            let dist = slot.get_or_insert_with(|| upper_distances(g, s));
            match dfs.search_from(s, Goal::Exact(len), dist) {
                Step::Found => {
                    let cert = dfs.certificate();
                    return Ok(Some((cert.length, cert)));
                }
                Step::Exhausted => {}
                Step::OutOfBudget => {
                    let nodes = dfs.nodes;
                    return Err(SearchError::BudgetExceeded {
                        best: probe(g, lim),
                        nodes,
                    });
                }
            }
        }
    }
    Ok(None)
}

/// First-fit rainbow cycle, used to report something useful when the exact
/// search runs out of budget.
fn probe(g: &ColoredGraph, lim: SearchLimits) -> Option<CycleCertificate> {
    let mut dfs = RainbowDfs::new(g, lim.node_budget.min(1_000_000));
    for s in 0..g.n() {
        match dfs.search_from(s, Goal::AtMost(lim.max_len), &[]) {
            Step::Found => return Some(dfs.certificate()),
            Step::Exhausted => {}
            Step::OutOfBudget => return None,
        }
    }
    None
}

/// Rainbow girth by enumerating every simple cycle. Only for `n <= 12`.
pub fn brute_force_rainbow_girth(g: &ColoredGraph) -> Result<Option<usize>, SearchError> {
    if g.n() > BRUTE_FORCE_MAX_N {
        return Err(SearchError::TooLarge { n: g.n() });
    }
    fn walk(
        g: &ColoredGraph,
        start: VertexId,
        v: VertexId,
        visited: &mut Vec<bool>,
        edges: &mut Vec<EdgeId>,
        best: &mut Option<usize>,
    ) {
        for &(w, e) in g.neighbors(v) {
            if w == start && edges.len() >= 2 && edges.last() != Some(&e) {
                let mut colors: Vec<_> = edges.iter().chain([&e]).map(|&x| g.color(x)).collect();
                colors.sort_unstable();
                colors.dedup();
                if colors.len() == edges.len() + 1 {
                    *best = Some(best.map_or(colors.len(), |b| b.min(colors.len())));
                }
            } else if w > start && !visited[w] {
                visited[w] = true;
                edges.push(e);
                walk(g, start, w, visited, edges, best);
                edges.pop();
                visited[w] = false;
            }
        }
    }
    let mut best = None;
    let mut visited = vec![false; g.n()];
    for s in 0..g.n() {
        visited[s] = true;
        walk(g, s, s, &mut visited, &mut Vec::new(), &mut best);
        visited[s] = false;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::from_digraph;

    fn cycle_graph(n: usize) -> ColoredGraph {
        ColoredGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, i))).unwrap()
    }

    fn circulant(n: usize, steps: &[usize]) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|v| steps.iter().map(move |s| (v, (v + s) % n)))).unwrap()
    }

    fn petersen() -> ColoredGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        ColoredGraph::uncolored(10, e).unwrap()
    }

    #[test]
    fn girth_of_small_graphs() {
        let (len, c) = undirected_girth(&cycle_graph(5)).unwrap();
        assert_eq!(len, 5);
        assert!(verify_cycle(&cycle_graph(5), &c));
        let tree = ColoredGraph::uncolored(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert!(undirected_girth(&tree).is_none());
        let p = petersen();
        let (len, c) = undirected_girth(&p).unwrap();
        assert_eq!(len, 5);
        assert!(verify_cycle(&p, &c));
    }

    #[test]
    fn even_girth() {
        // 3-cube has girth 4
        let mut e = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        let g = ColoredGraph::uncolored(8, e).unwrap();
        assert_eq!(undirected_girth(&g).unwrap().0, 4);
    }

    #[test]
    fn directed_girth_examples() {
        let tri = circulant(3, &[1]);
        let (len, c) = directed_girth(&tri).unwrap();
        assert_eq!(len, 3);
        assert!(verify_directed_cycle(&tri, &c));
        let c9 = circulant(9, &[1, 2]);
        let (len, c) = directed_girth(&c9).unwrap();
        assert_eq!(len, 5);
        assert!(verify_directed_cycle(&c9, &c));
        let dag = Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(directed_girth(&dag).is_none());
    }

    #[test]
    fn directed_girth_on_circulants() {
        for n in 3..=60 {
            for k in 1..=n / 3 {
                let steps: Vec<_> = (1..=k).collect();
                let d = circulant(n, &steps);
                let (len, c) = directed_girth(&d).unwrap();
                assert_eq!(len, n.div_ceil(k), "n={n} k={k}");
                assert!(verify_directed_cycle(&d, &c));
            }
        }
    }

    #[test]
    fn rainbow_girth_examples() {
        let tri = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)]).unwrap();
        let (len, c) = rainbow_girth_exact(&tri, SearchLimits::default()).unwrap().unwrap();
        assert_eq!(len, 3);
        assert!(verify_rainbow_cycle(&tri, &c));
        let mono = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 0), (2, 0, 1)]).unwrap();
        assert_eq!(rainbow_girth_exact(&mono, SearchLimits::default()).unwrap(), None);
        let g = from_digraph(&circulant(9, &[1, 2])).unwrap();
        let (len, c) = rainbow_girth_exact(&g, SearchLimits::default()).unwrap().unwrap();
        assert_eq!(len, 5);
        assert!(verify_rainbow_cycle(&g, &c));
        assert_eq!(brute_force_rainbow_girth(&g).unwrap(), Some(5));
    }

    #[test]
    fn max_len_caps_the_search() {
        let g = cycle_graph(8);
        let lim = SearchLimits::new(7, 1000).unwrap();
        assert_eq!(rainbow_girth_exact(&g, lim).unwrap(), None);
        let lim = lim.with_max_len(8);
        assert_eq!(rainbow_girth_exact(&g, lim).unwrap().unwrap().0, 8);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let g = from_digraph(&circulant(30, &[1, 2])).unwrap();
        let lim = SearchLimits::new(20, 50).unwrap();
        match rainbow_girth_exact(&g, lim) {
            Err(SearchError::BudgetExceeded { best, nodes }) => {
                assert!(nodes > 50);
                if let Some(c) = best {
                    assert!(verify_rainbow_cycle(&g, &c));
                }
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
        assert!(SearchLimits::new(1, 10).is_err());
        assert!(SearchLimits::new(3, 0).is_err());
    }

    #[test]
    fn verifier_rejects_bad_cycles() {
        let tri = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)]).unwrap();
        assert!(verify_rainbow_cycle(&tri, &CycleCertificate::new(vec![0, 1, 2], vec![0, 1, 2], true)));
        let mono = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 0), (2, 0, 1)]).unwrap();
        let c = CycleCertificate::new(vec![0, 1, 2], vec![0, 1, 2], true);
        assert!(verify_cycle(&mono, &c));
        assert!(!verify_rainbow_cycle(&mono, &c));
        // bowtie walk 0-1-2-0-3-4 repeats vertex 0
        let bow = ColoredGraph::new(5, [(0, 1, 0), (1, 2, 1), (2, 0, 2), (0, 3, 3), (3, 4, 4), (4, 0, 5)]).unwrap();
        let walk = CycleCertificate::new(vec![0, 1, 2, 0, 3, 4], vec![0, 1, 2, 3, 4, 5], true);
        assert!(!verify_rainbow_cycle(&bow, &walk));
        // wrong edge id
        assert!(!verify_cycle(&tri, &CycleCertificate::new(vec![0, 1, 2], vec![1, 0, 2], true)));
        // inconsistent length
        let mut bad = CycleCertificate::new(vec![0, 1, 2], vec![0, 1, 2], true);
        bad.length = 4;
        assert!(!verify_cycle(&tri, &bad));
    }

    #[test]
    fn brute_force_examples() {
        let sq = ColoredGraph::new(4, [(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]).unwrap();
        assert_eq!(brute_force_rainbow_girth(&sq).unwrap(), None);
        let mut k4 = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                k4.push((u, v, k4.len()));
            }
        }
        let k4 = ColoredGraph::new(4, k4).unwrap();
        assert_eq!(brute_force_rainbow_girth(&k4).unwrap(), Some(3));
        assert_eq!(
            brute_force_rainbow_girth(&cycle_graph(13)),
            Err(SearchError::TooLarge { n: 13 })
        );
    }
}
