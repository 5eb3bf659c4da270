//! Slow, independent reference implementations used only by tests.
#![allow(dead_code)]

use rainbow_core::{ColoredGraph, Digraph};
use std::collections::VecDeque;

/// Rainbow girth by enumerating every edge subset with pairwise distinct
/// colors and testing whether it is a single cycle. Exponential in `m`.
pub fn rainbow_girth_by_subsets(g: &ColoredGraph) -> Option<usize> {
    assert!(g.m() <= 24, "oracle is exponential in m");
    fn is_cycle(g: &ColoredGraph, chosen: &[usize]) -> bool {
        if chosen.len() < 3 {
            return false;
        }
        let mut deg = vec![0usize; g.n()];
        for &e in chosen {
            deg[g.edge(e).u] += 1;
            deg[g.edge(e).v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        // connected: walk from one endpoint along chosen edges
        let start = g.edge(chosen[0]).u;
        let mut seen = vec![false; g.n()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in chosen {
                let edge = g.edge(e);
                if edge.touches(v) && !seen[edge.other(v)] {
                    seen[edge.other(v)] = true;
                    count += 1;
                    stack.push(edge.other(v));
                }
            }
        }
        count == chosen.len()
    }
    fn rec(g: &ColoredGraph, i: usize, chosen: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut Option<usize>) {
        if is_cycle(g, chosen) {
            *best = Some(best.map_or(chosen.len(), |b: usize| b.min(chosen.len())));
        }
        if i == g.m() || best.is_some_and(|b| chosen.len() >= b) {
            return;
        }
        rec(g, i + 1, chosen, used, best);
        let c = g.color(i);
        if !used[c] {
            used[c] = true;
            chosen.push(i);
            rec(g, i + 1, chosen, used, best);
            chosen.pop();
            used[c] = false;
        }
    }
    let mut best = None;
    rec(g, 0, &mut Vec::new(), &mut vec![false; g.num_colors()], &mut best);
    best
}

/// Girth as the minimum over edges `uv` of `1 + dist(u, v)` in `G - uv`.
pub fn girth_by_edge_removal(g: &ColoredGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (id, e) in g.edges().iter().enumerate() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[e.u] = 0;
        let mut q = VecDeque::from([e.u]);
        while let Some(x) = q.pop_front() {
            for &(y, f) in g.neighbors(x) {
                if f != id && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        if dist[e.v] != usize::MAX {
            let len = dist[e.v] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// Directed girth from all-pairs distances: min over arcs `uv` of `1 + d(v, u)`.
pub fn directed_girth_floyd(d: &Digraph) -> Option<usize> {
    let n = d.n();
    let inf = usize::MAX / 4;
    let mut dist = vec![vec![inf; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in d.arcs() {
        dist[u][v] = 1;
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if dist[u][w] + dist[w][v] < dist[u][v] {
                    dist[u][v] = dist[u][w] + dist[w][v];
                }
            }
        }
    }
    d.arcs()
        .iter()
        .filter(|&&(u, v)| dist[v][u] < inf)
        .map(|&(u, v)| 1 + dist[v][u])
        .min()
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    (center - half, center + half)
}

/// A simple colored graph from arbitrary triples: loops and repeated pairs
/// are dropped, colors are compacted to `0..K`.
pub fn simple_colored(n: usize, raw: &[(usize, usize, usize)]) -> ColoredGraph {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for &(u, v, c) in raw {
        let (u, v) = (u % n, v % n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v, c));
        }
    }
    let mut colors: Vec<usize> = edges.iter().map(|e| e.2).collect();
    colors.sort_unstable();
    colors.dedup();
    let edges = edges
        .into_iter()
        .map(|(u, v, c)| (u, v, colors.binary_search(&c).unwrap()));
    ColoredGraph::new(n, edges).unwrap()
}

/// A simple digraph from arbitrary pairs: loops and second arcs on a pair
/// (in either direction) are dropped.
pub fn simple_digraph(n: usize, raw: &[(usize, usize)]) -> Digraph {
    let mut seen = std::collections::HashSet::new();
    let arcs: Vec<_> = raw
        .iter()
        .map(|&(u, v)| (u % n, v % n))
        .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
        .collect();
    Digraph::new(n, arcs).unwrap()
}
