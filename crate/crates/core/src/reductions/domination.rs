//! Color domination, the domination digraph, and random deletion sets.

use super::{PipelineParams, ReductionError};
use crate::graph::{Color, ColoredGraph, Digraph, EdgeId, VertexId};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

/// Each vertex-dominating color mapped to its smallest dominated vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DominationMap {
    pub by_color: BTreeMap<Color, VertexId>,
    /// Image of `by_color`.
    pub dominated: BTreeSet<VertexId>,
}

impl DominationMap {
    pub fn is_dominating(&self, c: Color) -> bool {
        self.by_color.contains_key(&c)
    }

    /// Vertices outside the image, ascending.
    pub fn rest(&self, n: usize) -> Vec<VertexId> {
        (0..n).filter(|v| !self.dominated.contains(v)).collect()
    }
}

/// A color dominates `v` when at least `threshold` of its edges meet `v`.
pub fn dominated_map(g: &ColoredGraph, threshold: f64) -> DominationMap {
    let mut map = DominationMap::default();
    for c in 0..g.num_colors() {
        let mut counts: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &e in g.class(c) {
            let edge = g.edge(e);
            *counts.entry(edge.u).or_default() += 1;
            *counts.entry(edge.v).or_default() += 1;
        }
        if let Some((&v, _)) = counts.iter().find(|(_, &count)| count as f64 >= threshold) {
            map.by_color.insert(c, v);
            map.dominated.insert(v);
        }
    }
    map
}

/// Digraph on the dominated vertices with an arc `v_a -> u` for every edge
/// `v_a u` of color `a`, where `v_a` is the vertex picked for `a`.
#[derive(Debug, Clone)]
pub struct DominationDigraph {
    pub digraph: Digraph,
    /// Host vertex of each digraph vertex.
    pub vertices: Vec<VertexId>,
    /// Host edge behind each arc.
    pub arc_edges: Vec<EdgeId>,
}

/// An edge has a single color and each color picks a single vertex, so two
/// opposite arcs over one edge cannot arise; if they do, the map was not
/// produced consistently and an internal error is returned.
pub fn domination_digraph(g: &ColoredGraph, dm: &DominationMap) -> Result<DominationDigraph, ReductionError> {
    let vertices: Vec<VertexId> = dm.dominated.iter().copied().collect();
    let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut arcs = Vec::new();
    let mut arc_edges = Vec::new();
    for (&c, &center) in &dm.by_color {
        let Some(&from) = index.get(&center) else {
            return Err(ReductionError::Internal(format!("color {c} picks {center}, which is not in S")));
        };
        for &e in g.class(c) {
            let edge = g.edge(e);
            if !edge.touches(center) {
                continue;
            }
            if let Some(&to) = index.get(&edge.other(center)) {
                arcs.push((from, to));
                arc_edges.push(e);
            }
        }
    }
    let digraph = Digraph::new(vertices.len(), arcs)
        .map_err(|err| ReductionError::Internal(format!("domination digraph is not simple: {err}")))?;
    Ok(DominationDigraph {
        digraph,
        vertices,
        arc_edges,
    })
}

/// Number of non-dominating colors with fewer than `t/100` edges avoiding `deleted`.
pub fn count_bad_colors(g: &ColoredGraph, dm: &DominationMap, deleted: &HashSet<VertexId>, t_over_100: f64) -> usize {
    (0..g.num_colors())
        .filter(|&c| !dm.is_dominating(c))
        .filter(|&c| (surviving_edges(g, c, deleted) as f64) < t_over_100)
        .count()
}

pub fn surviving_edges(g: &ColoredGraph, c: Color, deleted: &HashSet<VertexId>) -> usize {
    g.class(c)
        .iter()
        .filter(|&&e| !deleted.contains(&g.edge(e).u) && !deleted.contains(&g.edge(e).v))
        .count()
}

/// Keeps each vertex of `pool` independently with probability `prob`.
pub fn draw_deletion_set(pool: &[VertexId], prob: f64, rng: &mut impl Rng) -> Vec<VertexId> {
    pool.iter().copied().filter(|_| rng.gen_bool(prob.clamp(0.0, 1.0))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionSample {
    pub deleted: Vec<VertexId>,
    pub bad_colors: usize,
    pub attempts: u32,
}

/// Draws deletion sets from the non-dominated vertices until one has size
/// strictly inside `(2k, 8k)` and fewer than `k` bad colors, or `retry_cap`
/// attempts are spent.
pub fn deletion_sample(
    g: &ColoredGraph,
    dm: &DominationMap,
    k: usize,
    p: &PipelineParams,
    rng: &mut impl Rng,
) -> Result<DeletionSample, ReductionError> {
    let pool = dm.rest(g.n());
    let r = pool.len();
    if r == 0 || r <= 4 * k {
        return Err(ReductionError::Precondition(format!(
            "deletion needs more than 4k = {} non-dominated vertices, found {r}",
            4 * k
        )));
    }
    let prob = p.deletion_probability(k, r);
    let (lo, hi) = p.deletion_window(k);
    let t_over_100 = p.t(k) / 100.0;
    for attempt in 1..=p.retry_cap.max(1) {
        let deleted = draw_deletion_set(&pool, prob, rng);
        if deleted.len() <= lo || deleted.len() >= hi {
            continue;
        }
        let set: HashSet<VertexId> = deleted.iter().copied().collect();
        let bad_colors = count_bad_colors(g, dm, &set, t_over_100);
        if bad_colors < k {
            return Ok(DeletionSample {
                deleted,
                bad_colors,
                attempts: attempt,
            });
        }
    }
    Err(ReductionError::SampleFailure { attempts: p.retry_cap.max(1) })
}
