//! Color hitting sets and one-edge-per-color representative subgraphs.

use super::{PipelineParams, ReductionError};
use crate::graph::{Color, ColoredGraph, EdgeId, VertexId};
use crate::seed::rng_from_seed;
use rand::Rng;
use std::collections::BTreeSet;

/// Vertices `v` together with the distinct colors incident to each.
fn colors_at(g: &ColoredGraph) -> Vec<Vec<Color>> {
    (0..g.n())
        .map(|v| {
            let mut cs: Vec<Color> = g.neighbors(v).iter().map(|&(_, e)| g.color(e)).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        })
        .collect()
}

/// A vertex set touching at least one edge of every nonempty color class.
///
/// Runs `hitting_rounds(k)` rounds of uniform sampling with repetition,
/// redrawing each round up to `retry_cap` times until the number of missed
/// colors shrinks by `hitting_shrink_target()`, then completes greedily with
/// the vertex meeting the most missed classes (smallest id on ties).
pub fn find_color_hitting_set(g: &ColoredGraph, k: usize, p: &PipelineParams, seed: u64) -> Vec<VertexId> {
    hitting_set_with_rng(g, k, p, &mut rng_from_seed(seed))
}

pub(crate) fn hitting_set_with_rng(
    g: &ColoredGraph,
    k: usize,
    p: &PipelineParams,
    rng: &mut impl Rng,
) -> Vec<VertexId> {
    let n = g.n();
    let at = colors_at(g);
    let mut missed: BTreeSet<Color> = (0..g.num_colors()).filter(|&c| !g.class(c).is_empty()).collect();
    let mut chosen: BTreeSet<VertexId> = BTreeSet::new();

    let sample_size = p.hitting_sample_size(n, k);
    if n > 0 && sample_size > 0 {
        for _ in 0..p.hitting_rounds(k) {
            if missed.is_empty() {
                break;
            }
            let target = p.hitting_shrink_target() * missed.len() as f64;
            let mut best: Option<(usize, Vec<VertexId>)> = None;
            for _ in 0..p.retry_cap.max(1) {
                let sample: Vec<VertexId> = (0..sample_size).map(|_| rng.gen_range(0..n)).collect();
                let hit: BTreeSet<Color> = sample.iter().flat_map(|&v| at[v].iter().copied()).collect();
                let residual = missed.iter().filter(|c| !hit.contains(c)).count();
                if best.as_ref().is_none_or(|(r, _)| residual < *r) {
                    best = Some((residual, sample));
                }
                if residual as f64 <= target {
                    break;
                }
            }
            let (_, sample) = best.unwrap();
            for v in sample {
                for c in &at[v] {
                    missed.remove(c);
                }
                chosen.insert(v);
            }
        }
    }

    // greedy completion with incrementally maintained gains
    let mut gain: Vec<usize> = at.iter().map(|cs| cs.iter().filter(|c| missed.contains(c)).count()).collect();
    while !missed.is_empty() {
        let v = (0..n).max_by_key(|&v| (gain[v], std::cmp::Reverse(v))).unwrap();
        chosen.insert(v);
        for &c in &at[v] {
            if missed.remove(&c) {
                let mut touched: Vec<VertexId> = g.class(c).iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
                touched.sort_unstable();
                touched.dedup();
                for w in touched {
                    gain[w] -= 1;
                }
            }
        }
    }
    chosen.into_iter().collect()
}

/// True iff every nonempty class has an edge touching `s`.
pub fn hits_every_color(g: &ColoredGraph, s: &[VertexId]) -> bool {
    let set: BTreeSet<_> = s.iter().collect();
    g.classes()
        .iter()
        .filter(|class| !class.is_empty())
        .all(|class| class.iter().any(|&e| set.contains(&g.edge(e).u) || set.contains(&g.edge(e).v)))
}

/// For every color, its smallest edge id touching `s`.
pub fn representative_subgraph(g: &ColoredGraph, s: &[VertexId]) -> Result<Vec<EdgeId>, ReductionError> {
    let set: BTreeSet<_> = s.iter().collect();
    (0..g.num_colors())
        .map(|c| {
            g.class(c)
                .iter()
                .copied()
                .find(|&e| set.contains(&g.edge(e).u) || set.contains(&g.edge(e).v))
                .ok_or(ReductionError::ColorNotHit(c))
        })
        .collect()
}
