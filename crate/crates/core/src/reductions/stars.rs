//! Greedy maximal collections of colorful stars.
//!
//! A colorful star has at least `sigma` edges, all at its center, with at
//! most `gamma` edges of any one color; stars of a collection use pairwise
//! disjoint color sets.

use super::PipelineParams;
use crate::graph::{Color, ColoredGraph, EdgeId, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: VertexId,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarCollection {
    pub stars: Vec<Star>,
    /// Edges each used color contributes to the collection.
    pub color_usage: BTreeMap<Color, usize>,
    pub sigma: f64,
    pub gamma: usize,
    /// Nonempty colors with no edge in the collection.
    pub colors_missing: usize,
    /// `colors_missing <= k/2`
    pub claim_few_missing: bool,
    /// `|C| < n^{1/5} / 12`
    pub claim_few_stars: bool,
}

impl StarCollection {
    pub fn centers(&self) -> Vec<VertexId> {
        self.stars.iter().map(|s| s.center).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.stars.iter().flat_map(|s| s.edges.iter().copied())
    }

    /// Re-derives every collection invariant from `g`, including greedy
    /// maximality. Returns the first violation found.
    pub fn check(&self, g: &ColoredGraph) -> Result<(), String> {
        let mut seen_colors: BTreeSet<Color> = BTreeSet::new();
        let mut centers = BTreeSet::new();
        for star in &self.stars {
            if !centers.insert(star.center) {
                return Err(format!("vertex {} centers two stars", star.center));
            }
            if (star.edges.len() as f64) < self.sigma || star.edges.is_empty() {
                return Err(format!("star at {} has {} < sigma edges", star.center, star.edges.len()));
            }
            let mut per_color: BTreeMap<Color, usize> = BTreeMap::new();
            for &e in &star.edges {
                if !g.edge(e).touches(star.center) {
                    return Err(format!("edge {e} misses center {}", star.center));
                }
                *per_color.entry(g.color(e)).or_default() += 1;
            }
            for (&c, &count) in &per_color {
                if count > self.gamma {
                    return Err(format!("color {c} appears {count} > gamma times at {}", star.center));
                }
                if !seen_colors.insert(c) {
                    return Err(format!("color {c} appears in two stars"));
                }
            }
        }
        for v in (0..g.n()).filter(|v| !centers.contains(v)) {
            let size = candidate(g, v, &seen_colors, self.gamma).len();
            if size > 0 && size as f64 >= self.sigma {
                return Err(format!("vertex {v} still admits a star of {size} edges"));
            }
        }
        Ok(())
    }
}

/// Edges at `v` in colors outside `used`, at most `gamma` (smallest ids) per color.
fn candidate(g: &ColoredGraph, v: VertexId, used: &BTreeSet<Color>, gamma: usize) -> Vec<EdgeId> {
    let mut by_color: BTreeMap<Color, Vec<EdgeId>> = BTreeMap::new();
    for &(_, e) in g.neighbors(v) {
        let c = g.color(e);
        if !used.contains(&c) {
            by_color.entry(c).or_default().push(e);
        }
    }
    by_color
        .into_values()
        .flat_map(|mut es| {
            es.sort_unstable();
            es.truncate(gamma);
            es
        })
        .collect()
}

/// Scans vertices in id order, adding the largest admissible star at each.
/// A single pass is maximal: adding a star only removes colors, so a vertex
/// rejected once stays rejected.
pub fn colorful_star_collection(g: &ColoredGraph, k: usize, p: &PipelineParams) -> StarCollection {
    let n = g.n();
    let sigma = p.star_min_size(n, k);
    let gamma = p.star_color_cap(k);
    let mut used: BTreeSet<Color> = BTreeSet::new();
    let mut color_usage = BTreeMap::new();
    let mut stars = Vec::new();
    for v in 0..n {
        let mut edges = candidate(g, v, &used, gamma);
        if edges.is_empty() || (edges.len() as f64) < sigma {
            continue;
        }
        edges.sort_unstable();
        for &e in &edges {
            let c = g.color(e);
            used.insert(c);
            *color_usage.entry(c).or_insert(0) += 1;
        }
        stars.push(Star { center: v, edges });
    }
    let colors_missing = (0..g.num_colors())
        .filter(|c| !g.class(*c).is_empty() && !used.contains(c))
        .count();
    StarCollection {
        claim_few_missing: colors_missing as f64 <= k as f64 / 2.0,
        claim_few_stars: (stars.len() as f64) < (n as f64).powf(0.2) / 12.0,
        stars,
        color_usage,
        sigma,
        gamma,
        colors_missing,
    }
}
