//! Seeded instance families.
//!
//! Every generator is a pure function of its arguments; [`GenSpec`] bundles
//! the arguments with a family tag so an instance can be rebuilt from a small
//! JSON document.

use crate::graph::format::Instance;
use crate::graph::{from_digraph, ColoredGraph, Digraph, GraphError, VertexId};
use crate::seed::rng_from_seed;
use rand::seq::{index, SliceRandom};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Rejection attempts before the random digraph falls back to a relabeled
/// circulant.
pub const MIN_OUTDEG_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("steps {0} and {1} sum to n and would create digons")]
    DigonRisk(usize, usize),
    #[error("step {step} is outside [1, {}]", n.saturating_sub(1))]
    InvalidStep { step: usize, n: usize },
    #[error("out-degree {k} on {n} vertices needs digons (require 2k <= n - 1)")]
    InfeasibleDegree { n: usize, k: usize },
    #[error("{classes} classes of {size} edges do not fit in a simple graph on {n} vertices")]
    TooDense { n: usize, classes: usize, size: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Arcs `v -> v + s (mod n)` for every step `s`.
pub fn gen_circulant_digraph(n: usize, steps: &[usize]) -> Result<Digraph, GenError> {
    let steps: BTreeSet<usize> = steps.iter().copied().collect();
    for &s in &steps {
        if s == 0 || s >= n {
            return Err(GenError::InvalidStep { step: s, n });
        }
        if steps.contains(&(n - s)) {
            return Err(GenError::DigonRisk(s.min(n - s), s.max(n - s)));
        }
    }
    Ok(Digraph::new(n, (0..n).flat_map(|v| steps.iter().map(move |s| (v, (v + s) % n))))?)
}

/// The tight family: `circulant(n, {1..k})`.
pub fn circulant_1_to_k(n: usize, k: usize) -> Result<Digraph, GenError> {
    gen_circulant_digraph(n, &(1..=k).collect::<Vec<_>>())
}

/// Simple digraph in which every vertex has out-degree exactly `k`.
///
/// Vertices pick out-neighbors in order, avoiding loops and reverse arcs; a
/// vertex that runs out of candidates restarts the draw. After
/// [`MIN_OUTDEG_ATTEMPTS`] restarts a randomly relabeled `circulant(n, {1..k})`
/// is returned instead, which always exists when `2k <= n - 1`.
pub fn gen_random_min_outdeg(n: usize, k: usize, seed: u64) -> Result<Digraph, GenError> {
    if n == 0 || 2 * k > n - 1 {
        return Err(GenError::InfeasibleDegree { n, k });
    }
    let mut rng = rng_from_seed(seed);
    'attempt: for _ in 0..MIN_OUTDEG_ATTEMPTS {
        let mut out: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        for v in 0..n {
            let mut candidates: Vec<VertexId> = (0..n).filter(|&w| w != v && !out[w].contains(&v)).collect();
            if candidates.len() < k {
                continue 'attempt;
            }
            candidates.shuffle(&mut rng);
            out[v].extend(candidates.into_iter().take(k));
        }
        let arcs = out.iter().enumerate().flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)));
        return Ok(Digraph::new(n, arcs)?);
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let base = circulant_1_to_k(n, k)?;
    Ok(Digraph::new(n, base.arcs().iter().map(|&(u, v)| (perm[u], perm[v])))?)
}

/// `classes` color classes of exactly `size` edges each, on distinct vertex
/// pairs drawn uniformly.
pub fn gen_random_colored(n: usize, classes: usize, size: usize, seed: u64) -> Result<ColoredGraph, GenError> {
    let pairs = n * n.saturating_sub(1) / 2;
    let need = classes
        .checked_mul(size)
        .filter(|&m| m <= pairs)
        .ok_or(GenError::TooDense { n, classes, size })?;
    let mut rng = rng_from_seed(seed);
    let chosen = index::sample(&mut rng, pairs, need);
    let edges = chosen
        .into_iter()
        .enumerate()
        .map(|(i, idx)| {
            let (u, v) = unrank_pair(n, idx);
            (u, v, i / size.max(1))
        });
    Ok(ColoredGraph::new(n, edges)?)
}

/// The `idx`-th pair `(u, v)`, `u < v`, in lexicographic order.
fn unrank_pair(n: usize, mut idx: usize) -> (VertexId, VertexId) {
    for u in 0..n {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

/// Colors every arc by its tail.
pub fn gen_star_colored(d: &Digraph) -> Result<ColoredGraph, GenError> {
    Ok(from_digraph(d)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Circulant { n: usize, steps: Vec<usize> },
    RandomMinOutdeg { n: usize, k: usize },
    RandomColored { n: usize, colors: usize, class_size: usize },
    StarCirculant { n: usize, steps: Vec<usize> },
    StarRandomMinOutdeg { n: usize, k: usize },
}

/// A generator call, reproducible from its serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    pub fn n(&self) -> usize {
        match &self.family {
            Family::Circulant { n, .. }
            | Family::RandomMinOutdeg { n, .. }
            | Family::RandomColored { n, .. }
            | Family::StarCirculant { n, .. }
            | Family::StarRandomMinOutdeg { n, .. } => *n,
        }
    }

    /// Out-degree for the digraph families, class size for colored ones.
    pub fn k(&self) -> usize {
        match &self.family {
            Family::Circulant { steps, .. } | Family::StarCirculant { steps, .. } => {
                steps.iter().collect::<BTreeSet<_>>().len()
            }
            Family::RandomMinOutdeg { k, .. } | Family::StarRandomMinOutdeg { k, .. } => *k,
            Family::RandomColored { class_size, .. } => *class_size,
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self.family, Family::Circulant { .. } | Family::RandomMinOutdeg { .. })
    }

    pub fn generate(&self) -> Result<Instance, GenError> {
        Ok(match &self.family {
            Family::Circulant { n, steps } => Instance::Directed(gen_circulant_digraph(*n, steps)?),
            Family::RandomMinOutdeg { n, k } => Instance::Directed(gen_random_min_outdeg(*n, *k, self.seed)?),
            Family::RandomColored { n, colors, class_size } => {
                Instance::Colored(gen_random_colored(*n, *colors, *class_size, self.seed)?)
            }
            Family::StarCirculant { n, steps } => Instance::Colored(gen_star_colored(&gen_circulant_digraph(*n, steps)?)?),
            Family::StarRandomMinOutdeg { n, k } => {
                Instance::Colored(gen_star_colored(&gen_random_min_outdeg(*n, *k, self.seed)?)?)
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
