//! Star contraction of a representative subgraph and lifting of contracted
//! cycles back to the original graph.
//!
//! A representative subgraph is given as a list of edge ids of the host graph
//! plus a set of star centers. Every other vertex of the subgraph is attached
//! to one adjacent center; each center together with its attached leaves is a
//! block, and blocks become the vertices of the contracted multigraph.

use super::{Color, ColoredGraph, CycleCertificate, EdgeId, VertexId};
use crate::search::verify_rainbow_cycle;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("vertex {0} is neither a center nor assigned to one")]
    UnassignedVertex(VertexId),
    #[error("vertex {vertex} is assigned to {center}, which is not an adjacent center")]
    NonAdjacentAssignment { vertex: VertexId, center: VertexId },
    #[error("center {0} is listed twice")]
    DuplicateCenter(VertexId),
    #[error("lifting failed: {0}")]
    LiftFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractedEdge {
    pub a: usize,
    pub b: usize,
    pub color: Color,
    pub preimage: EdgeId,
}

/// The contracted multigraph. It is not required to be simple: loops and
/// parallel pairs are listed explicitly.
#[derive(Debug, Clone)]
pub struct ContractedGraph {
    pub order: usize,
    pub edges: Vec<ContractedEdge>,
    /// Indices into `edges` of edges with both ends in one block.
    pub loops: Vec<usize>,
    /// Pairs of indices into `edges` joining the same two distinct blocks.
    pub parallel_pairs: Vec<(usize, usize)>,
}

impl ContractedGraph {
    pub fn is_simple(&self) -> bool {
        self.loops.is_empty() && self.parallel_pairs.is_empty()
    }

    /// The contracted graph as a [`ColoredGraph`] (edge ids coincide with
    /// indices into `edges`), or `None` when it has loops or parallel edges.
    pub fn as_simple(&self) -> Option<ColoredGraph> {
        if !self.is_simple() {
            return None;
        }
        ColoredGraph::new(self.order, self.edges.iter().map(|e| (e.a, e.b, e.color))).ok()
    }

    /// Certificate for the first loop, if any.
    pub fn loop_cycle(&self) -> Option<CycleCertificate> {
        self.loops
            .first()
            .map(|&i| CycleCertificate::new(vec![self.edges[i].a], vec![i], true))
    }

    /// Certificate for the first parallel pair, if any.
    pub fn parallel_cycle(&self) -> Option<CycleCertificate> {
        self.parallel_pairs.first().map(|&(i, j)| {
            let e = self.edges[i];
            CycleCertificate::new(vec![e.a, e.b], vec![i, j], true)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    /// Block (contracted vertex) of each host vertex in the subgraph.
    pub block_of: Vec<Option<usize>>,
    /// Star center of each block.
    pub center_of: Vec<VertexId>,
    /// Edge joining each attached leaf to its center.
    pub attach: Vec<Option<EdgeId>>,
    /// Host edge behind each contracted edge.
    pub preimage: Vec<EdgeId>,
}

impl ContractionMap {
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.center_of.len()];
        for b in self.block_of.iter().flatten() {
            sizes[*b] += 1;
        }
        sizes
    }
}

/// Attaches every non-center endpoint of `sub_edges` to its adjacent center
/// of smallest id.
pub fn assign_to_centers(
    g: &ColoredGraph,
    sub_edges: &[EdgeId],
    centers: &[VertexId],
) -> BTreeMap<VertexId, VertexId> {
    let center_set: HashSet<VertexId> = centers.iter().copied().collect();
    let mut assignment: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &id in sub_edges {
        let e = g.edge(id);
        for (leaf, hub) in [(e.u, e.v), (e.v, e.u)] {
            if center_set.contains(&leaf) || !center_set.contains(&hub) {
                continue;
            }
            assignment
                .entry(leaf)
                .and_modify(|c| *c = (*c).min(hub))
                .or_insert(hub);
        }
    }
    assignment
}

pub fn contract_stars(
    g: &ColoredGraph,
    sub_edges: &[EdgeId],
    centers: &[VertexId],
    assignment: &BTreeMap<VertexId, VertexId>,
) -> Result<(ContractedGraph, ContractionMap), ContractionError> {
    let mut block_of = vec![None; g.n()];
    for (i, &c) in centers.iter().enumerate() {
        if block_of[c].is_some() {
            return Err(ContractionError::DuplicateCenter(c));
        }
        block_of[c] = Some(i);
    }

    let mut vertices = BTreeSet::new();
    let mut pair_edge = HashMap::new();
    for &id in sub_edges {
        let e = g.edge(id);
        vertices.insert(e.u);
        vertices.insert(e.v);
        pair_edge.insert((e.u.min(e.v), e.u.max(e.v)), id);
    }

    let mut attach = vec![None; g.n()];
    for &v in &vertices {
        if block_of[v].is_some() {
            continue;
        }
        let &center = assignment.get(&v).ok_or(ContractionError::UnassignedVertex(v))?;
        let bad = ContractionError::NonAdjacentAssignment { vertex: v, center };
        let block = match block_of.get(center).copied().flatten() {
            Some(b) if centers[b] == center => b,
            _ => return Err(bad),
        };
        let edge = pair_edge.get(&(v.min(center), v.max(center))).copied().ok_or(bad)?;
        attach[v] = Some(edge);
        block_of[v] = Some(block);
    }

    let mut edges = Vec::new();
    let mut loops = Vec::new();
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &id in sub_edges {
        let e = g.edge(id);
        if attach[e.u] == Some(id) || attach[e.v] == Some(id) {
            continue;
        }
        let (a, b) = (block_of[e.u].unwrap(), block_of[e.v].unwrap());
        let idx = edges.len();
        edges.push(ContractedEdge {
            a,
            b,
            color: e.color,
            preimage: id,
        });
        if a == b {
            loops.push(idx);
        } else {
            by_pair.entry((a.min(b), a.max(b))).or_default().push(idx);
        }
    }
    let mut parallel_pairs: Vec<(usize, usize)> = by_pair
        .values()
        .filter(|group| group.len() > 1)
        .flat_map(|group| group[1..].iter().map(move |&j| (group[0], j)))
        .collect();
    parallel_pairs.sort_unstable();

    let preimage = edges.iter().map(|e| e.preimage).collect();
    Ok((
        ContractedGraph {
            order: centers.len(),
            edges,
            loops,
            parallel_pairs,
        },
        ContractionMap {
            block_of,
            center_of: centers.to_vec(),
            attach,
            preimage,
        },
    ))
}

/// Path inside one block from `from` to `to`, through the center when both
/// are leaves. Returns the vertices after `from` and the edges used.
fn block_path(cm: &ContractionMap, block: usize, from: VertexId, to: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
    let center = cm.center_of[block];
    if from == to {
        (vec![], vec![])
    } else if from == center {
        (vec![to], vec![cm.attach[to].unwrap()])
    } else if to == center {
        (vec![to], vec![cm.attach[from].unwrap()])
    } else {
        (
            vec![center, to],
            vec![cm.attach[from].unwrap(), cm.attach[to].unwrap()],
        )
    }
}

/// Replaces every block on a contracted cycle by a path of at most two edges.
/// The lifted cycle is checked to be a rainbow cycle of `g` no longer than
/// three times the contracted one; anything else is a [`ContractionError::LiftFailure`].
pub fn lift_cycle(
    cm: &ContractionMap,
    g: &ColoredGraph,
    c: &CycleCertificate,
) -> Result<CycleCertificate, ContractionError> {
    let len = c.edge_ids.len();
    if len == 0 || c.vertices.len() != len {
        return Err(ContractionError::LiftFailure("malformed contracted cycle".into()));
    }
    // (entry vertex, exit vertex) for every block on the cycle
    let mut exits = Vec::with_capacity(len);
    let mut entries = vec![0; len];
    for j in 0..len {
        let (block, next) = (c.vertices[j], c.vertices[(j + 1) % len]);
        let pre = *cm
            .preimage
            .get(c.edge_ids[j])
            .ok_or_else(|| ContractionError::LiftFailure(format!("unknown contracted edge {}", c.edge_ids[j])))?;
        let e = g.edge(pre);
        let (x, y) = if len == 1 || cm.block_of[e.u] == Some(block) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        if cm.block_of[x] != Some(block) || cm.block_of[y] != Some(next) {
            return Err(ContractionError::LiftFailure(format!(
                "contracted edge {} does not join blocks {block} and {next}",
                c.edge_ids[j]
            )));
        }
        exits.push((x, pre));
        entries[(j + 1) % len] = y;
    }

    let mut vertices = Vec::new();
    let mut edge_ids = Vec::new();
    for j in 0..len {
        let (exit, pre) = exits[j];
        vertices.push(entries[j]);
        let (vs, es) = block_path(cm, c.vertices[j], entries[j], exit);
        vertices.extend(vs);
        edge_ids.extend(es);
        edge_ids.push(pre);
    }
    let lifted = CycleCertificate::new(vertices, edge_ids, true);
    if !verify_rainbow_cycle(g, &lifted) {
        return Err(ContractionError::LiftFailure(format!(
            "lifted walk {:?} is not a rainbow cycle",
            lifted.vertices
        )));
    }
    if lifted.length > 3 * len {
        return Err(ContractionError::LiftFailure(format!(
            "lifted length {} exceeds three times {len}",
            lifted.length
        )));
    }
    Ok(lifted)
}
