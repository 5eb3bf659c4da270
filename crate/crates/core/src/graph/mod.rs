//! Edge-colored simple graphs, simple digraphs and cycle certificates.
//!
//! Vertex, edge and color ids are dense 0-based integers. Both graph types are
//! immutable once built; every constructor validates simplicity.

mod contract;
pub mod format;

pub use contract::{
    assign_to_centers, contract_stars, lift_cycle, ContractedEdge, ContractedGraph,
    ContractionError, ContractionMap,
};

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: VertexId },
    #[error("edge {index} repeats the vertex pair {{{u}, {v}}}")]
    ParallelEdge { index: usize, u: VertexId, v: VertexId },
    #[error("negative id {value}")]
    NegativeId { value: i64 },
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("vertex {0} has no out-neighbours")]
    EmptyOutNeighborhood(VertexId),
}

fn pair_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

impl Edge {
    /// The endpoint opposite to `w`. `w` must be an endpoint.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

/// A simple undirected graph together with an edge coloring.
///
/// The number of colors is `1 + max color id` (zero without edges), so color
/// classes may be empty unless the graph has been checked with
/// [`ColoredGraph::validate_classes`].
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    num_colors: usize,
    classes: Vec<Vec<EdgeId>>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    pairs: HashMap<(VertexId, VertexId), EdgeId>,
    incidence: HashMap<(VertexId, Color), usize>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.num_colors == other.num_colors
    }
}

impl Eq for ColoredGraph {}

impl ColoredGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Color)>,
    {
        let mut list = Vec::new();
        let mut adj = vec![Vec::new(); n];
        let mut pairs = HashMap::new();
        let mut incidence = HashMap::new();
        let mut num_colors = 0;
        for (index, (u, v, color)) in edges.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { index, vertex: u });
            }
            if pairs.insert(pair_key(u, v), index).is_some() {
                return Err(GraphError::ParallelEdge { index, u, v });
            }
            adj[u].push((v, index));
            adj[v].push((u, index));
            *incidence.entry((u, color)).or_insert(0) += 1;
            *incidence.entry((v, color)).or_insert(0) += 1;
            num_colors = num_colors.max(color + 1);
            list.push(Edge { u, v, color });
        }
        let mut classes = vec![Vec::new(); num_colors];
        for (id, e) in list.iter().enumerate() {
            classes[e.color].push(id);
        }
        Ok(ColoredGraph {
            n,
            edges: list,
            num_colors,
            classes,
            adj,
            pairs,
            incidence,
        })
    }

    /// Builds from signed ids, rejecting negatives. Used by parsers reading
    /// untrusted input.
    pub fn from_signed(n: i64, edges: &[(i64, i64, i64)]) -> Result<Self, GraphError> {
        let n = to_id(n)?;
        let mut converted = Vec::with_capacity(edges.len());
        for &(u, v, c) in edges {
            converted.push((to_id(u)?, to_id(v)?, to_id(c)?));
        }
        Self::new(n, converted)
    }

    /// A graph where every edge carries color 0.
    pub fn uncolored<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::new(n, pairs.into_iter().map(|(u, v)| (u, v, 0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn color(&self, id: EdgeId) -> Color {
        self.edges[id].color
    }

    /// Edge ids of color `c`, ascending. Empty for colors out of range.
    pub fn class(&self, c: Color) -> &[EdgeId] {
        self.classes.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    /// `(neighbour, edge id)` pairs at `v`, in edge insertion order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.pairs.get(&pair_key(u, v)).copied()
    }

    /// Number of edges of color `c` incident to `v`.
    pub fn incidence(&self, v: VertexId, c: Color) -> usize {
        self.incidence.get(&(v, c)).copied().unwrap_or(0)
    }

    /// True iff the graph has exactly `required` nonempty color classes, they
    /// are the colors `0..required`, and each holds at least `min_size` edges.
    pub fn validate_classes(&self, min_size: usize, required: usize) -> bool {
        self.num_colors == required && self.classes.iter().all(|c| !c.is_empty() && c.len() >= min_size)
    }

    /// Smallest class size, or `None` without colors.
    pub fn min_class_size(&self) -> Option<usize> {
        self.classes.iter().map(Vec::len).min()
    }

    /// Induced-style restriction: keeps the edges selected by `keep`, drops
    /// vertices in `removed`, and relabels the survivors and colors densely.
    /// Returns the new graph together with the vertex and edge back-maps.
    pub fn restrict(
        &self,
        removed: &HashSet<VertexId>,
        mut keep: impl FnMut(EdgeId, &Edge) -> bool,
    ) -> (ColoredGraph, Vec<VertexId>, Vec<EdgeId>) {
        let mut vertex_back = Vec::new();
        let mut new_id = vec![usize::MAX; self.n];
        for (v, id) in new_id.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *id = vertex_back.len();
                vertex_back.push(v);
            }
        }
        let mut color_id: HashMap<Color, Color> = HashMap::new();
        let mut edge_back = Vec::new();
        let mut kept = Vec::new();
        // Colors are renumbered in order of first surviving appearance by color id.
        let mut survivors: Vec<(EdgeId, Edge)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, e)| !removed.contains(&e.u) && !removed.contains(&e.v) && keep(*id, e))
            .map(|(id, e)| (id, *e))
            .collect();
        let mut colors: Vec<Color> = survivors.iter().map(|(_, e)| e.color).collect();
        colors.sort_unstable();
        colors.dedup();
        for (i, c) in colors.into_iter().enumerate() {
            color_id.insert(c, i);
        }
        for (id, e) in survivors.drain(..) {
            kept.push((new_id[e.u], new_id[e.v], color_id[&e.color]));
            edge_back.push(id);
        }
        let g = ColoredGraph::new(vertex_back.len(), kept).expect("restriction of a simple graph is simple");
        (g, vertex_back, edge_back)
    }
}

fn to_id(x: i64) -> Result<usize, GraphError> {
    usize::try_from(x).map_err(|_| GraphError::NegativeId { value: x })
}

/// A simple digraph: no loops and at most one arc per unordered pair.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<(VertexId, usize)>>,
    incoming: Vec<Vec<(VertexId, usize)>>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (index, (u, v)) in arcs.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { index, vertex: u });
            }
            if !seen.insert(pair_key(u, v)) {
                return Err(GraphError::ParallelEdge { index, u, v });
            }
            out[u].push((v, index));
            incoming[v].push((u, index));
            list.push((u, v));
        }
        Ok(Digraph {
            n,
            arcs: list,
            out,
            incoming,
        })
    }

    pub fn from_signed(n: i64, arcs: &[(i64, i64)]) -> Result<Self, GraphError> {
        let n = to_id(n)?;
        let mut converted = Vec::with_capacity(arcs.len());
        for &(u, v) in arcs {
            converted.push((to_id(u)?, to_id(v)?));
        }
        Self::new(n, converted)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    /// `(head, arc id)` pairs leaving `v`.
    pub fn out_arcs(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.out[v]
    }

    /// `(tail, arc id)` pairs entering `v`.
    pub fn in_arcs(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.incoming[v]
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v].iter().map(|&(w, _)| w)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Turns a digraph into a colored graph whose color `v` is the out-star of
/// `v`. Directed cycles become rainbow cycles of the same length.
pub fn from_digraph(d: &Digraph) -> Result<ColoredGraph, GraphError> {
    if let Some(v) = (0..d.n()).find(|&v| d.out_degree(v) == 0) {
        return Err(GraphError::EmptyOutNeighborhood(v));
    }
    ColoredGraph::new(d.n(), d.arcs().iter().map(|&(u, v)| (u, v, u)))
}

/// A closed walk claimed to be a cycle: `edge_ids[i]` joins `vertices[i]`
/// and `vertices[(i + 1) % len]`. For digraphs the ids refer to arcs.
///
/// For contracted multigraphs a loop is a one-vertex certificate and a
/// parallel pair a two-vertex one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub vertices: Vec<VertexId>,
    pub edge_ids: Vec<EdgeId>,
    pub rainbow: bool,
    pub length: usize,
}

impl CycleCertificate {
    pub fn new(vertices: Vec<VertexId>, edge_ids: Vec<EdgeId>, rainbow: bool) -> Self {
        let length = edge_ids.len();
        CycleCertificate {
            vertices,
            edge_ids,
            rainbow,
            length,
        }
    }

    /// Rotates so the smallest vertex comes first and, for undirected
    /// cycles, orients toward the smaller of its two neighbours.
    pub fn canonical(mut self, directed: bool) -> Self {
        let len = self.vertices.len();
        if len == 0 || self.edge_ids.len() != len {
            return self;
        }
        let start = (0..len).min_by_key(|&i| self.vertices[i]).unwrap();
        self.vertices.rotate_left(start);
        self.edge_ids.rotate_left(start);
        if !directed && len > 2 && self.vertices[len - 1] < self.vertices[1] {
            self.vertices[1..].reverse();
            self.edge_ids.reverse();
        }
        self
    }
}
