//! Short rainbow cycles in edge-colored graphs.
//!
//! - [`graph`]: colored graphs, digraphs, certificates, star contraction, text formats
//! - [`search`]: exact girth, directed girth and rainbow girth
//! - [`bounds`]: closed-form bounds and numeric checks of scalar inequalities
//! - [`reductions`]: hitting sets, colorful stars, domination and the two pipelines
//! - [`generators`]: seeded instance families
//! - [`harness`]: verification campaigns with JSONL logs

pub mod bounds;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod reductions;
pub mod search;
pub mod seed;

pub use graph::format::{parse_instance, Instance};
pub use graph::{from_digraph, Color, ColoredGraph, CycleCertificate, Digraph, EdgeId, GraphError, VertexId};
pub use reductions::{pipeline_main, pipeline_n_plus_k, PipelineParams, PipelineReport};
pub use search::{SearchError, SearchLimits};
