//! The constructive reductions: color hitting sets, representative-edge
//! contraction, colorful stars, color domination, random deletion, and the
//! two end-to-end pipelines that emit certified rainbow cycles.

mod domination;
mod hitting;
mod params;
mod pipeline;
mod report;
mod stars;

pub use domination::{
    count_bad_colors, deletion_sample, dominated_map, domination_digraph, draw_deletion_set, surviving_edges,
    DeletionSample, DominationDigraph, DominationMap,
};
pub use hitting::{find_color_hitting_set, hits_every_color, representative_subgraph};
pub use params::{DerivedParams, PipelineParams, DEFAULT_RETRY_CAP};
pub use pipeline::{pipeline_main, pipeline_n_plus_k, uses_hitting_regime};
pub use report::{Branch, PipelineReport, Sizes, Status};
pub use stars::{colorful_star_collection, Star, StarCollection};

use crate::graph::{Color, ContractionError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no edge of color {0} touches the vertex set")]
    ColorNotHit(Color),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no rainbow cycle found: {0}")]
    NoCycleFound(String),
    #[error("no acceptable sample after {attempts} attempts")]
    SampleFailure { attempts: u32 },
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error("internal consistency error: {0}")]
    Internal(String),
}
