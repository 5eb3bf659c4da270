use super::{DerivedParams, PipelineParams, ReductionError};
use crate::graph::{ColoredGraph, ContractionError, CycleCertificate};
use crate::search::verify_rainbow_cycle;
use serde::{Deserialize, Serialize};

/// Which branch of which construction produced the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Stopped before any branch was chosen.
    None,
    K1Shortcut,
    DominationDigraph,
    DeletionHittingSet,
    DeletionColorfulStars,
    HittingSetContraction,
    ColorfulStarContraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PreconditionFailed,
    NoCycleFound,
    SampleFailure,
    LiftFailure,
    InternalError,
}

impl Status {
    pub(crate) fn of(err: &ReductionError) -> Status {
        match err {
            ReductionError::Precondition(_) => Status::PreconditionFailed,
            ReductionError::NoCycleFound(_) => Status::NoCycleFound,
            ReductionError::SampleFailure { .. } => Status::SampleFailure,
            ReductionError::Contraction(ContractionError::LiftFailure(_)) => Status::LiftFailure,
            ReductionError::ColorNotHit(_) | ReductionError::Contraction(_) | ReductionError::Internal(_) => {
                Status::InternalError
            }
        }
    }
}

/// Intermediate quantities. Fields a run never reached stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Sizes {
    /// |S| of the hitting set.
    pub hitting_set: Option<usize>,
    /// |F|, one edge per represented color.
    pub representative_edges: Option<usize>,
    pub star_count: Option<usize>,
    pub colors_missing: Option<usize>,
    pub claim_few_missing: Option<bool>,
    pub claim_few_stars: Option<bool>,
    pub contracted_order: Option<usize>,
    pub contracted_size: Option<usize>,
    pub contracted_girth: Option<usize>,
    pub loops: Option<usize>,
    pub parallel_pairs: Option<usize>,
    /// |S|, the dominated vertices.
    pub dominated: Option<usize>,
    /// r = |H|, the non-dominated vertices.
    pub h_size: Option<usize>,
    pub min_out_degree: Option<usize>,
    /// |T|
    pub deleted: Option<usize>,
    /// Y
    pub bad_colors: Option<usize>,
    pub deletion_attempts: Option<u32>,
    /// Every dominating color kept at least t/100 edges after deletion.
    pub dominating_retained: Option<bool>,
    pub reduced_order: Option<usize>,
    pub reduced_colors: Option<usize>,
    /// The instance has at least `n + k` colors, as the contraction
    /// argument assumes; at desk scale this is informational only.
    pub n_plus_k_colors: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    /// `"n_plus_k"` or `"main"`.
    pub pipeline: String,
    pub branch: Branch,
    pub status: Status,
    pub seed: u64,
    pub params: PipelineParams,
    pub derived: DerivedParams,
    pub n: usize,
    pub k: usize,
    pub num_colors: usize,
    pub sizes: Sizes,
    pub certificate: Option<CycleCertificate>,
    /// Length bound certified by this run.
    pub bound: Option<usize>,
    /// n / k, the theorems' bound (no ceiling).
    pub theorem_bound: f64,
    /// ceil(n / k), the conjecture's bound.
    pub conjecture_bound: usize,
    pub detail: Option<String>,
}

impl PipelineReport {
    pub(crate) fn new(pipeline: &str, g: &ColoredGraph, k: usize, p: &PipelineParams, seed: u64) -> Self {
        PipelineReport {
            pipeline: pipeline.to_string(),
            branch: Branch::None,
            status: Status::Ok,
            seed,
            params: p.clone(),
            derived: p.derived(g.n(), k),
            n: g.n(),
            k,
            num_colors: g.num_colors(),
            sizes: Sizes::default(),
            certificate: None,
            bound: None,
            theorem_bound: g.n() as f64 / k.max(1) as f64,
            conjecture_bound: g.n().div_ceil(k.max(1)),
            detail: None,
        }
    }

    pub(crate) fn fail(&mut self, err: ReductionError) {
        self.status = Status::of(&err);
        self.detail = Some(err.to_string());
        self.certificate = None;
        self.bound = None;
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// A report is sound when it either carries no certificate or carries a
    /// rainbow cycle of `g` within its certified bound.
    pub fn is_sound(&self, g: &ColoredGraph) -> bool {
        match (&self.certificate, self.bound) {
            (None, None) => self.status != Status::Ok,
            (Some(c), Some(b)) => self.status == Status::Ok && verify_rainbow_cycle(g, c) && c.length <= b,
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
