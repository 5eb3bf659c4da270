//! End-to-end pipelines.
//!
//! `pipeline_n_plus_k` contracts a one-edge-per-color subgraph around either a
//! color hitting set or the centers of a maximal colorful star collection,
//! finds a short cycle in the contracted multigraph (a loop or parallel pair
//! if there is one, otherwise a shortest cycle) and lifts it back. Every
//! edge of the subgraph has its own color, so every cycle found is rainbow.
//!
//! `pipeline_main` splits on color domination: if almost every vertex is
//! dominated it reads a shortest directed cycle off the domination digraph,
//! otherwise it deletes a random small set, drops the colors that lost too
//! many edges, and hands the rest to the contraction pipeline.

use super::domination::{deletion_sample, dominated_map, domination_digraph, surviving_edges};
use super::hitting::{hitting_set_with_rng, representative_subgraph};
use super::stars::colorful_star_collection;
use super::{Branch, PipelineParams, PipelineReport, ReductionError, Sizes};
use crate::graph::{assign_to_centers, contract_stars, lift_cycle, Color, ColoredGraph, CycleCertificate, EdgeId};
use crate::search::{directed_girth, undirected_girth, verify_rainbow_cycle};
use crate::seed::{rng_from_seed, Rng};
use std::collections::{BTreeMap, HashSet};

/// The hitting-set regime applies when `28 k log k <= n`; otherwise the
/// colorful-star regime does.
pub fn uses_hitting_regime(n: usize, k: usize) -> bool {
    k <= 1 || 28.0 * k as f64 * (k as f64).log2() <= n as f64
}

struct Found {
    certificate: CycleCertificate,
    bound: usize,
}

/// Smallest edge id of every nonempty color.
fn first_edge_per_color(g: &ColoredGraph) -> Vec<EdgeId> {
    g.classes().iter().filter_map(|class| class.first().copied()).collect()
}

fn contraction_core(g: &ColoredGraph, k: usize, p: &PipelineParams, rng: &mut Rng, sizes: &mut Sizes) -> Result<Found, ReductionError> {
    let (centers, sub_edges) = if uses_hitting_regime(g.n(), k) {
        let s = hitting_set_with_rng(g, k, p, rng);
        sizes.hitting_set = Some(s.len());
        let f = representative_subgraph(g, &s)?;
        (s, f)
    } else {
        let coll = colorful_star_collection(g, k, p);
        sizes.star_count = Some(coll.stars.len());
        sizes.colors_missing = Some(coll.colors_missing);
        sizes.claim_few_missing = Some(coll.claim_few_missing);
        sizes.claim_few_stars = Some(coll.claim_few_stars);
        let mut first: BTreeMap<Color, EdgeId> = BTreeMap::new();
        for e in coll.edges() {
            let slot = first.entry(g.color(e)).or_insert(e);
            *slot = (*slot).min(e);
        }
        (coll.centers(), first.into_values().collect())
    };
    sizes.representative_edges = Some(sub_edges.len());
    if sub_edges.is_empty() {
        return Err(ReductionError::NoCycleFound("the representative subgraph is empty".into()));
    }

    let assignment = assign_to_centers(g, &sub_edges, &centers);
    let (cg, cm) = contract_stars(g, &sub_edges, &centers, &assignment)?;
    sizes.contracted_order = Some(cg.order);
    sizes.contracted_size = Some(cg.edges.len());
    sizes.loops = Some(cg.loops.len());
    sizes.parallel_pairs = Some(cg.parallel_pairs.len());

    let cycle = match cg.loop_cycle().or_else(|| cg.parallel_cycle()) {
        Some(c) => Some(c),
        None => {
            let simple = cg
                .as_simple()
                .ok_or_else(|| ReductionError::Internal("contracted graph without loops or parallels is not simple".into()))?;
            undirected_girth(&simple).map(|(_, c)| c)
        }
    };
    let Some(cycle) = cycle else {
        return Err(ReductionError::NoCycleFound(format!(
            "contracted graph on {} blocks with {} edges is acyclic",
            cg.order,
            cg.edges.len()
        )));
    };
    sizes.contracted_girth = Some(cycle.length);
    let certificate = lift_cycle(&cm, g, &cycle)?;
    Ok(Found {
        bound: 3 * cycle.length,
        certificate,
    })
}

/// Drops any certificate that does not check out against `g`.
fn finish(report: &mut PipelineReport, g: &ColoredGraph, result: Result<Found, ReductionError>) {
    match result {
        Ok(found) if verify_rainbow_cycle(g, &found.certificate) && found.certificate.length <= found.bound => {
            report.certificate = Some(found.certificate);
            report.bound = Some(found.bound);
        }
        Ok(found) => report.fail(ReductionError::Internal(format!(
            "emitted cycle {:?} failed verification against bound {}",
            found.certificate.vertices, found.bound
        ))),
        Err(err) => report.fail(err),
    }
}

/// Contraction pipeline for instances whose color classes all have at least
/// `p.class_size(k)` edges. Having `n + k` colors is recorded, not enforced.
pub fn pipeline_n_plus_k(g: &ColoredGraph, k: usize, p: &PipelineParams, seed: u64) -> PipelineReport {
    let mut report = PipelineReport::new("n_plus_k", g, k, p, seed);
    if k == 0 || g.num_colors() == 0 || !g.validate_classes(p.class_size(k), g.num_colors()) {
        report.fail(ReductionError::Precondition(format!(
            "need k >= 1 and nonempty colors with at least {} edges each",
            p.class_size(k)
        )));
        return report;
    }
    report.sizes.n_plus_k_colors = Some(g.num_colors() >= g.n() + k);
    report.branch = if uses_hitting_regime(g.n(), k) {
        Branch::HittingSetContraction
    } else {
        Branch::ColorfulStarContraction
    };
    let mut rng = rng_from_seed(seed);
    let result = contraction_core(g, k, p, &mut rng, &mut report.sizes);
    finish(&mut report, g, result);
    report
}

/// Pipeline for instances with exactly `n` colors of at least
/// `p.class_size(k)` edges each.
pub fn pipeline_main(g: &ColoredGraph, k: usize, p: &PipelineParams, seed: u64) -> PipelineReport {
    let mut report = PipelineReport::new("main", g, k, p, seed);
    if k == 0 || !g.validate_classes(p.class_size(k), g.n()) {
        report.fail(ReductionError::Precondition(format!(
            "need k >= 1 and exactly n = {} colors with at least {} edges each",
            g.n(),
            p.class_size(k)
        )));
        return report;
    }
    let result = main_branches(g, k, p, seed, &mut report);
    finish(&mut report, g, result);
    report
}

fn main_branches(g: &ColoredGraph, k: usize, p: &PipelineParams, seed: u64, report: &mut PipelineReport) -> Result<Found, ReductionError> {
    let n = g.n();
    if k == 1 {
        // n edges on n vertices always close a cycle
        report.branch = Branch::K1Shortcut;
        let chosen: HashSet<EdgeId> = first_edge_per_color(g).into_iter().collect();
        report.sizes.representative_edges = Some(chosen.len());
        let (sub, _, edge_back) = g.restrict(&HashSet::new(), |id, _| chosen.contains(&id));
        let (_, c) = undirected_girth(&sub)
            .ok_or_else(|| ReductionError::NoCycleFound("one edge per color is a forest".into()))?;
        let certificate = CycleCertificate::new(c.vertices, c.edge_ids.iter().map(|&e| edge_back[e]).collect(), true);
        return Ok(Found { certificate, bound: n });
    }

    let t_over_100 = p.t(k) / 100.0;
    let dm = dominated_map(g, p.domination_threshold(k));
    let r = n - dm.dominated.len();
    report.sizes.dominated = Some(dm.dominated.len());
    report.sizes.h_size = Some(r);

    if r as f64 <= t_over_100 {
        report.branch = Branch::DominationDigraph;
        let dd = domination_digraph(g, &dm)?;
        report.sizes.min_out_degree = Some(dd.digraph.min_out_degree());
        let (len, c) = directed_girth(&dd.digraph)
            .ok_or_else(|| ReductionError::NoCycleFound("the domination digraph is acyclic".into()))?;
        let certificate = CycleCertificate::new(
            c.vertices.iter().map(|&v| dd.vertices[v]).collect(),
            c.edge_ids.iter().map(|&a| dd.arc_edges[a]).collect(),
            true,
        );
        return Ok(Found { certificate, bound: len });
    }

    // provisional; refined once the reduced order is known
    report.branch = if uses_hitting_regime(n, k) {
        Branch::DeletionHittingSet
    } else {
        Branch::DeletionColorfulStars
    };
    let mut rng = rng_from_seed(seed);
    let sample = deletion_sample(g, &dm, k, p, &mut rng)?;
    report.sizes.deleted = Some(sample.deleted.len());
    report.sizes.bad_colors = Some(sample.bad_colors);
    report.sizes.deletion_attempts = Some(sample.attempts);
    let deleted: HashSet<_> = sample.deleted.iter().copied().collect();
    let survivors: Vec<usize> = (0..g.num_colors()).map(|c| surviving_edges(g, c, &deleted)).collect();
    report.sizes.dominating_retained = Some(
        dm.by_color
            .keys()
            .all(|&c| survivors[c] as f64 >= t_over_100),
    );

    let good = |c: Color| survivors[c] > 0 && survivors[c] as f64 >= t_over_100;
    let (reduced, vertex_back, edge_back) = g.restrict(&deleted, |_, e| good(e.color));
    report.sizes.reduced_order = Some(reduced.n());
    report.sizes.reduced_colors = Some(reduced.num_colors());
    report.sizes.n_plus_k_colors = Some(reduced.num_colors() >= reduced.n() + k);
    report.branch = if uses_hitting_regime(reduced.n(), k) {
        Branch::DeletionHittingSet
    } else {
        Branch::DeletionColorfulStars
    };
    if reduced.num_colors() == 0 {
        return Err(ReductionError::NoCycleFound("no color survived the deletion".into()));
    }

    // the surviving classes have t/100 edges, i.e. the inner constant is c/100
    let inner = PipelineParams { c: p.c / 100.0, ..p.clone() };
    let found = contraction_core(&reduced, k, &inner, &mut rng, &mut report.sizes)?;
    let c = found.certificate;
    Ok(Found {
        certificate: CycleCertificate::new(
            c.vertices.iter().map(|&v| vertex_back[v]).collect(),
            c.edge_ids.iter().map(|&e| edge_back[e]).collect(),
            true,
        ),
        bound: found.bound,
    })
}
