//! The test oracles themselves, on graphs whose answers are known by hand.

mod oracles;

use oracles::*;
use rainbow_core::{ColoredGraph, Digraph};

#[test]
fn subset_oracle_on_hand_examples() {
    let tri = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 1), (2, 0, 2)]).unwrap();
    assert_eq!(rainbow_girth_by_subsets(&tri), Some(3));
    let mono = ColoredGraph::new(3, [(0, 1, 0), (1, 2, 0), (2, 0, 1)]).unwrap();
    assert_eq!(rainbow_girth_by_subsets(&mono), None);
    // rainbow 4-cycle with a monochromatic triangle hanging off vertex 0
    let g = ColoredGraph::new(6, [(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 0, 3), (0, 4, 4), (4, 5, 4), (5, 0, 4)]).unwrap();
    assert_eq!(rainbow_girth_by_subsets(&g), Some(4));
}

#[test]
fn girth_oracles_on_hand_examples() {
    let c5 = ColoredGraph::uncolored(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
    assert_eq!(girth_by_edge_removal(&c5), Some(5));
    let path = ColoredGraph::uncolored(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(girth_by_edge_removal(&path), None);
    let d = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    assert_eq!(directed_girth_floyd(&d), Some(3));
    let dag = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(directed_girth_floyd(&dag), None);
}

#[test]
fn wilson_interval_reference() {
    // 50/100 at z = 1.96: textbook interval (0.4038, 0.5962)
    let (lo, hi) = wilson_interval(50, 100, 1.96);
    assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
}
