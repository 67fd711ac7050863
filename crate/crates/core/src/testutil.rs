//! Shared fixtures for unit tests.

use crate::hypergraph::{Hypergraph, VertexSet};

/// Cycle graph with binary edges {i, i+1 mod n}.
pub(crate) fn cycle(n: usize) -> Hypergraph {
    let edges: Vec<VertexSet> = (0..n)
        .map(|i| VertexSet::from_iter([i, (i + 1) % n]))
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

/// Hypergraph with edges {x1,x2,x3}, {x1,y}, {x2,y}, {x3,y}: a ternary edge
/// whose vertices all attach to a hub. Its 5-clique embedding with
/// 4,5 -> {y} has weak edge depth 3.
pub(crate) fn star_with_triple() -> Hypergraph {
    Hypergraph::with_labels(
        ["x1", "x2", "x3", "y"].iter().map(|s| s.to_string()).collect(),
        vec![
            VertexSet::from_iter([0, 1, 2]),
            VertexSet::from_iter([0, 3]),
            VertexSet::from_iter([1, 3]),
            VertexSet::from_iter([2, 3]),
        ],
    )
    .unwrap()
}
