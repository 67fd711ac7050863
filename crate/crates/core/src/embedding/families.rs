//! Named query families with canonical vertex labels, and their
//! catalogued optimal clique embeddings.

use super::Embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// The catalogued hypergraph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Cycle of length `l >= 3` with binary edges.
    Cycle(usize),
    /// Complete bipartite graph K_{m,n}, sides `x1..xm` and `y1..yn`.
    CompleteBipartite(usize, usize),
    /// `l` vertices with one hyperedge per subset of size exactly `k`,
    /// `1 < k <= l`.
    Hyperclique(usize, usize),
    /// The `l`-clique where vertex `x1` is adjacent to `x2..x_{k+1}` only,
    /// `1 <= k < l-1`; all other pairs are edges.
    AlmostClique(usize, usize),
    /// The eight-vertex boat query: two hubs x1, x8 joined by three
    /// length-three paths.
    Boat,
    /// The six-vertex hyper-boat query: two ternary edges joined by a
    /// perfect matching.
    HyperBoat,
}

impl Family {
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        match *self {
            Family::Cycle(l) => {
                if l < 3 {
                    return Err(Error::input("cycle length must be at least 3"));
                }
                let labels = (1..=l).map(|i| format!("x{i}")).collect();
                let edges = (0..l)
                    .map(|i| VertexSet::from_iter([i, (i + 1) % l]))
                    .collect();
                Hypergraph::with_labels(labels, edges)
            }
            Family::CompleteBipartite(m, n) => {
                if m < 1 || n < 1 {
                    return Err(Error::input("both sides must be non-empty"));
                }
                let mut labels: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
                labels.extend((1..=n).map(|i| format!("y{i}")));
                let mut edges = Vec::with_capacity(m * n);
                for i in 0..m {
                    for j in 0..n {
                        edges.push(VertexSet::from_iter([i, m + j]));
                    }
                }
                Hypergraph::with_labels(labels, edges)
            }
            Family::Hyperclique(l, k) => {
                if !(1 < k && k <= l) {
                    return Err(Error::input("hyperclique requires 1 < k <= l"));
                }
                let labels = (1..=l).map(|i| format!("x{i}")).collect();
                let mut edges: Vec<VertexSet> = (1u32..(1 << l))
                    .filter(|m| m.count_ones() as usize == k)
                    .map(VertexSet::from_bits)
                    .collect();
                edges.sort_by(VertexSet::canonical_cmp);
                Hypergraph::with_labels(labels, edges)
            }
            Family::AlmostClique(l, k) => {
                if !(1 <= k && k + 1 < l) {
                    return Err(Error::input("almost-clique requires 1 <= k < l-1"));
                }
                let labels = (1..=l).map(|i| format!("x{i}")).collect();
                let mut edges = Vec::new();
                for j in 1..=k {
                    edges.push(VertexSet::from_iter([0, j]));
                }
                for u in 1..l {
                    for v in (u + 1)..l {
                        edges.push(VertexSet::from_iter([u, v]));
                    }
                }
                edges.sort_by(VertexSet::canonical_cmp);
                Hypergraph::with_labels(labels, edges)
            }
            Family::Boat => {
                let labels = (1..=8).map(|i| format!("x{i}")).collect();
                let pairs = [
                    (0, 1),
                    (0, 3),
                    (0, 5),
                    (1, 2),
                    (3, 4),
                    (5, 6),
                    (2, 7),
                    (4, 7),
                    (6, 7),
                ];
                let edges = pairs.iter().map(|&(u, v)| VertexSet::from_iter([u, v])).collect();
                Hypergraph::with_labels(labels, edges)
            }
            Family::HyperBoat => {
                let labels = ["y1", "y2", "y3", "z1", "z2", "z3"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                let edges = vec![
                    VertexSet::from_iter([0, 1, 2]),
                    VertexSet::from_iter([3, 4, 5]),
                    VertexSet::from_iter([0, 3]),
                    VertexSet::from_iter([1, 4]),
                    VertexSet::from_iter([2, 5]),
                ];
                Hypergraph::with_labels(labels, edges)
            }
        }
    }

    /// The catalogued optimal embedding for the family, as inverse images
    /// over the canonical vertex order. Returns an input error when no
    /// construction is catalogued for the parameters.
    pub fn witness_embedding(&self) -> Result<Embedding> {
        match *self {
            Family::Cycle(l) => {
                if l < 3 {
                    return Err(Error::input("cycle length must be at least 3"));
                }
                if l % 2 == 1 {
                    // clique size l; vertex x_i receives the cyclic segment
                    // of (l-1)/2 clique vertices starting at i
                    let seg = (l - 1) / 2;
                    let pre: Vec<Vec<usize>> = (0..l)
                        .map(|i| (0..seg).map(|t| ((i + t) % l) + 1).collect())
                        .collect();
                    Embedding::from_preimages(l, &pre)
                } else {
                    // clique size l-1; the odd construction on x1..x_{l-1},
                    // with x_l duplicating x_{l-1}
                    let k = l - 1;
                    let seg = l / 2 - 1;
                    let mut pre: Vec<Vec<usize>> = (0..k)
                        .map(|i| (0..seg).map(|t| ((i + t) % k) + 1).collect())
                        .collect();
                    pre.push(pre[k - 1].clone());
                    Embedding::from_preimages(k, &pre)
                }
            }
            Family::CompleteBipartite(2, l) if l >= 2 => {
                // clique size 2l-1: x1 takes 1..l-1, x2 takes l..2l-2,
                // y_i pairs them up, y_l takes the last clique vertex alone
                let k = 2 * l - 1;
                let mut pre: Vec<Vec<usize>> = Vec::with_capacity(2 + l);
                pre.push((1..l).collect());
                pre.push((l..(2 * l - 1)).collect());
                for i in 1..l {
                    pre.push(vec![i, l + i - 1]);
                }
                pre.push(vec![2 * l - 1]);
                Embedding::from_preimages(k, &pre)
            }
            Family::CompleteBipartite(3, 3) => {
                let pre: Vec<Vec<usize>> = vec![
                    vec![1, 3, 5],
                    vec![2, 4, 6],
                    vec![7, 8],
                    vec![1, 2],
                    vec![3, 4],
                    vec![5, 6],
                ];
                Embedding::from_preimages(8, &pre)
            }
            Family::CompleteBipartite(_, _) => Err(Error::input(
                "no catalogued embedding for this bipartite shape",
            )),
            Family::Hyperclique(l, k) => {
                if !(1 < k && k <= l) {
                    return Err(Error::input("hyperclique requires 1 < k <= l"));
                }
                let pre: Vec<Vec<usize>> = (0..l).map(|i| vec![i + 1]).collect();
                Embedding::from_preimages(l, &pre)
            }
            Family::AlmostClique(l, k) => {
                if !(1 <= k && k + 1 < l) {
                    return Err(Error::input("almost-clique requires 1 <= k < l-1"));
                }
                // clique size l-1 on the full clique part x2..xl; x1 unused
                let mut pre: Vec<Vec<usize>> = vec![vec![]];
                pre.extend((0..(l - 1)).map(|i| vec![i + 1]));
                Embedding::from_preimages(l - 1, &pre)
            }
            Family::Boat => {
                // optimal 17-clique embedding with weak edge depth 9,
                // produced by the exact fractional program for this query
                let pre: Vec<Vec<usize>> = boat_preimages();
                Embedding::from_preimages(17, &pre)
            }
            Family::HyperBoat => {
                let pre: Vec<Vec<usize>> = vec![
                    vec![1, 2, 3],
                    vec![2, 3],
                    vec![1, 4],
                    vec![7],
                    vec![5, 6],
                    vec![4, 5, 6],
                ];
                Embedding::from_preimages(7, &pre)
            }
        }
    }

    /// Weak edge depth of the catalogued witness.
    pub fn witness_wed(&self) -> Result<usize> {
        Ok(match *self {
            Family::Cycle(l) if l >= 3 => (l + 1) / 2,
            Family::CompleteBipartite(2, l) if l >= 2 => l,
            Family::CompleteBipartite(3, 3) => 4,
            Family::Hyperclique(_, k) => k,
            Family::AlmostClique(_, _) => 2,
            Family::Boat => 9,
            Family::HyperBoat => 4,
            _ => return Err(Error::input("no catalogued embedding for these parameters")),
        })
    }
}

/// Inverse images of the optimal boat-query embedding (clique size 17,
/// weak edge depth 9). Obtained by scaling the exact fractional optimum
/// (denominator 17) to an integral witness: two clique vertices on
/// {x1,x2}, one on {x2,x3}, one on {x1,x4,x5}, four on {x1,x4,x6}, one on
/// {x1,x6,x7}, three on {x3,x5,x8}, one on {x4,x5,x8}, three on
/// {x3,x7,x8}, one on {x6,x7,x8}.
fn boat_preimages() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 4, 5, 6, 7, 8, 9],
        vec![1, 2, 3],
        vec![3, 10, 11, 12, 14, 15, 16],
        vec![4, 5, 6, 7, 8, 13],
        vec![4, 10, 11, 12, 13],
        vec![5, 6, 7, 8, 9, 17],
        vec![9, 14, 15, 16, 17],
        vec![10, 11, 12, 13, 14, 15, 16, 17],
    ]
}
