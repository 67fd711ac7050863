//! Weighted k-clique aggregation: the semiring sum over all k-vertex
//! subsets whose pairs are all edges, of the semiring product of the pair
//! weights.

use super::{Semiring, WeightedGraph};
use crate::error::{Error, Result};

pub fn kclique_direct<S: Semiring>(
    g: &WeightedGraph<S::Value>,
    k: usize,
    semiring: &S,
) -> Result<S::Value> {
    if k == 0 {
        return Err(Error::input("clique size must be at least 1"));
    }
    let mut total = semiring.zero();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn rec<S: Semiring>(
        g: &WeightedGraph<S::Value>,
        semiring: &S,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        product: S::Value,
        total: &mut S::Value,
    ) {
        if chosen.len() == k {
            *total = semiring.plus(total, &product);
            return;
        }
        let needed = k - chosen.len();
        let n = g.vertex_count();
        if start + needed > n {
            return;
        }
        for v in start..=(n - needed) {
            if !chosen.iter().all(|&u| g.has_edge(u, v)) {
                continue;
            }
            let mut product = product.clone();
            for &u in chosen.iter() {
                let w = g.weight(u, v).expect("adjacency checked");
                product = semiring.times(&product, w);
            }
            chosen.push(v);
            rec(g, semiring, k, v + 1, chosen, product, total);
            chosen.pop();
        }
    }

    rec(g, semiring, k, 0, &mut chosen, semiring.one(), &mut total);
    Ok(total)
}
