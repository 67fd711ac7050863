//! Exhaustive minimum weak edge depth over multisets of pairwise-touching
//! connected subsets. Clique symmetry means an embedding is determined by
//! how many clique vertices go to each subset, so the search runs over
//! non-decreasing index sequences. This is the independent oracle for the
//! integer-programming path.
//!
//! Two reductions keep the search small without losing exactness: a
//! subset whose edge hits contain another's and whose touch row is
//! contained in that other's can never be needed (swapping it out never
//! raises any load and never breaks touching), and a branch dies once the
//! remaining picks cannot keep the average edge load under the incumbent.

use super::Embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Default cap on the number of candidate multisets.
pub const DEFAULT_MULTISET_BUDGET: u128 = 10_000_000;

pub fn min_wed_bruteforce(h: &Hypergraph, k: usize) -> Result<(usize, Embedding)> {
    min_wed_bruteforce_with_budget(h, k, DEFAULT_MULTISET_BUDGET)
}

pub fn min_wed_bruteforce_with_budget(
    h: &Hypergraph,
    k: usize,
    budget: u128,
) -> Result<(usize, Embedding)> {
    if k == 0 {
        return Err(Error::input("clique size must be at least 1"));
    }
    let subsets = h.connected_subsets();
    let m = subsets.len();
    let candidates = multisets(m as u128, k as u128);
    if candidates > budget {
        return Err(Error::resource(format!(
            "{candidates} candidate multisets exceed the budget of {budget}"
        )));
    }

    let edge_count = h.edge_count();
    assert!(edge_count <= 64, "edge-mask search supports at most 64 hyperedges");
    // per subset: mask of hyperedges it meets
    let hits: Vec<u64> = subsets
        .iter()
        .map(|&s| {
            h.edges()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e.intersects(s))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let blocks = m.div_ceil(64);
    let touch_rows: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row = vec![0u64; blocks];
            for j in 0..m {
                if h.touches(subsets[i], subsets[j]).expect("subsets are in range") {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    // dominance: drop j when some i hits no more edges, touches no less,
    // and wins the tie on index
    let kept: Vec<usize> = (0..m)
        .filter(|&j| {
            !(0..m).any(|i| {
                i != j
                    && hits[i] & !hits[j] == 0
                    && touch_rows[j]
                        .iter()
                        .zip(&touch_rows[i])
                        .all(|(tj, ti)| tj & !ti == 0)
                    && (hits[i] != hits[j]
                        || touch_rows[i] != touch_rows[j]
                        || i < j)
            })
        })
        .collect();

    // heavier hitters first: raises loads early and prunes sooner
    let mut order = kept;
    order.sort_by_key(|&i| (std::cmp::Reverse(hits[i].count_ones()), i));
    let r = order.len();
    let ord_hits: Vec<u64> = order.iter().map(|&i| hits[i]).collect();
    let ord_counts: Vec<usize> =
        ord_hits.iter().map(|h| h.count_ones() as usize).collect();
    let ord_touch: Vec<Vec<bool>> = order
        .iter()
        .map(|&i| {
            order
                .iter()
                .map(|&j| touch_rows[i][j / 64] & (1 << (j % 64)) != 0)
                .collect()
        })
        .collect();
    // cheapest remaining hit count from each position onward
    let mut suffix_min = vec![usize::MAX; r + 1];
    for i in (0..r).rev() {
        suffix_min[i] = suffix_min[i + 1].min(ord_counts[i]);
    }

    // the greedy multiset starts the search with a verified upper bound;
    // the exhaustive pass below only needs to look for strictly better
    let (greedy_wed, greedy_choice) = greedy_multiset(k, &ord_hits, &ord_touch, edge_count);
    for a in 0..greedy_choice.len() {
        for b in (a + 1)..greedy_choice.len() {
            assert!(
                ord_touch[greedy_choice[a]][greedy_choice[b]],
                "greedy produced a non-touching pair"
            );
        }
    }

    struct Search<'a> {
        hits: &'a [u64],
        counts_of: &'a [usize],
        touch: &'a [Vec<bool>],
        suffix_min: &'a [usize],
        m: usize,
        k: usize,
        edge_count: usize,
        best: usize,
        best_choice: Vec<usize>,
        counts: Vec<usize>,
        choice: Vec<usize>,
        total: usize,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, current_max: usize) {
            if self.choice.len() == self.k {
                if current_max < self.best {
                    self.best = current_max;
                    self.best_choice = self.choice.clone();
                }
                return;
            }
            let remaining = self.k - self.choice.len();
            for i in start..self.m {
                if !self.choice.iter().all(|&j| self.touch[j][i]) {
                    continue;
                }
                // every further pick loads at least suffix_min edges, so
                // the final maximum is at least the average load
                let floor = (self.total
                    + self.counts_of[i]
                    + (remaining - 1) * self.suffix_min[i])
                    .div_ceil(self.edge_count);
                if floor >= self.best {
                    continue;
                }
                let mut mask = self.hits[i];
                let mut new_max = current_max;
                while mask != 0 {
                    let e = mask.trailing_zeros() as usize;
                    mask &= mask - 1;
                    self.counts[e] += 1;
                    if self.counts[e] > new_max {
                        new_max = self.counts[e];
                    }
                }
                // loads only grow along a branch, so prune at the incumbent
                if new_max < self.best {
                    self.choice.push(i);
                    self.total += self.counts_of[i];
                    self.run(i, new_max);
                    self.total -= self.counts_of[i];
                    self.choice.pop();
                }
                let mut mask = self.hits[i];
                while mask != 0 {
                    let e = mask.trailing_zeros() as usize;
                    mask &= mask - 1;
                    self.counts[e] -= 1;
                }
            }
        }
    }

    let mut search = Search {
        hits: &ord_hits,
        counts_of: &ord_counts,
        touch: &ord_touch,
        suffix_min: &suffix_min,
        m: r,
        k,
        edge_count,
        best: greedy_wed,
        best_choice: greedy_choice,
        counts: vec![0; edge_count],
        choice: Vec::with_capacity(k),
        total: 0,
    };
    search.run(0, 0);

    let mut images: Vec<VertexSet> =
        search.best_choice.iter().map(|&i| subsets[order[i]]).collect();
    images.sort_by(VertexSet::canonical_cmp);
    Ok((search.best, Embedding::new(images)?))
}

/// Greedy pairwise-touching multiset: each step takes the candidate that
/// keeps the maximum edge load smallest, ties resolved by candidate order.
/// Always succeeds (a chosen subset touches itself). Returns the achieved
/// depth and the chosen candidate indices.
pub(crate) fn greedy_multiset(
    k: usize,
    hits: &[u64],
    touch: &[Vec<bool>],
    edge_count: usize,
) -> (usize, Vec<usize>) {
    let m = hits.len();
    let mut counts = vec![0usize; edge_count];
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut current_max = 0usize;
    for _ in 0..k {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..m {
            if !chosen.iter().all(|&j| touch[j][i]) {
                continue;
            }
            let mut new_max = current_max;
            let mut mask = hits[i];
            while mask != 0 {
                let e = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                if counts[e] + 1 > new_max {
                    new_max = counts[e] + 1;
                }
            }
            match best {
                Some((bm, _)) if bm <= new_max => {}
                _ => best = Some((new_max, i)),
            }
        }
        let (new_max, pick) = best.expect("a chosen subset always touches itself");
        let mut mask = hits[pick];
        while mask != 0 {
            let e = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            counts[e] += 1;
        }
        current_max = new_max;
        chosen.push(pick);
    }
    (current_max, chosen)
}

/// Number of multisets of size k over m items: C(m + k - 1, k), saturating.
fn multisets(m: u128, k: u128) -> u128 {
    let mut result: u128 = 1;
    for i in 0..k {
        let num = m.saturating_add(i);
        result = match result.checked_mul(num) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    result
}
