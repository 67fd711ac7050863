//! Sum-of-product evaluators.

use std::collections::BTreeMap;
use std::fmt;

use super::{Semiring, SumProdInstance};
use crate::error::Result;
use crate::widths::join_forest;

/// Exact aggregate over all valuations by backtracking over stored factor
/// tuples: edges are joined in a static connected order (smallest table
/// first), and a partial valuation dies as soon as the next edge has no
/// matching non-zero tuple. The full domain product is never enumerated.
pub fn eval_bruteforce<S: Semiring>(
    inst: &SumProdInstance<S::Value>,
    semiring: &S,
) -> Result<S::Value> {
    inst.validate(semiring)?;
    let h = &inst.hypergraph;
    let order = join_order(inst);
    let edge_vars: Vec<Vec<usize>> =
        h.edges().iter().map(|e| e.iter().collect()).collect();

    // per ordered edge: which tuple positions are already bound, and an
    // index of entries keyed by the bound projection
    let mut bound_positions: Vec<Vec<usize>> = Vec::with_capacity(order.len());
    let mut indexes: Vec<BTreeMap<Vec<u64>, Vec<usize>>> = Vec::with_capacity(order.len());
    let mut seen: Vec<bool> = vec![false; h.vertex_count()];
    for &e in &order {
        let vars = &edge_vars[e];
        let bound: Vec<usize> =
            (0..vars.len()).filter(|&p| seen[vars[p]]).collect();
        let mut index: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for (i, (tuple, _)) in inst.factors[e].entries.iter().enumerate() {
            let key: Vec<u64> = bound.iter().map(|&p| tuple[p]).collect();
            index.entry(key).or_default().push(i);
        }
        bound_positions.push(bound);
        indexes.push(index);
        for &v in vars {
            seen[v] = true;
        }
    }

    struct Ctx<'a, S: Semiring> {
        inst: &'a SumProdInstance<S::Value>,
        semiring: &'a S,
        order: &'a [usize],
        edge_vars: &'a [Vec<usize>],
        bound_positions: &'a [Vec<usize>],
        indexes: &'a [BTreeMap<Vec<u64>, Vec<usize>>],
        assignment: Vec<Option<u64>>,
        total: S::Value,
    }

    fn rec<S: Semiring>(ctx: &mut Ctx<'_, S>, depth: usize, product: S::Value) {
        if depth == ctx.order.len() {
            ctx.total = ctx.semiring.plus(&ctx.total, &product);
            return;
        }
        let e = ctx.order[depth];
        let vars = &ctx.edge_vars[e];
        let key: Vec<u64> = ctx.bound_positions[depth]
            .iter()
            .map(|&p| ctx.assignment[vars[p]].expect("bound variable assigned"))
            .collect();
        let Some(matches) = ctx.indexes[depth].get(&key) else {
            return;
        };
        for &i in matches {
            let (tuple, value) = &ctx.inst.factors[e].entries[i];
            let mut newly: Vec<usize> = Vec::new();
            for (p, &v) in vars.iter().enumerate() {
                match ctx.assignment[v] {
                    Some(a) => debug_assert!(
                        a == tuple[p] || ctx.bound_positions[depth].contains(&p)
                    ),
                    None => {
                        ctx.assignment[v] = Some(tuple[p]);
                        newly.push(v);
                    }
                }
            }
            let product = ctx.semiring.times(&product, value);
            rec(ctx, depth + 1, product);
            for v in newly {
                ctx.assignment[v] = None;
            }
        }
    }

    let mut ctx = Ctx {
        inst,
        semiring,
        order: &order,
        edge_vars: &edge_vars,
        bound_positions: &bound_positions,
        indexes: &indexes,
        assignment: vec![None; h.vertex_count()],
        total: semiring.zero(),
    };
    rec(&mut ctx, 0, semiring.one());
    Ok(ctx.total)
}

/// Static join order: smallest table first, then repeatedly the smallest
/// table sharing a vertex with what is already joined (falling back to the
/// globally smallest for further components). Ties go to the lowest index.
fn join_order<V>(inst: &SumProdInstance<V>) -> Vec<usize> {
    let m = inst.hypergraph.edge_count();
    let mut order = Vec::with_capacity(m);
    let mut used = vec![false; m];
    let mut touched = crate::hypergraph::VertexSet::EMPTY;
    for _ in 0..m {
        let mut best: Option<usize> = None;
        let mut best_connected = false;
        for e in 0..m {
            if used[e] {
                continue;
            }
            let connected = inst.hypergraph.edges()[e].intersects(touched);
            let better = match best {
                None => true,
                Some(b) => {
                    (connected, std::cmp::Reverse(inst.factors[e].len()))
                        > (best_connected, std::cmp::Reverse(inst.factors[b].len()))
                }
            };
            if better {
                best = Some(e);
                best_connected = connected;
            }
        }
        let e = best.expect("an unused edge remains");
        used[e] = true;
        touched = touched.union(inst.hypergraph.edges()[e]);
        order.push(e);
    }
    order
}

/// Aggregate an acyclic instance by leaf-to-root message passing on a join
/// forest; each variable is summed out exactly once. Rejects non-acyclic
/// shapes with an input error.
pub fn eval_acyclic<S: Semiring>(
    inst: &SumProdInstance<S::Value>,
    semiring: &S,
) -> Result<S::Value>
where
    S::Value: fmt::Debug,
{
    inst.validate(semiring)?;
    let h = &inst.hypergraph;
    let parents = join_forest(h)?;
    let m = h.edge_count();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (e, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            children[*p].push(e);
        }
    }
    // topological order: process every child before its parent
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut stack: Vec<usize> =
        (0..m).filter(|&e| parents[e].is_none()).collect();
    while let Some(e) = stack.pop() {
        order.push(e);
        stack.extend(children[e].iter().copied());
    }
    order.reverse();

    let edge_vars: Vec<Vec<usize>> =
        h.edges().iter().map(|e| e.iter().collect()).collect();
    let mut messages: Vec<Option<BTreeMap<Vec<u64>, S::Value>>> = vec![None; m];
    let mut total = semiring.one();
    for &e in &order {
        let vars = &edge_vars[e];
        // shared variables with the parent, as positions into this tuple
        let parent_shared: Vec<usize> = match parents[e] {
            Some(p) => {
                let pv = h.edges()[p];
                (0..vars.len()).filter(|&i| pv.contains(vars[i])).collect()
            }
            None => Vec::new(),
        };
        let child_keys: Vec<(usize, Vec<usize>)> = children[e]
            .iter()
            .map(|&c| {
                let cv = h.edges()[c];
                let positions: Vec<usize> =
                    (0..vars.len()).filter(|&i| cv.contains(vars[i])).collect();
                (c, positions)
            })
            .collect();

        let mut outgoing: BTreeMap<Vec<u64>, S::Value> = BTreeMap::new();
        'entry: for (tuple, value) in &inst.factors[e].entries {
            let mut val = value.clone();
            for (c, positions) in &child_keys {
                let key: Vec<u64> = positions.iter().map(|&i| tuple[i]).collect();
                let msg = messages[*c].as_ref().expect("children processed first");
                match msg.get(&key) {
                    Some(v) => val = semiring.times(&val, v),
                    None => continue 'entry,
                }
            }
            let key: Vec<u64> = parent_shared.iter().map(|&i| tuple[i]).collect();
            match outgoing.get_mut(&key) {
                Some(acc) => *acc = semiring.plus(acc, &val),
                None => {
                    outgoing.insert(key, val);
                }
            }
        }
        if parents[e].is_none() {
            let root_total = outgoing
                .values()
                .fold(semiring.zero(), |acc, v| semiring.plus(&acc, v));
            total = semiring.times(&total, &root_total);
        } else {
            messages[e] = Some(outgoing);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{
        BooleanSemiring, CountingSemiring, FactorTable, Tropical, TropicalSemiring,
    };
    use crate::hypergraph::{Hypergraph, VertexSet};

    fn triangle_instance<V: Clone + PartialEq + std::fmt::Debug>(
        w01: V,
        w12: V,
        w02: V,
        s: &impl Semiring<Value = V>,
    ) -> SumProdInstance<V> {
        let h = Hypergraph::new(
            3,
            vec![
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([0, 2]),
            ],
        )
        .unwrap();
        SumProdInstance::new(
            h,
            vec![vec![0], vec![0], vec![0]],
            vec![
                FactorTable { entries: vec![(vec![0, 0], w01)] },
                FactorTable { entries: vec![(vec![0, 0], w12)] },
                FactorTable { entries: vec![(vec![0, 0], w02)] },
            ],
            s,
        )
        .unwrap()
    }

    #[test]
    fn single_factor_boolean() {
        let h = Hypergraph::new(2, vec![VertexSet::from_iter([0, 1])]).unwrap();
        let inst = SumProdInstance::new(
            h,
            vec![vec![0, 1], vec![0, 1]],
            vec![FactorTable { entries: vec![(vec![0, 1], true)] }],
            &BooleanSemiring,
        )
        .unwrap();
        assert!(eval_bruteforce(&inst, &BooleanSemiring).unwrap());
    }

    #[test]
    fn triangle_counting_and_tropical() {
        let inst = triangle_instance(1u64, 1, 1, &CountingSemiring);
        assert_eq!(eval_bruteforce(&inst, &CountingSemiring).unwrap(), 1);

        let inst = triangle_instance(
            Tropical::Finite(1),
            Tropical::Finite(2),
            Tropical::Finite(3),
            &TropicalSemiring,
        );
        assert_eq!(
            eval_bruteforce(&inst, &TropicalSemiring).unwrap(),
            Tropical::Finite(6)
        );
    }

    #[test]
    fn path_query_message_passing() {
        // x - y - z chain of matching tuples
        let h = Hypergraph::new(
            3,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([1, 2])],
        )
        .unwrap();
        let inst = SumProdInstance::new(
            h,
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
            vec![
                FactorTable { entries: vec![(vec![0, 1], true)] },
                FactorTable { entries: vec![(vec![1, 0], true)] },
            ],
            &BooleanSemiring,
        )
        .unwrap();
        assert!(eval_acyclic(&inst, &BooleanSemiring).unwrap());
        assert_eq!(
            eval_acyclic(&inst, &BooleanSemiring).unwrap(),
            eval_bruteforce(&inst, &BooleanSemiring).unwrap()
        );
    }

    #[test]
    fn empty_factor_annihilates() {
        let h = Hypergraph::new(
            3,
            vec![VertexSet::from_iter([0, 1]), VertexSet::from_iter([1, 2])],
        )
        .unwrap();
        let inst = SumProdInstance::new(
            h,
            vec![vec![0], vec![0], vec![0]],
            vec![
                FactorTable { entries: vec![(vec![0, 0], 3u64)] },
                FactorTable { entries: vec![] },
            ],
            &CountingSemiring,
        )
        .unwrap();
        assert_eq!(eval_acyclic(&inst, &CountingSemiring).unwrap(), 0);
        assert_eq!(eval_bruteforce(&inst, &CountingSemiring).unwrap(), 0);
    }

    #[test]
    fn acyclic_rejects_cycles() {
        let inst = triangle_instance(true, true, true, &BooleanSemiring);
        assert!(eval_acyclic(&inst, &BooleanSemiring).is_err());
    }
}
