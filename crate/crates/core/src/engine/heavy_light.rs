//! Heavy-light evaluation of the Boolean boat query.
//!
//! Hub values with degree above `ceil(m^epsilon)` in their three incident
//! tables are heavy: fixing one makes the residual query acyclic, so each
//! is finished by message passing. The all-light remainder joins each
//! hub's light neighborhoods into one ternary table per side, which is
//! exactly a hyper-boat instance of size at most m * delta^2, and hands it
//! to the supplied solver.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{BooleanSemiring, FactorTable, SumProdInstance};
use crate::embedding::Family;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::ratlp::Rational;

/// Positions of the boat-query edges within the instance's hypergraph:
/// hub x1 is vertex 0 with tables to x2/x4/x6, hub x8 is vertex 7 with
/// tables to x3/x5/x7, and three middle tables connect the paths.
struct BoatLayout {
    /// (table index, neighbor vertex) for the three x1 tables
    hub1: [(usize, usize); 3],
    /// (table index, neighbor vertex) for the three x8 tables
    hub8: [(usize, usize); 3],
    /// (table index, (u, v)) for (x2,x3), (x4,x5), (x6,x7)
    middle: [(usize, (usize, usize)); 3],
}

fn boat_layout(h: &Hypergraph) -> Result<BoatLayout> {
    let reference = Family::Boat.hypergraph().expect("boat construction is valid");
    if h.vertex_count() != reference.vertex_count() {
        return Err(Error::input("instance is not over the boat query"));
    }
    let find = |pair: [usize; 2]| -> Result<usize> {
        let target = VertexSet::from_iter(pair);
        h.edges()
            .iter()
            .position(|&e| e == target)
            .ok_or_else(|| Error::input("instance is not over the boat query"))
    };
    if h.edge_count() != reference.edge_count() {
        return Err(Error::input("instance is not over the boat query"));
    }
    Ok(BoatLayout {
        hub1: [(find([0, 1])?, 1), (find([0, 3])?, 3), (find([0, 5])?, 5)],
        hub8: [(find([2, 7])?, 2), (find([4, 7])?, 4), (find([6, 7])?, 6)],
        middle: [
            (find([1, 2])?, (1, 2)),
            (find([3, 4])?, (3, 4)),
            (find([5, 6])?, (5, 6)),
        ],
    })
}

/// Smallest integer `d` with `d^q >= m^p` for `epsilon = p/q`.
fn degree_threshold(m: usize, epsilon: &Rational) -> Result<u64> {
    if !epsilon.is_positive() {
        return Err(Error::input("epsilon must be positive"));
    }
    if m <= 1 {
        return Ok(1);
    }
    let p = epsilon.numer().to_u32().ok_or_else(|| Error::input("epsilon too large"))?;
    let q = epsilon.denom().to_u32().ok_or_else(|| Error::input("epsilon too large"))?;
    let target = BigInt::from(m).pow(p);
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(m).max(BigInt::one());
    while &hi.clone().pow(q) < &target {
        hi *= 2;
    }
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if mid.clone().pow(q) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo.to_u64().ok_or_else(|| Error::input("degree threshold out of range"))
}

/// Per-value occurrence counts of `hub_vertex` in one binary table.
fn degrees(
    inst: &SumProdInstance<bool>,
    table: usize,
    hub_vertex: usize,
) -> BTreeMap<u64, u64> {
    let vars: Vec<usize> = inst.hypergraph.edges()[table].iter().collect();
    let pos = vars.iter().position(|&v| v == hub_vertex).expect("hub in table");
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for (tuple, _) in &inst.factors[table].entries {
        *out.entry(tuple[pos]).or_default() += 1;
    }
    out
}

/// Neighbors of a hub value in one binary table.
fn neighbors(
    inst: &SumProdInstance<bool>,
    table: usize,
    hub_vertex: usize,
    value: u64,
) -> Vec<u64> {
    let vars: Vec<usize> = inst.hypergraph.edges()[table].iter().collect();
    let hub_pos = vars.iter().position(|&v| v == hub_vertex).expect("hub in table");
    let other_pos = 1 - hub_pos;
    inst.factors[table]
        .entries
        .iter()
        .filter(|(t, _)| t[hub_pos] == value)
        .map(|(t, _)| t[other_pos])
        .collect()
}

/// Evaluate the residual query with one hub fixed: the remaining seven
/// variables form an acyclic shape whose singleton tables are the fixed
/// hub's neighborhoods.
fn eval_hub_fixed(
    inst: &SumProdInstance<bool>,
    layout: &BoatLayout,
    hub_vertex: usize,
    value: u64,
) -> Result<bool> {
    let (hub_tables, other_tables) = if hub_vertex == 0 {
        (&layout.hub1, &layout.hub8)
    } else {
        (&layout.hub8, &layout.hub1)
    };
    // residual vertices: everything except the fixed hub, renumbered densely
    let keep: Vec<usize> = (0..8).filter(|&v| v != hub_vertex).collect();
    let renum = |v: usize| keep.iter().position(|&u| u == v).expect("kept vertex");

    let mut edges: Vec<VertexSet> = Vec::new();
    let mut tables: Vec<FactorTable<bool>> = Vec::new();
    for &(t, nb) in hub_tables {
        edges.push(VertexSet::singleton(renum(nb)));
        let entries: Vec<(Vec<u64>, bool)> = neighbors(inst, t, hub_vertex, value)
            .into_iter()
            .collect::<BTreeSet<u64>>()
            .into_iter()
            .map(|b| (vec![b], true))
            .collect();
        tables.push(FactorTable { entries });
    }
    // tables not mentioning the fixed hub keep their tuples verbatim:
    // dropping one vertex cannot reorder the remaining ascending positions
    for &(t, nb) in other_tables {
        let other_hub = if hub_vertex == 0 { 7 } else { 0 };
        let pair = VertexSet::from_iter([renum(nb), renum(other_hub)]);
        edges.push(pair);
        tables.push(FactorTable { entries: inst.factors[t].entries.clone() });
    }
    for &(t, (u, v)) in &layout.middle {
        edges.push(VertexSet::from_iter([renum(u), renum(v)]));
        tables.push(FactorTable { entries: inst.factors[t].entries.clone() });
    }
    let labels = keep.iter().map(|&v| inst.hypergraph.label(v).to_string()).collect();
    let h = Hypergraph::with_labels(labels, edges)?;
    let domains: Vec<Vec<u64>> = keep.iter().map(|&v| inst.domains[v].clone()).collect();
    let residual = SumProdInstance::new(h, domains, tables, &BooleanSemiring)?;
    super::eval_acyclic(&residual, &BooleanSemiring)
}

/// Boolean boat-query evaluation by heavy-light split. `qhb_solver`
/// receives the joined light-light instance, which is shaped exactly like
/// the hyper-boat query; correctness does not depend on how it is solved.
pub fn solve_boat_heavy_light<F>(
    inst: &SumProdInstance<bool>,
    epsilon: &Rational,
    qhb_solver: F,
) -> Result<bool>
where
    F: Fn(&SumProdInstance<bool>) -> Result<bool>,
{
    inst.validate(&BooleanSemiring)?;
    let layout = boat_layout(&inst.hypergraph)?;
    let m = inst.size();
    let delta = degree_threshold(m, epsilon)?;

    for (hub, tables) in [(0usize, &layout.hub1), (7usize, &layout.hub8)] {
        let per_table: Vec<BTreeMap<u64, u64>> =
            tables.iter().map(|&(t, _)| degrees(inst, t, hub)).collect();
        let mut heavy: BTreeSet<u64> = BTreeSet::new();
        for counts in &per_table {
            for (&value, &count) in counts {
                if count > delta {
                    heavy.insert(value);
                }
            }
        }
        for &value in &heavy {
            if eval_hub_fixed(inst, &layout, hub, value)? {
                return Ok(true);
            }
        }
    }

    // light-light: join each hub's light neighborhoods into a ternary table
    let light_join = |hub: usize, tables: &[(usize, usize); 3]| -> FactorTable<bool> {
        let per_table: Vec<BTreeMap<u64, u64>> =
            tables.iter().map(|&(t, _)| degrees(inst, t, hub)).collect();
        let hub_values: BTreeSet<u64> = per_table
            .iter()
            .flat_map(|c| c.keys().copied())
            .collect();
        let mut tuples: BTreeSet<Vec<u64>> = BTreeSet::new();
        for &a in &hub_values {
            let is_light = per_table
                .iter()
                .all(|c| c.get(&a).copied().unwrap_or(0) <= delta);
            if !is_light {
                continue;
            }
            let nbs: Vec<Vec<u64>> = tables
                .iter()
                .map(|&(t, _)| neighbors(inst, t, hub, a))
                .collect();
            for &b1 in &nbs[0] {
                for &b2 in &nbs[1] {
                    for &b3 in &nbs[2] {
                        tuples.insert(vec![b1, b2, b3]);
                    }
                }
            }
        }
        FactorTable { entries: tuples.into_iter().map(|t| (t, true)).collect() }
    };
    let t_y = light_join(0, &layout.hub1);
    let t_z = light_join(7, &layout.hub8);

    // hyper-boat shape: y_i = x2/x4/x6, z_i = x3/x5/x7
    let qhb = Family::HyperBoat.hypergraph().expect("hyper-boat construction is valid");
    let y_sources = [1usize, 3, 5];
    let z_sources = [2usize, 4, 6];
    let domains: Vec<Vec<u64>> = y_sources
        .iter()
        .chain(z_sources.iter())
        .map(|&v| inst.domains[v].clone())
        .collect();
    // matching tables (x2,x3) etc. become (y_i, z_i); tuple order was
    // (x_even, x_odd) ascending and stays (y_i, z_i)
    let mut tables = vec![t_y, t_z];
    for &(t, _) in &layout.middle {
        tables.push(FactorTable { entries: inst.factors[t].entries.clone() });
    }
    let light_instance = SumProdInstance::new(qhb, domains, tables, &BooleanSemiring)?;
    qhb_solver(&light_instance)
}
