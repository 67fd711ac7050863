//! Integer and mixed programs for the minimum weak edge depth and the
//! clique embedding power.
//!
//! The integral program has one integer variable per connected subset
//! counting how many clique vertices land there; the pair condition
//! `min(x_S, x_T) = 0` for non-touching S, T is enforced by the solver's
//! complementarity branching. The equivalent binary linearization
//! (`x_S + k*y_S <= k`, `y_S + y_T >= 1`) is also provided and
//! cross-checked in tests, but its LP relaxation is far weaker, so the
//! production path branches on the pairs directly. The fractional program
//! normalizes the clique size to one and makes the subset variables
//! continuous; its optimum `w*` satisfies `emb = 1/w*`, attained at the
//! clique size that clears all weight denominators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{lcm_of_denominators, Embedding, FractionalWitness};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::ratlp::{
    rat_int, solve_milp_seeded, Constraint, IntegerVar, LinearProgram, MilpModel, Rational,
    Relation, Sense,
};

/// Subset variable layout shared by both programs: variable 0 is the depth
/// bound `w`, variable `1 + i` is the weight of `subsets[i]`. Where the
/// pair condition is encoded with binaries, `binaries[i]` holds the index
/// of the binary attached to `subsets[i]`.
pub struct SubsetVars {
    pub subsets: Vec<VertexSet>,
    pub non_touching: Vec<(usize, usize)>,
    pub binaries: Vec<Option<usize>>,
}

fn subset_vars(h: &Hypergraph) -> SubsetVars {
    let subsets = h.connected_subsets();
    let m = subsets.len();
    let mut non_touching = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if !h.touches(subsets[i], subsets[j]).expect("subsets in range") {
                non_touching.push((i, j));
            }
        }
    }
    let binaries = vec![None; m];
    SubsetVars { subsets, non_touching, binaries }
}

fn edge_load_rows(h: &Hypergraph, subsets: &[VertexSet], num_vars: usize) -> Vec<Constraint> {
    h.edges()
        .iter()
        .map(|&edge| {
            let mut coeffs = vec![Rational::zero(); num_vars];
            coeffs[0] = -Rational::one();
            for (i, &s) in subsets.iter().enumerate() {
                if s.intersects(edge) {
                    coeffs[1 + i] = Rational::one();
                }
            }
            Constraint::new(coeffs, Relation::Le, Rational::zero())
        })
        .collect()
}

/// Build the integral weak-edge-depth program for clique size `k`, with
/// the pair condition as solver-native complementarity constraints.
pub fn weak_depth_model(h: &Hypergraph, k: usize) -> (MilpModel, SubsetVars) {
    let vars = subset_vars(h);
    let m = vars.subsets.len();
    let num_vars = 1 + m;
    let kq = rat_int(k as i64);
    let mut constraints = Vec::new();
    let mut total = vec![Rational::zero(); num_vars];
    for i in 0..m {
        total[1 + i] = Rational::one();
    }
    constraints.push(Constraint::new(total, Relation::Eq, kq));
    constraints.extend(edge_load_rows(h, &vars.subsets, num_vars));
    let mut objective = vec![Rational::zero(); num_vars];
    objective[0] = Rational::one();
    let lp = LinearProgram { sense: Sense::Minimize, objective, constraints, num_vars };
    let integers: Vec<IntegerVar> =
        (0..m).map(|i| IntegerVar::bounded(1 + i, 0, k as i64)).collect();
    let complementary_pairs: Vec<(usize, usize)> =
        vars.non_touching.iter().map(|&(i, j)| (1 + i, 1 + j)).collect();
    (MilpModel { lp, integers, complementary_pairs, objective_integral: true }, vars)
}

/// Build the same integral program with the textbook binary linearization
/// of the pair condition. Equivalent to [`weak_depth_model`]; kept for
/// cross-validation since its relaxation branches much worse.
pub fn weak_depth_ilp_model(h: &Hypergraph, k: usize) -> (MilpModel, SubsetVars) {
    let mut vars = subset_vars(h);
    let m = vars.subsets.len();
    // binaries only for subsets that occur in some non-touching pair
    let mut num_vars = 1 + m;
    for idx in 0..vars.non_touching.len() {
        let (i, j) = vars.non_touching[idx];
        for s in [i, j] {
            if vars.binaries[s].is_none() {
                vars.binaries[s] = Some(num_vars);
                num_vars += 1;
            }
        }
    }
    let y_of = vars.binaries.clone();

    let kq = rat_int(k as i64);
    let mut constraints = Vec::new();
    // total clique vertices
    let mut total = vec![Rational::zero(); num_vars];
    for i in 0..m {
        total[1 + i] = Rational::one();
    }
    constraints.push(Constraint::new(total, Relation::Eq, kq.clone()));
    constraints.extend(edge_load_rows(h, &vars.subsets, num_vars));
    // x_S + k*y_S <= k
    for (i, y) in y_of.iter().enumerate() {
        if let Some(y) = y {
            let mut coeffs = vec![Rational::zero(); num_vars];
            coeffs[1 + i] = Rational::one();
            coeffs[*y] = kq.clone();
            constraints.push(Constraint::new(coeffs, Relation::Le, kq.clone()));
        }
    }
    // y_S + y_T >= 1 for every non-touching pair
    for &(i, j) in &vars.non_touching {
        let mut coeffs = vec![Rational::zero(); num_vars];
        coeffs[y_of[i].unwrap()] = Rational::one();
        coeffs[y_of[j].unwrap()] = Rational::one();
        constraints.push(Constraint::new(coeffs, Relation::Ge, Rational::one()));
    }

    let mut objective = vec![Rational::zero(); num_vars];
    objective[0] = Rational::one();
    let lp = LinearProgram { sense: Sense::Minimize, objective, constraints, num_vars };
    let mut integers: Vec<IntegerVar> =
        (0..m).map(|i| IntegerVar::bounded(1 + i, 0, k as i64)).collect();
    integers.extend(y_of.iter().flatten().map(|&y| IntegerVar::binary(y)));
    (MilpModel { lp, integers, complementary_pairs: vec![], objective_integral: true }, vars)
}

/// Feasible warm start: all mass on one whole component (its edges are
/// loaded by exactly `mass`, edges of other components by zero), with the
/// binaries of every other subset raised.
fn whole_component_seed(
    h: &Hypergraph,
    model: &MilpModel,
    vars: &SubsetVars,
    mass: &Rational,
) -> Option<Vec<Rational>> {
    let comp = *h.components().first()?;
    let idx = vars.subsets.iter().position(|&s| s == comp)?;
    let mut seed = vec![Rational::zero(); model.lp.num_vars];
    seed[0] = mass.clone();
    seed[1 + idx] = mass.clone();
    for (i, y) in vars.binaries.iter().enumerate() {
        if let Some(y) = y {
            if i != idx {
                seed[*y] = Rational::one();
            }
        }
    }
    Some(seed)
}

/// Greedy multiset of pairwise-touching subsets: each step picks the
/// candidate that keeps the maximum edge load smallest, ties resolved by
/// canonical subset order. Feasible by construction; used only to seed
/// the branch-and-bound incumbent.
fn greedy_seed(h: &Hypergraph, k: usize, model: &MilpModel, vars: &SubsetVars) -> Vec<Rational> {
    let m = vars.subsets.len();
    let mut touch = vec![vec![true; m]; m];
    for &(i, j) in &vars.non_touching {
        touch[i][j] = false;
        touch[j][i] = false;
    }
    let edge_count = h.edge_count();
    let hits: Vec<Vec<usize>> = vars
        .subsets
        .iter()
        .map(|&s| {
            h.edges()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e.intersects(s))
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    let mut counts = vec![0usize; edge_count];
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut current_max = 0usize;
    for _ in 0..k {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..m {
            if !chosen.iter().all(|&j| touch[j][i]) {
                continue;
            }
            let new_max = hits[i]
                .iter()
                .map(|&e| counts[e] + 1)
                .chain([current_max])
                .max()
                .unwrap_or(0);
            match best {
                Some((bm, _)) if bm <= new_max => {}
                _ => best = Some((new_max, i)),
            }
        }
        let (new_max, pick) = best.expect("a chosen subset always touches itself");
        for &e in &hits[pick] {
            counts[e] += 1;
        }
        current_max = new_max;
        chosen.push(pick);
    }
    let mut seed = vec![Rational::zero(); model.lp.num_vars];
    seed[0] = rat_int(current_max as i64);
    for i in chosen {
        seed[1 + i] += Rational::one();
    }
    seed
}

/// Exact minimum weak edge depth via the integer program, with a witness
/// embedding reconstructed from the subset multiplicities.
pub fn min_wed_ilp(h: &Hypergraph, k: usize) -> Result<(usize, Embedding)> {
    if k == 0 {
        return Err(Error::input("clique size must be at least 1"));
    }
    let (model, vars) = weak_depth_model(h, k);
    let seed = greedy_seed(h, k, &model, &vars);
    let outcome = solve_milp_seeded(&model, Some(&seed))?;
    let sol = outcome
        .optimal()
        .ok_or_else(|| Error::input("weak-depth program unexpectedly has no optimum"))?;
    assert!(sol.value.is_integer(), "integral program produced fractional depth");
    let wed = usize::try_from(sol.value.to_integer())
        .map_err(|_| Error::input("depth out of range"))?;

    let mut images = Vec::with_capacity(k);
    for (i, &s) in vars.subsets.iter().enumerate() {
        let x = &sol.point[1 + i];
        debug_assert!(x.is_integer());
        let copies = x.to_integer();
        let mut c = BigInt::zero();
        while c < copies {
            images.push(s);
            c += 1;
        }
    }
    let embedding = Embedding::new(images)?;
    Ok((wed, embedding))
}

/// Build the fractional program whose optimum is the reciprocal of the
/// clique embedding power. Requires a connected hypergraph.
pub fn fractional_model(h: &Hypergraph) -> (MilpModel, SubsetVars) {
    let vars = subset_vars(h);
    let m = vars.subsets.len();
    let num_vars = 1 + m;
    let mut constraints = Vec::new();
    let mut total = vec![Rational::zero(); num_vars];
    for i in 0..m {
        total[1 + i] = Rational::one();
    }
    constraints.push(Constraint::new(total, Relation::Eq, Rational::one()));
    constraints.extend(edge_load_rows(h, &vars.subsets, num_vars));
    let mut objective = vec![Rational::zero(); num_vars];
    objective[0] = Rational::one();
    let lp = LinearProgram { sense: Sense::Minimize, objective, constraints, num_vars };
    let complementary_pairs: Vec<(usize, usize)> =
        vars.non_touching.iter().map(|&(i, j)| (1 + i, 1 + j)).collect();
    (MilpModel { lp, integers: vec![], complementary_pairs, objective_integral: false }, vars)
}

/// The exact clique embedding power, as the witness of the fractional
/// program: `emb(h) = 1 / w_star`. For a disconnected hypergraph the
/// program is solved per component and the best component reported, since
/// a pairwise-touching support cannot span components.
pub fn emb_fractional(h: &Hypergraph) -> Result<FractionalWitness> {
    if h.is_connected() {
        return emb_fractional_connected(h);
    }
    let mut best: Option<FractionalWitness> = None;
    for comp in h.components() {
        let verts: Vec<usize> = comp.iter().collect();
        let sub = h.induced(comp)?;
        let witness = emb_fractional_connected(&sub)?;
        // map the witness back to the original vertex numbering
        let weights: Vec<(VertexSet, Rational)> = witness
            .weights
            .iter()
            .map(|(s, x)| {
                (VertexSet::from_iter(s.iter().map(|v| verts[v])), x.clone())
            })
            .collect();
        let mapped = FractionalWitness {
            weights,
            w_star: witness.w_star.clone(),
            scale: witness.scale.clone(),
            component: Some(comp),
        };
        match &best {
            Some(b) if b.w_star <= mapped.w_star => {}
            _ => best = Some(mapped),
        }
    }
    best.ok_or_else(|| Error::input("hypergraph has no components"))
}

fn emb_fractional_connected(h: &Hypergraph) -> Result<FractionalWitness> {
    let (model, vars) = fractional_model(h);
    let seed = whole_component_seed(h, &model, &vars, &Rational::one());
    let outcome = solve_milp_seeded(&model, seed.as_deref())?;
    let sol = outcome
        .optimal()
        .ok_or_else(|| Error::input("fractional program unexpectedly has no optimum"))?;
    let mut weights = Vec::new();
    for (i, &s) in vars.subsets.iter().enumerate() {
        let x = &sol.point[1 + i];
        if x.is_positive() {
            weights.push((s, x.clone()));
        }
    }
    let scale = lcm_of_denominators(&weights);
    let witness = FractionalWitness {
        weights,
        w_star: sol.value.clone(),
        scale,
        component: None,
    };
    debug_assert!(witness.verify(h).is_ok());
    Ok(witness)
}

/// `emb_k = k / wed(C_k -> h)` for every k in `1..=k_max`.
pub fn emb_k_curve(h: &Hypergraph, k_max: usize) -> Result<Vec<(usize, Rational)>> {
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (wed, _) = min_wed_ilp(h, k)?;
        out.push((k, Rational::new(BigInt::from(k), BigInt::from(wed))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{min_wed_bruteforce, validate_embedding};
    use crate::ratlp::rat;
    use crate::testutil::{cycle, star_with_triple};

    #[test]
    fn triangle_three_clique_depth_two() {
        let h = cycle(3);
        let (brute, _) = min_wed_bruteforce(&h, 3).unwrap();
        assert_eq!(brute, 2);
        let (wed, e) = min_wed_ilp(&h, 3).unwrap();
        assert_eq!(wed, 2);
        let report = validate_embedding(&h, &e).unwrap();
        assert!(report.valid);
        assert_eq!(report.wed, 2);
    }

    #[test]
    fn six_cycle_matches_bruteforce() {
        let h = cycle(6);
        for k in 1..=6 {
            let (brute, _) = min_wed_bruteforce(&h, k).unwrap();
            let (ilp, e) = min_wed_ilp(&h, k).unwrap();
            assert_eq!(brute, ilp, "k={k}");
            assert_eq!(validate_embedding(&h, &e).unwrap().wed, ilp);
        }
        assert_eq!(min_wed_ilp(&h, 5).unwrap().0, 3);
    }

    #[test]
    fn four_cycle_three_clique_depth_two() {
        let h = cycle(4);
        let (wed, _) = min_wed_ilp(&h, 3).unwrap();
        assert_eq!(wed, 2); // emb_3(K_{2,2}) = 3/2 = 2 - 1/2
    }

    #[test]
    fn single_edge_has_power_one() {
        let h = Hypergraph::new(3, vec![VertexSet::from_iter([0, 1, 2])]).unwrap();
        let w = emb_fractional(&h).unwrap();
        assert_eq!(w.embedding_power(), rat_int(1));
        assert_eq!(w.w_star, rat_int(1));
        w.verify(&h).unwrap();
    }

    #[test]
    fn six_cycle_power_five_thirds() {
        let h = cycle(6);
        let w = emb_fractional(&h).unwrap();
        assert_eq!(w.w_star, rat(3, 5));
        assert_eq!(w.embedding_power(), rat(5, 3));
        w.verify(&h).unwrap();
        // the scale clears the weights into an integral witness
        let e = w.integral_embedding(1000).unwrap();
        let report = validate_embedding(&h, &e).unwrap();
        assert!(report.valid);
        assert_eq!(
            rat_int(report.wed as i64),
            w.w_star.clone() * rat_int(e.k() as i64)
        );
    }

    #[test]
    fn fractional_power_dominates_integral_ratios() {
        for h in [cycle(6), star_with_triple(), cycle(4)] {
            let w = emb_fractional(&h).unwrap();
            let power = w.embedding_power();
            for k in 1..=5 {
                let (wed, _) = min_wed_bruteforce(&h, k).unwrap();
                assert!(rat(k as i64, wed as i64) <= power, "k={k}");
            }
        }
    }

    #[test]
    fn disconnected_hypergraph_takes_best_component() {
        // triangle plus an isolated edge: power comes from the triangle
        let h = Hypergraph::new(
            5,
            vec![
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([0, 2]),
                VertexSet::from_iter([3, 4]),
            ],
        )
        .unwrap();
        let w = emb_fractional(&h).unwrap();
        assert_eq!(w.embedding_power(), rat(3, 2));
        assert_eq!(w.component, Some(VertexSet::from_iter([0, 1, 2])));
    }

    #[test]
    fn binary_linearization_agrees_with_pair_branching() {
        for h in [cycle(4), cycle(5), star_with_triple()] {
            for k in 1..=4 {
                let (fast, _) = min_wed_ilp(&h, k).unwrap();
                let (model, _) = weak_depth_ilp_model(&h, k);
                let out = crate::ratlp::solve_milp(&model).unwrap();
                assert_eq!(out.expect_optimal().value, rat_int(fast as i64), "k={k}");
            }
        }
    }

    #[test]
    fn curve_matches_bruteforce_on_six_cycle() {
        let h = cycle(6);
        let curve = emb_k_curve(&h, 6).unwrap();
        assert_eq!(curve[0].1, rat_int(1));
        assert_eq!(curve[2].1, rat(3, 2));
        assert_eq!(curve[4].1, rat(5, 3));
        for (k, v) in &curve {
            let (wed, _) = min_wed_bruteforce(&h, *k).unwrap();
            assert_eq!(*v, rat(*k as i64, wed as i64));
        }
    }
}
