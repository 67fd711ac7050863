use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;

fn lp(sense: Sense, objective: Vec<Rational>, constraints: Vec<Constraint>) -> LinearProgram {
    let num_vars = objective.len();
    LinearProgram { sense, objective, constraints, num_vars }
}

fn le(coeffs: Vec<i64>, rhs: i64) -> Constraint {
    Constraint::new(coeffs.into_iter().map(rat_int).collect(), Relation::Le, rat_int(rhs))
}

fn ge(coeffs: Vec<i64>, rhs: i64) -> Constraint {
    Constraint::new(coeffs.into_iter().map(rat_int).collect(), Relation::Ge, rat_int(rhs))
}

#[test]
fn min_of_two_lower_bounds() {
    // min w s.t. w >= 3, w >= 5
    let p = lp(Sense::Minimize, vec![rat_int(1)], vec![ge(vec![1], 3), ge(vec![1], 5)]);
    let out = solve_lp(&p).unwrap();
    let sol = out.expect_optimal();
    assert_eq!(sol.value, rat_int(5));
    assert!(p.is_feasible(&sol.point));
}

#[test]
fn max_on_simplex() {
    let p = lp(Sense::Maximize, vec![rat_int(1), rat_int(1)], vec![le(vec![1, 1], 1)]);
    let out = solve_lp(&p).unwrap();
    assert_eq!(out.expect_optimal().value, rat_int(1));
}

#[test]
fn fractional_edge_cover_of_triangle() {
    // one weight per edge ab, bc, ca; each vertex covered at least once
    let p = lp(
        Sense::Minimize,
        vec![rat_int(1); 3],
        vec![
            ge(vec![1, 0, 1], 1), // vertex a in edges ab, ca
            ge(vec![1, 1, 0], 1), // vertex b
            ge(vec![0, 1, 1], 1), // vertex c
        ],
    );
    let out = solve_lp(&p).unwrap();
    assert_eq!(out.expect_optimal().value, rat(3, 2));
}

#[test]
fn infeasible_and_unbounded() {
    let p = lp(Sense::Minimize, vec![rat_int(0)], vec![le(vec![1], -1)]);
    assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Infeasible);

    let p = lp(Sense::Maximize, vec![rat_int(1)], vec![ge(vec![1], 1)]);
    assert_eq!(solve_lp(&p).unwrap(), LpOutcome::Unbounded);
}

#[test]
fn dimension_mismatch_is_input_error() {
    let p = LinearProgram {
        sense: Sense::Minimize,
        objective: vec![rat_int(1)],
        constraints: vec![le(vec![1, 2], 3)],
        num_vars: 1,
    };
    assert!(solve_lp(&p).is_err());
}

#[test]
fn milp_integrality_forces_larger_optimum() {
    // min w s.t. w >= 2 - 2y, w >= 2y, y binary; relaxation gives 1 at y=1/2
    let p = lp(
        Sense::Minimize,
        vec![rat_int(1), rat_int(0)],
        vec![ge(vec![1, 2], 2), ge(vec![1, -2], 0)],
    );
    let relax = solve_lp(&p).unwrap();
    assert_eq!(relax.expect_optimal().value, rat_int(1));

    let m = MilpModel {
        lp: p,
        integers: vec![IntegerVar::binary(1)],
        complementary_pairs: vec![],
        objective_integral: false,
    };
    let out = solve_milp(&m).unwrap();
    let sol = out.expect_optimal();
    assert_eq!(sol.value, rat_int(2));
    assert!(m.is_feasible(&sol.point));
    // MILP optimum >= LP relaxation optimum for minimization
    assert!(sol.value >= relax.expect_optimal().value);
}

#[test]
fn milp_with_complementarity_pair() {
    // max x0 + x1 with x0 <= 3, x1 <= 4 and min(x0, x1) = 0
    let p = lp(
        Sense::Maximize,
        vec![rat_int(1), rat_int(1)],
        vec![le(vec![1, 0], 3), le(vec![0, 1], 4)],
    );
    let m = MilpModel { lp: p, integers: vec![], complementary_pairs: vec![(0, 1)], objective_integral: false };
    let sol = solve_milp(&m).unwrap();
    let sol = sol.expect_optimal();
    assert_eq!(sol.value, rat_int(4));
    assert!(sol.point[0].is_zero() || sol.point[1].is_zero());
}

#[test]
fn milp_general_integer_bounds() {
    // max 3x + 2y s.t. 2x + y <= 7, x + 3y <= 9, x,y integer in 0..10
    let p = lp(
        Sense::Maximize,
        vec![rat_int(3), rat_int(2)],
        vec![le(vec![2, 1], 7), le(vec![1, 3], 9)],
    );
    let m = MilpModel {
        lp: p,
        integers: vec![IntegerVar::bounded(0, 0, 10), IntegerVar::bounded(1, 0, 10)],
        complementary_pairs: vec![],
        objective_integral: false,
    };
    let sol = solve_milp(&m).unwrap();
    let sol = sol.expect_optimal();
    // brute force over the integer box
    let mut best = None;
    for x in 0..=10i64 {
        for y in 0..=10i64 {
            if 2 * x + y <= 7 && x + 3 * y <= 9 {
                let v = 3 * x + 2 * y;
                if best.map_or(true, |b| v > b) {
                    best = Some(v);
                }
            }
        }
    }
    assert_eq!(sol.value, rat_int(best.unwrap()));
}

#[test]
fn milp_infeasible() {
    let p = lp(
        Sense::Minimize,
        vec![rat_int(1)],
        vec![ge(vec![2], 1), le(vec![2], 1)],
    );
    let m = MilpModel {
        lp: p,
        integers: vec![IntegerVar::bounded(0, 0, 5)],
        complementary_pairs: vec![],
        objective_integral: false,
    };
    assert_eq!(solve_milp(&m).unwrap(), LpOutcome::Infeasible);
}

#[test]
fn seeded_solve_matches_cold_solve() {
    let p = lp(
        Sense::Maximize,
        vec![rat_int(3), rat_int(2)],
        vec![le(vec![2, 1], 7), le(vec![1, 3], 9)],
    );
    let m = MilpModel {
        lp: p,
        integers: vec![IntegerVar::bounded(0, 0, 10), IntegerVar::bounded(1, 0, 10)],
        complementary_pairs: vec![],
        objective_integral: false,
    };
    let cold = solve_milp(&m).unwrap();
    let seed: Vec<Rational> = vec![rat_int(1), rat_int(1)];
    let warm = solve_milp_seeded(&m, Some(&seed)).unwrap();
    assert_eq!(cold.expect_optimal().value, warm.expect_optimal().value);
}

// ---------------------------------------------------------------------
// independent vertex-enumeration oracle for small LPs
// ---------------------------------------------------------------------

/// Solve a square rational system by Gaussian elimination; None if singular.
fn gauss_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let d = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &d;
                }
                let d = &b[col] * &f;
                b[r] = &b[r] - &d;
            }
        }
    }
    Some(b)
}

/// Enumerate candidate vertices as intersections of n tight constraints
/// drawn from the constraint rows and the non-negativity bounds, keep the
/// feasible ones, and optimize over them. Only valid when the LP is
/// bounded; the feasible region of an LP over non-negative variables is
/// pointed, so feasibility is equivalent to having a feasible vertex.
fn vertex_oracle(p: &LinearProgram) -> Option<Rational> {
    let n = p.num_vars;
    let mut rows: Vec<(Vec<Rational>, Rational)> = p
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for v in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[v] = Rational::one();
        rows.push((unit, Rational::zero()));
    }
    let m = rows.len();
    let mut best: Option<Rational> = None;
    let mut choose = vec![0usize; n];
    fn rec(
        rows: &[(Vec<Rational>, Rational)],
        p: &LinearProgram,
        choose: &mut Vec<usize>,
        depth: usize,
        start: usize,
        m: usize,
        best: &mut Option<Rational>,
    ) {
        let n = p.num_vars;
        if depth == n {
            let a: Vec<Vec<Rational>> = choose.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Rational> = choose.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(x) = gauss_solve(a, b) {
                if p.is_feasible(&x) {
                    let v = p.objective_at(&x);
                    let better = match (&best, p.sense) {
                        (None, _) => true,
                        (Some(b), Sense::Minimize) => v < *b,
                        (Some(b), Sense::Maximize) => v > *b,
                    };
                    if better {
                        *best = Some(v);
                    }
                }
            }
            return;
        }
        for i in start..m {
            choose[depth] = i;
            rec(rows, p, choose, depth + 1, i + 1, m, best);
        }
    }
    rec(&rows, p, &mut choose, 0, 0, m, &mut best);
    best
}

#[test]
fn simplex_matches_vertex_oracle_on_small_programs() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut optimal_checked = 0;
    let mut infeasible_checked = 0;
    for _ in 0..300 {
        let nvars = rng.random_range(1..=3);
        let nrows = rng.random_range(1..=4);
        let sense = if rng.random_bool(0.5) { Sense::Minimize } else { Sense::Maximize };
        let objective: Vec<Rational> =
            (0..nvars).map(|_| rat_int(rng.random_range(-3..=3))).collect();
        let mut constraints = Vec::new();
        for _ in 0..nrows {
            let coeffs: Vec<Rational> =
                (0..nvars).map(|_| rat_int(rng.random_range(-3..=3))).collect();
            let relation = match rng.random_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            constraints.push(Constraint::new(coeffs, relation, rat_int(rng.random_range(-4..=4))));
        }
        // box constraints keep the program bounded so the oracle applies
        for v in 0..nvars {
            let mut unit = vec![Rational::zero(); nvars];
            unit[v] = Rational::one();
            constraints.push(Constraint::new(unit, Relation::Le, rat_int(7)));
        }
        let p = LinearProgram { sense, objective, constraints, num_vars: nvars };
        let got = solve_lp(&p).unwrap();
        let oracle = vertex_oracle(&p);
        match got {
            LpOutcome::Optimal(sol) => {
                assert!(p.is_feasible(&sol.point), "solution must satisfy every constraint");
                assert_eq!(p.objective_at(&sol.point), sol.value);
                assert_eq!(Some(sol.value), oracle);
                optimal_checked += 1;
            }
            LpOutcome::Infeasible => {
                assert_eq!(oracle, None);
                infeasible_checked += 1;
            }
            LpOutcome::Unbounded => {
                unreachable!("boxed programs cannot be unbounded");
            }
        }
    }
    assert!(optimal_checked > 50, "want a healthy mix, got {optimal_checked} optimal");
    assert!(infeasible_checked > 10, "want a healthy mix, got {infeasible_checked} infeasible");
}

#[test]
fn milp_bound_dominates_relaxation_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(0xabcd);
    for _ in 0..120 {
        let nvars = rng.random_range(1..=3);
        let nrows = rng.random_range(1..=3);
        let objective: Vec<Rational> =
            (0..nvars).map(|_| rat_int(rng.random_range(-3..=3))).collect();
        let mut constraints = Vec::new();
        for _ in 0..nrows {
            let coeffs: Vec<Rational> =
                (0..nvars).map(|_| rat_int(rng.random_range(-2..=3))).collect();
            constraints.push(Constraint::new(coeffs, Relation::Le, rat_int(rng.random_range(0..=6))));
        }
        for v in 0..nvars {
            let mut unit = vec![Rational::zero(); nvars];
            unit[v] = Rational::one();
            constraints.push(Constraint::new(unit, Relation::Le, rat_int(5)));
        }
        let p = LinearProgram { sense: Sense::Minimize, objective, constraints, num_vars: nvars };
        let relax = solve_lp(&p).unwrap();
        let m = MilpModel {
            lp: p.clone(),
            integers: (0..nvars).map(|v| IntegerVar::bounded(v, 0, 5)).collect(),
            complementary_pairs: vec![],
            objective_integral: false,
        };
        let milp = solve_milp(&m).unwrap();
        if let (LpOutcome::Optimal(r), LpOutcome::Optimal(s)) = (&relax, &milp) {
            assert!(s.value >= r.value);
            assert!(m.is_feasible(&s.point));
        }
    }
}
