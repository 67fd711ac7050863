//! Exact rational linear programming and branch-and-bound mixed-integer
//! programming. All arithmetic is exact; no floating point anywhere.
//!
//! The simplex runs over `Ratio<i128>` with overflow-checked operations and
//! transparently retries with arbitrary-precision rationals when a solve
//! leaves the fast scalar's range, so results are always exact and the
//! pivot sequence (hence the returned vertex) is identical on both paths.

mod branch;
mod scalar;
mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use branch::solve_milp_seeded;

/// Exact arbitrary-precision rational; the number type of every
/// optimization value in this crate.
pub type Rational = BigRational;

/// Shorthand constructor `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand integer-valued rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |acc, v| acc + v);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// A linear program over non-negative variables.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub num_vars: usize,
}

impl LinearProgram {
    pub fn validate(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::input(format!(
                "objective has {} coefficients for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(Error::input(format!(
                    "constraint #{i} has {} coefficients for {} variables",
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// Exact feasibility of a point (non-negativity included).
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && point.iter().all(|x| !x.is_negative())
            && self.constraints.iter().all(|c| c.holds_at(point))
    }

    pub fn objective_at(&self, point: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// An integer-constrained variable with inclusive integral bounds.
#[derive(Debug, Clone)]
pub struct IntegerVar {
    pub index: usize,
    pub lower: BigInt,
    pub upper: BigInt,
}

impl IntegerVar {
    pub fn binary(index: usize) -> Self {
        IntegerVar { index, lower: BigInt::zero(), upper: BigInt::from(1) }
    }

    pub fn bounded(index: usize, lower: i64, upper: i64) -> Self {
        IntegerVar { index, lower: BigInt::from(lower), upper: BigInt::from(upper) }
    }
}

/// A linear program plus integrality requirements and complementarity
/// pairs `min(x_a, x_b) = 0`. Pairs are branched on directly (fix one side
/// to zero), which solves the same model as the textbook binary big-M
/// linearization without carrying its constraint rows.
///
/// `objective_integral` asserts that every incumbent the search can accept
/// has an integral objective value; node bounds are then rounded towards
/// the optimum before pruning. Setting it on a model without that property
/// can cut off the optimum.
#[derive(Debug, Clone)]
pub struct MilpModel {
    pub lp: LinearProgram,
    pub integers: Vec<IntegerVar>,
    pub complementary_pairs: Vec<(usize, usize)>,
    pub objective_integral: bool,
}

impl MilpModel {
    pub fn new(lp: LinearProgram, integers: Vec<IntegerVar>) -> Self {
        MilpModel { lp, integers, complementary_pairs: vec![], objective_integral: false }
    }
}

impl MilpModel {
    pub fn validate(&self) -> Result<()> {
        self.lp.validate()?;
        for iv in &self.integers {
            if iv.index >= self.lp.num_vars {
                return Err(Error::input("integer variable index out of range"));
            }
            if iv.lower > iv.upper {
                return Err(Error::input("integer variable has empty bound interval"));
            }
        }
        for &(a, b) in &self.complementary_pairs {
            if a >= self.lp.num_vars || b >= self.lp.num_vars {
                return Err(Error::input("complementarity pair index out of range"));
            }
        }
        Ok(())
    }

    /// Does the point satisfy the LP rows plus integrality, bounds, and
    /// complementarity exactly?
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        if !self.lp.is_feasible(point) {
            return false;
        }
        for iv in &self.integers {
            let v = &point[iv.index];
            if !v.is_integer() {
                return false;
            }
            let n = v.to_integer();
            if n < iv.lower || n > iv.upper {
                return false;
            }
        }
        self.complementary_pairs
            .iter()
            .all(|(a, b)| point[*a].is_zero() || point[*b].is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
}

/// Outcome of an exact LP or MILP solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn expect_optimal(&self) -> &LpSolution {
        self.optimal().expect("expected an optimal outcome")
    }
}

/// Solve an LP exactly. The result is deterministic: the canonical optimal
/// vertex under the fixed pivot rule.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.relation, c.rhs.clone()))
        .collect();
    let outcome = solve_rows(&lp.objective, &rows, lp.num_vars, lp.sense);
    Ok(match outcome {
        simplex::EngineOutcome::Optimal(point) => {
            let value = lp.objective_at(&point);
            debug_assert!(lp.is_feasible(&point));
            LpOutcome::Optimal(LpSolution { value, point })
        }
        simplex::EngineOutcome::Infeasible => LpOutcome::Infeasible,
        simplex::EngineOutcome::Unbounded => LpOutcome::Unbounded,
    })
}

/// Solve a MILP exactly by branch-and-bound with best-bound node selection.
pub fn solve_milp(model: &MilpModel) -> Result<LpOutcome> {
    solve_milp_seeded(model, None)
}

/// Run the scalar engine, falling back to arbitrary precision on overflow.
pub(crate) fn solve_rows(
    objective: &[Rational],
    rows: &[(Vec<Rational>, Relation, Rational)],
    num_vars: usize,
    sense: Sense,
) -> simplex::EngineOutcome<Rational> {
    if let Some(problem) =
        simplex::lower::<num_rational::Ratio<i128>>(objective, rows, num_vars, sense)
    {
        if let Ok(out) = simplex::solve(&problem) {
            return match out {
                simplex::EngineOutcome::Optimal(p) => simplex::EngineOutcome::Optimal(
                    p.iter().map(scalar::Scalar::to_rational).collect(),
                ),
                simplex::EngineOutcome::Infeasible => simplex::EngineOutcome::Infeasible,
                simplex::EngineOutcome::Unbounded => simplex::EngineOutcome::Unbounded,
            };
        }
    }
    let problem = simplex::lower::<Rational>(objective, rows, num_vars, sense)
        .expect("BigRational lowering cannot fail");
    simplex::solve(&problem).expect("BigRational arithmetic cannot overflow")
}

#[cfg(test)]
mod tests;
