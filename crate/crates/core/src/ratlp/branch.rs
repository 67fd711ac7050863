//! Exact branch-and-bound over the rational simplex.
//!
//! Node selection is best-bound with ties broken by lowest node id.
//! Complementarity violations are branched first: for the most-violated
//! pair (largest `min(x_a, x_b)`, ties by pair order) the side carrying
//! more mass is selected, and the dichotomy is "that variable is zero" or
//! "every complementarity partner of it is zero". The second child
//! resolves all conflicts of the committed variable at once, which keeps
//! the tree shallow. Without pair violations, the most-fractional integer
//! variable is branched, ties broken by lowest variable index. Fixed
//! variables are eliminated from the node LP by column substitution;
//! integer cuts become single-row bounds. Incumbents are replaced only by
//! strictly better solutions, so the reported witness is the
//! deterministic first optimum found.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{LpOutcome, LpSolution, MilpModel, Rational, Relation, Sense};
use crate::error::Result;

#[derive(Debug, Clone, Default)]
struct Cuts {
    /// var -> (tightened integral lower, tightened integral upper)
    bounds: BTreeMap<usize, (Option<BigInt>, Option<BigInt>)>,
}

impl Cuts {
    fn tighten_upper(&mut self, var: usize, ub: BigInt) {
        let entry = self.bounds.entry(var).or_default();
        match &entry.1 {
            Some(old) if *old <= ub => {}
            _ => entry.1 = Some(ub),
        }
    }

    fn tighten_lower(&mut self, var: usize, lb: BigInt) {
        let entry = self.bounds.entry(var).or_default();
        match &entry.0 {
            Some(old) if *old >= lb => {}
            _ => entry.0 = Some(lb),
        }
    }
}

#[derive(Debug, Default)]
struct Node {
    fixed: BTreeMap<usize, Rational>,
    cuts: Cuts,
}

struct HeapEntry {
    bound: Option<Rational>,
    id: u64,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for HeapEntry {}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; we want lowest bound (None = -inf)
        // first, then lowest id.
        let bound_cmp = match (&self.bound, &other.bound) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => b.cmp(a),
        };
        bound_cmp.then_with(|| other.id.cmp(&self.id))
    }
}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Solve a MILP exactly. An optional feasible starting point seeds the
/// incumbent (it is verified exactly and only used for pruning, so the
/// returned optimum does not depend on its quality).
pub fn solve_milp_seeded(model: &MilpModel, seed: Option<&[Rational]>) -> Result<LpOutcome> {
    model.validate()?;
    let maximize = matches!(model.lp.sense, Sense::Maximize);
    let mut norm = model.clone();
    if maximize {
        norm.lp.sense = Sense::Minimize;
        for c in norm.lp.objective.iter_mut() {
            *c = -&*c;
        }
    }
    let out = run(&norm, seed);
    Ok(match out {
        LpOutcome::Optimal(mut sol) => {
            if maximize {
                sol.value = -sol.value;
            }
            LpOutcome::Optimal(sol)
        }
        other => other,
    })
}

fn run(model: &MilpModel, seed: Option<&[Rational]>) -> LpOutcome {
    // with an integral objective a node whose rounded-up bound reaches the
    // incumbent cannot contain anything strictly better
    let prune_bound = |bound: &Rational, inc: &Rational| -> bool {
        if model.objective_integral {
            bound.ceil() >= *inc
        } else {
            *bound >= *inc
        }
    };

    let mut incumbent: Option<LpSolution> = None;
    if let Some(point) = seed {
        if model.is_feasible(point) {
            incumbent = Some(LpSolution {
                value: model.lp.objective_at(point),
                point: point.to_vec(),
            });
        }
    }

    let mut partners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &model.complementary_pairs {
        partners.entry(a).or_default().push(b);
        partners.entry(b).or_default().push(a);
    }

    let mut nodes: Vec<Node> = vec![Node::default()];
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry { bound: None, id: 0 });
    let mut next_id: u64 = 1;

    while let Some(entry) = heap.pop() {
        if let (Some(b), Some(inc)) = (&entry.bound, &incumbent) {
            if prune_bound(b, &inc.value) {
                continue;
            }
        }
        let node = std::mem::take(&mut nodes[entry.id as usize]);

        let Some(lp_result) = solve_node(model, &node) else {
            continue; // infeasible node
        };
        let (value, point) = match lp_result {
            NodeLp::Unbounded => return LpOutcome::Unbounded,
            NodeLp::Optimal(v, p) => (v, p),
        };
        if let Some(inc) = &incumbent {
            if prune_bound(&value, &inc.value) {
                continue;
            }
        }

        match first_violation(model, &point) {
            None => {
                debug_assert!(model.is_feasible(&point));
                incumbent = Some(LpSolution { value, point });
            }
            Some(Violation::Pair(a, b)) => {
                // commit the heavier side: either it vanishes, or every
                // variable it conflicts with does
                let u = if point[a] >= point[b] { a } else { b };
                let mut fixed = node.fixed.clone();
                fixed.insert(u, Rational::zero());
                nodes.push(Node { fixed, cuts: node.cuts.clone() });
                heap.push(HeapEntry { bound: Some(value.clone()), id: next_id });
                next_id += 1;

                let mut fixed = node.fixed.clone();
                for &p in &partners[&u] {
                    fixed.insert(p, Rational::zero());
                }
                nodes.push(Node { fixed, cuts: node.cuts.clone() });
                heap.push(HeapEntry { bound: Some(value.clone()), id: next_id });
                next_id += 1;
            }
            Some(Violation::Integer(var)) => {
                let iv = model
                    .integers
                    .iter()
                    .find(|iv| iv.index == var)
                    .expect("violated variable is integer-constrained");
                let x = &point[var];
                let lo_cut = {
                    let f = x.floor().to_integer();
                    if f > iv.upper { iv.upper.clone() } else { f }
                };
                let hi_cut = {
                    let c = &lo_cut + 1;
                    if c < iv.lower { iv.lower.clone() } else { c }
                };
                // child: var <= lo_cut
                if lo_cut >= iv.lower {
                    let mut child = Node { fixed: node.fixed.clone(), cuts: node.cuts.clone() };
                    if lo_cut == iv.lower {
                        child.fixed.insert(var, Rational::from(lo_cut.clone()));
                    } else {
                        child.cuts.tighten_upper(var, lo_cut.clone());
                    }
                    heap.push(HeapEntry { bound: Some(value.clone()), id: next_id });
                    nodes.push(child);
                    next_id += 1;
                }
                // child: var >= hi_cut
                if hi_cut <= iv.upper {
                    let mut child = Node { fixed: node.fixed.clone(), cuts: node.cuts.clone() };
                    if hi_cut == iv.upper {
                        child.fixed.insert(var, Rational::from(hi_cut.clone()));
                    } else {
                        child.cuts.tighten_lower(var, hi_cut.clone());
                    }
                    heap.push(HeapEntry { bound: Some(value.clone()), id: next_id });
                    nodes.push(child);
                    next_id += 1;
                }
            }
        }
    }

    match incumbent {
        Some(sol) => LpOutcome::Optimal(sol),
        None => LpOutcome::Infeasible,
    }
}

enum Violation {
    Pair(usize, usize),
    Integer(usize),
}

fn first_violation(model: &MilpModel, point: &[Rational]) -> Option<Violation> {
    // most-violated pair: largest min(x_a, x_b), ties by pair order
    let mut best_pair: Option<(Rational, usize, usize)> = None;
    for &(a, b) in &model.complementary_pairs {
        if point[a].is_positive() && point[b].is_positive() {
            let v = point[a].clone().min(point[b].clone());
            match &best_pair {
                Some((bv, _, _)) if *bv >= v => {}
                _ => best_pair = Some((v, a, b)),
            }
        }
    }
    if let Some((_, a, b)) = best_pair {
        return Some(Violation::Pair(a, b));
    }
    // most fractional integer variable; integral out-of-bound values also count
    let mut best: Option<(Rational, usize)> = None;
    for iv in &model.integers {
        let x = &point[iv.index];
        let score = if x.is_integer() {
            let n = x.to_integer();
            if n < iv.lower || n > iv.upper {
                Rational::from(BigInt::from(1)) // worst possible fractionality
            } else {
                continue;
            }
        } else {
            let frac = x - x.floor();
            let inv = Rational::from(BigInt::from(1)) - &frac;
            if frac < inv { frac } else { inv }
        };
        match &best {
            Some((s, _)) if *s >= score => {}
            _ => best = Some((score, iv.index)),
        }
    }
    best.map(|(_, var)| Violation::Integer(var))
}

enum NodeLp {
    Optimal(Rational, Vec<Rational>),
    Unbounded,
}

/// Solve the node relaxation: fixed variables are substituted out, cuts
/// become single-variable rows. Returns None when infeasible.
fn solve_node(model: &MilpModel, node: &Node) -> Option<NodeLp> {
    let n = model.lp.num_vars;
    let free: Vec<usize> = (0..n).filter(|v| !node.fixed.contains_key(v)).collect();
    let col_of: BTreeMap<usize, usize> =
        free.iter().enumerate().map(|(j, &v)| (v, j)).collect();

    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &model.lp.constraints {
        let mut coeffs = vec![Rational::zero(); free.len()];
        let mut rhs = c.rhs.clone();
        let mut all_zero = true;
        for (v, coef) in c.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            match node.fixed.get(&v) {
                Some(val) => rhs -= coef * val,
                None => {
                    coeffs[col_of[&v]] = coef.clone();
                    all_zero = false;
                }
            }
        }
        if all_zero {
            let ok = match c.relation {
                Relation::Le => !rhs.is_negative(),
                Relation::Eq => rhs.is_zero(),
                Relation::Ge => !rhs.is_positive(),
            };
            if !ok {
                return None;
            }
            continue;
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (&var, (lb, ub)) in &node.cuts.bounds {
        let Some(&col) = col_of.get(&var) else {
            // fixed meanwhile; verify consistency
            let val = &node.fixed[&var];
            if let Some(lb) = lb {
                if val < &Rational::from(lb.clone()) {
                    return None;
                }
            }
            if let Some(ub) = ub {
                if val > &Rational::from(ub.clone()) {
                    return None;
                }
            }
            continue;
        };
        let mut unit = vec![Rational::zero(); free.len()];
        unit[col] = Rational::from(BigInt::from(1));
        if let Some(lb) = lb {
            if lb.is_positive() {
                rows.push((unit.clone(), Relation::Ge, Rational::from(lb.clone())));
            }
        }
        if let Some(ub) = ub {
            rows.push((unit, Relation::Le, Rational::from(ub.clone())));
        }
    }
    // fixed values must be non-negative to stay inside the variable domain
    if node.fixed.values().any(|v| v.is_negative()) {
        return None;
    }

    let objective: Vec<Rational> = free.iter().map(|&v| model.lp.objective[v].clone()).collect();
    let out = super::solve_rows(&objective, &rows, free.len(), Sense::Minimize);
    match out {
        super::simplex::EngineOutcome::Infeasible => None,
        super::simplex::EngineOutcome::Unbounded => Some(NodeLp::Unbounded),
        super::simplex::EngineOutcome::Optimal(reduced) => {
            let mut point = vec![Rational::zero(); n];
            for (j, &v) in free.iter().enumerate() {
                point[v] = reduced[j].clone();
            }
            for (&v, val) in &node.fixed {
                point[v] = val.clone();
            }
            let value = model.lp.objective_at(&point);
            Some(NodeLp::Optimal(value, point))
        }
    }
}
