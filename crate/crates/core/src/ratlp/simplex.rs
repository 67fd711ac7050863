//! Dense two-phase tableau simplex, generic over an exact scalar.
//!
//! The pivot column is chosen by most-negative reduced cost (ties broken by
//! lowest column index); after a run of degenerate pivots the rule switches
//! to Bland's rule, which guarantees termination. The pivot row is the
//! minimum-ratio row, ties broken by lowest basic-variable index, so the
//! returned optimal vertex is canonical.

use super::scalar::Scalar;
use super::{Relation, Sense};

/// Arithmetic left the scalar's exactly-representable range; the caller
/// retries with arbitrary precision.
#[derive(Debug)]
pub(crate) struct Overflow;

#[derive(Debug)]
pub(crate) enum EngineOutcome<S> {
    Optimal(Vec<S>),
    Infeasible,
    Unbounded,
}

pub(crate) struct EngineProblem<S> {
    /// Minimization objective over the structural variables.
    pub objective: Vec<S>,
    pub rows: Vec<(Vec<S>, Relation, S)>,
    pub num_vars: usize,
}

/// Number of consecutive non-improving pivots before switching to Bland's rule.
const DEGENERACY_SWITCH: usize = 24;

struct Tableau<S> {
    /// m rows by total columns (structural + slack/surplus + artificial).
    a: Vec<Vec<S>>,
    b: Vec<S>,
    basis: Vec<usize>,
    ncols: usize,
    artificial_start: usize,
}

pub(crate) fn solve<S: Scalar>(p: &EngineProblem<S>) -> Result<EngineOutcome<S>, Overflow> {
    let m = p.rows.len();
    let n = p.num_vars;
    // assemble columns: structural, then one slack/surplus per inequality,
    // then one artificial per >=/= row (and per <= row with negative rhs
    // handled by normalization below).
    let mut slack_count = 0usize;
    for (_, rel, _) in &p.rows {
        if !matches!(rel, Relation::Eq) {
            slack_count += 1;
        }
    }
    let nstruct_slack = n + slack_count;

    let mut a: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut b: Vec<S> = Vec::with_capacity(m);
    let mut needs_artificial: Vec<bool> = Vec::with_capacity(m);
    let mut slack_col_of_row: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut next_slack = n;
    for (coeffs, rel, rhs) in &p.rows {
        let mut row: Vec<S> = Vec::with_capacity(nstruct_slack);
        row.extend(coeffs.iter().cloned());
        row.resize(nstruct_slack, S::zero());
        let mut rhs = rhs.clone();
        let mut rel = *rel;
        if rhs.is_negative() {
            for c in row.iter_mut() {
                *c = c.neg();
            }
            rhs = rhs.neg();
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        match rel {
            Relation::Le => {
                row[next_slack] = S::one();
                slack_col_of_row.push(Some(next_slack));
                next_slack += 1;
                needs_artificial.push(false);
            }
            Relation::Ge => {
                row[next_slack] = S::one().neg();
                slack_col_of_row.push(Some(next_slack));
                next_slack += 1;
                needs_artificial.push(true);
            }
            Relation::Eq => {
                slack_col_of_row.push(None);
                needs_artificial.push(true);
            }
        }
        a.push(row);
        b.push(rhs);
    }

    let artificial_rows: Vec<usize> =
        (0..m).filter(|&i| needs_artificial[i]).collect();
    let ncols = nstruct_slack + artificial_rows.len();
    let mut basis: Vec<usize> = vec![usize::MAX; m];
    for row in a.iter_mut() {
        row.resize(ncols, S::zero());
    }
    for (j, &i) in artificial_rows.iter().enumerate() {
        a[i][nstruct_slack + j] = S::one();
        basis[i] = nstruct_slack + j;
    }
    for i in 0..m {
        if !needs_artificial[i] {
            basis[i] = slack_col_of_row[i].expect("<= rows have slacks");
        }
    }

    let mut t = Tableau { a, b, basis, ncols, artificial_start: nstruct_slack };

    // phase 1: drive artificials to zero
    if !artificial_rows.is_empty() {
        let mut cost = vec![S::zero(); t.ncols];
        for j in t.artificial_start..t.ncols {
            cost[j] = S::one();
        }
        match run_phase(&mut t, &cost)? {
            PhaseResult::Optimal(value) => {
                if value.is_positive() {
                    return Ok(EngineOutcome::Infeasible);
                }
            }
            PhaseResult::Unbounded => unreachable!("phase-1 objective is bounded below by 0"),
        }
        evict_artificials(&mut t)?;
    }

    // phase 2: original objective, artificial columns disabled
    let mut cost = vec![S::zero(); t.ncols];
    for j in 0..n {
        cost[j] = p.objective[j].clone();
    }
    match run_phase(&mut t, &cost)? {
        PhaseResult::Optimal(_) => {}
        PhaseResult::Unbounded => return Ok(EngineOutcome::Unbounded),
    }

    let mut point = vec![S::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            point[bv] = t.b[i].clone();
        }
    }
    Ok(EngineOutcome::Optimal(point))
}

enum PhaseResult<S> {
    Optimal(S),
    Unbounded,
}

/// Reduced costs for the given cost vector under the current basis:
/// r_j = c_j - sum_i c_{basis(i)} a_{ij}; objective value = sum_i c_{basis(i)} b_i.
fn reduced_costs<S: Scalar>(t: &Tableau<S>, cost: &[S]) -> Result<(Vec<S>, S), Overflow> {
    let m = t.b.len();
    let mut r = cost.to_vec();
    let mut val = S::zero();
    for i in 0..m {
        let cb = &cost[t.basis[i]];
        if cb.is_zero() {
            continue;
        }
        for j in 0..t.ncols {
            if !t.a[i][j].is_zero() {
                let d = cb.checked_mul(&t.a[i][j]).ok_or(Overflow)?;
                r[j] = r[j].checked_sub(&d).ok_or(Overflow)?;
            }
        }
        let d = cb.checked_mul(&t.b[i]).ok_or(Overflow)?;
        val = val.checked_add(&d).ok_or(Overflow)?;
    }
    Ok((r, val))
}

fn run_phase<S: Scalar>(t: &mut Tableau<S>, cost: &[S]) -> Result<PhaseResult<S>, Overflow> {
    let phase2 = cost[t.artificial_start..].iter().all(|c| c.is_zero());
    let (mut reduced, mut value) = reduced_costs(t, cost)?;
    let mut bland = false;
    let mut stall = 0usize;
    loop {
        // entering column; in phase 2 artificial columns are off limits
        let limit = if phase2 { t.artificial_start } else { t.ncols };
        let entering = if bland {
            (0..limit).find(|&j| reduced[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..limit {
                if reduced[j].is_negative()
                    && best.map_or(true, |bj| reduced[j] < reduced[bj])
                {
                    best = Some(j);
                }
            }
            best
        };
        let Some(col) = entering else {
            return Ok(PhaseResult::Optimal(value));
        };

        // ratio test; ties by lowest basic-variable index
        let mut pivot_row: Option<(usize, S)> = None;
        for i in 0..t.b.len() {
            if !t.a[i][col].is_positive() {
                continue;
            }
            let ratio = t.b[i].checked_div(&t.a[i][col]).ok_or(Overflow)?;
            match &pivot_row {
                None => pivot_row = Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < *br || (ratio == *br && t.basis[i] < t.basis[*bi]) {
                        pivot_row = Some((i, ratio));
                    }
                }
            }
        }
        let Some((row, ratio)) = pivot_row else {
            return Ok(PhaseResult::Unbounded);
        };

        if ratio.is_zero() {
            stall += 1;
            if stall >= DEGENERACY_SWITCH {
                bland = true;
            }
        } else {
            stall = 0;
        }

        pivot(t, row, col)?;
        let step = reduced[col].checked_mul(&ratio).ok_or(Overflow)?;
        value = value.checked_add(&step).ok_or(Overflow)?;
        update_reduced(&mut reduced, t, row, col)?;
    }
}

fn pivot<S: Scalar>(t: &mut Tableau<S>, row: usize, col: usize) -> Result<(), Overflow> {
    let piv = t.a[row][col].clone();
    debug_assert!(!piv.is_zero());
    for j in 0..t.ncols {
        if !t.a[row][j].is_zero() {
            t.a[row][j] = t.a[row][j].checked_div(&piv).ok_or(Overflow)?;
        }
    }
    t.b[row] = t.b[row].checked_div(&piv).ok_or(Overflow)?;
    for i in 0..t.b.len() {
        if i == row || t.a[i][col].is_zero() {
            continue;
        }
        let f = t.a[i][col].clone();
        for j in 0..t.ncols {
            if !t.a[row][j].is_zero() {
                let d = t.a[row][j].checked_mul(&f).ok_or(Overflow)?;
                t.a[i][j] = t.a[i][j].checked_sub(&d).ok_or(Overflow)?;
            }
        }
        let d = t.b[row].checked_mul(&f).ok_or(Overflow)?;
        t.b[i] = t.b[i].checked_sub(&d).ok_or(Overflow)?;
    }
    t.basis[row] = col;
    Ok(())
}

fn update_reduced<S: Scalar>(
    reduced: &mut [S],
    t: &Tableau<S>,
    row: usize,
    col: usize,
) -> Result<(), Overflow> {
    let f = reduced[col].clone();
    if f.is_zero() {
        return Ok(());
    }
    for j in 0..t.ncols {
        if !t.a[row][j].is_zero() {
            let d = t.a[row][j].checked_mul(&f).ok_or(Overflow)?;
            reduced[j] = reduced[j].checked_sub(&d).ok_or(Overflow)?;
        }
    }
    Ok(())
}

/// After phase 1, pivot remaining zero-level artificial variables out of the
/// basis; rows that cannot be repaired are redundant and are dropped.
fn evict_artificials<S: Scalar>(t: &mut Tableau<S>) -> Result<(), Overflow> {
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..t.b.len() {
        if t.basis[i] < t.artificial_start {
            continue;
        }
        debug_assert!(t.b[i].is_zero(), "basic artificial above zero after phase 1");
        let col = (0..t.artificial_start).find(|&j| !t.a[i][j].is_zero());
        match col {
            Some(j) => pivot(t, i, j)?,
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        t.a.remove(i);
        t.b.remove(i);
        t.basis.remove(i);
    }
    Ok(())
}

/// Build the minimization problem for a scalar type, or fail if some input
/// coefficient does not fit.
pub(crate) fn lower<S: Scalar>(
    objective: &[num_rational::BigRational],
    rows: &[(Vec<num_rational::BigRational>, Relation, num_rational::BigRational)],
    num_vars: usize,
    sense: Sense,
) -> Option<EngineProblem<S>> {
    let mut obj: Vec<S> = Vec::with_capacity(num_vars);
    for c in objective {
        let v = S::from_rational(c)?;
        obj.push(if matches!(sense, Sense::Maximize) { v.neg() } else { v });
    }
    let mut out_rows = Vec::with_capacity(rows.len());
    for (coeffs, rel, rhs) in rows {
        let mut r: Vec<S> = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            r.push(S::from_rational(c)?);
        }
        out_rows.push((r, *rel, S::from_rational(rhs)?));
    }
    Some(EngineProblem { objective: obj, rows: out_rows, num_vars })
}
