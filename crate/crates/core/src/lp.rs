//! Exact rational linear programming by two-phase tableau simplex.
//!
//! Problems here are tiny (a few dozen variables, at most a handful of
//! rows), so a dense tableau with Bland's anti-cycling rule is simple and
//! fast enough. All arithmetic is over `BigRational`; the feasibility and
//! optimality answers are exact.

use crate::linalg::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// Minimum value attained, with one optimal point (original variables).
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Minimize `objective . x` over `x >= 0` subject to `constraints`.
pub fn minimize(objective: &[Rat], constraints: &[Constraint]) -> LpOutcome {
    let n_orig = objective.len();
    // normalize to equalities with slack variables
    let n_slack = constraints
        .iter()
        .filter(|c| matches!(c.rel, Rel::Le | Rel::Ge))
        .count();
    let n = n_orig + n_slack;
    let m = constraints.len();

    let mut a = vec![vec![Rat::zero(); n]; m];
    let mut b = vec![Rat::zero(); m];
    let mut slack = n_orig;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n_orig, "constraint arity mismatch");
        for (j, v) in c.coeffs.iter().enumerate() {
            a[i][j] = v.clone();
        }
        b[i] = c.rhs.clone();
        match c.rel {
            Rel::Le => {
                a[i][slack] = Rat::one();
                slack += 1;
            }
            Rel::Ge => {
                a[i][slack] = -Rat::one();
                slack += 1;
            }
            Rel::Eq => {}
        }
        if b[i].is_negative() {
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
    }

    // phase 1: artificial basis
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a[i].clone();
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(b[i].clone());
        tab.push(row);
    }
    let total = n + m; // columns before rhs
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut cost = vec![Rat::zero(); total + 1];
    for j in n..n + m {
        cost[j] = Rat::one();
    }
    reduce_cost(&mut cost, &tab, &basis);
    if !run_simplex(&mut tab, &mut cost, &mut basis, total) {
        unreachable!("phase 1 is bounded below by 0");
    }
    let phase1 = -cost[total].clone();
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }

    // drive artificials out of the basis; drop redundant rows
    let mut row = 0;
    while row < tab.len() {
        if basis[row] >= n {
            let piv = (0..n).find(|&j| !tab[row][j].is_zero());
            match piv {
                Some(j) => {
                    pivot(&mut tab, &mut cost, &mut basis, row, j, total);
                }
                None => {
                    tab.remove(row);
                    basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }

    // phase 2 on original columns only (artificial columns zeroed out)
    for t in tab.iter_mut() {
        for j in n..n + m {
            t[j] = Rat::zero();
        }
    }
    let mut cost2 = vec![Rat::zero(); total + 1];
    for (j, v) in objective.iter().enumerate() {
        cost2[j] = v.clone();
    }
    reduce_cost(&mut cost2, &tab, &basis);
    if !run_simplex(&mut tab, &mut cost2, &mut basis, n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); n_orig];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n_orig {
            x[bv] = tab[i][total].clone();
        }
    }
    LpOutcome::Optimal {
        value: -cost2[total].clone(),
        solution: x,
    }
}

/// Decide feasibility of `constraints` over `x >= 0`.
pub fn feasible(n_vars: usize, constraints: &[Constraint]) -> bool {
    matches!(
        minimize(&vec![Rat::zero(); n_vars], constraints),
        LpOutcome::Optimal { .. }
    )
}

fn reduce_cost(cost: &mut [Rat], tab: &[Vec<Rat>], basis: &[usize]) {
    for (i, &bv) in basis.iter().enumerate() {
        if !cost[bv].is_zero() {
            let f = cost[bv].clone();
            for j in 0..cost.len() {
                let s = &f * &tab[i][j];
                cost[j] -= s;
            }
        }
    }
}

/// Bland-rule simplex on a canonical tableau. `limit` bounds the entering
/// column search (used to ignore artificial columns in phase 2).
/// Returns false on unboundedness.
fn run_simplex(
    tab: &mut [Vec<Rat>],
    cost: &mut [Rat],
    basis: &mut [usize],
    limit: usize,
) -> bool {
    let total = cost.len() - 1;
    loop {
        let entering = (0..limit).find(|&j| cost[j].is_negative());
        let Some(e) = entering else { return true };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..tab.len() {
            if tab[i][e].is_positive() {
                let ratio = &tab[i][total] / &tab[i][e];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else { return false };
        pivot(tab, cost, basis, l, e, total);
    }
}

fn pivot(
    tab: &mut [Vec<Rat>],
    cost: &mut [Rat],
    basis: &mut [usize],
    row: usize,
    col: usize,
    total: usize,
) {
    let p = tab[row][col].clone();
    for j in 0..=total {
        tab[row][j] = &tab[row][j] / &p;
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..=total {
                let s = &f * &tab[row][j];
                tab[i][j] -= s;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for j in 0..=total {
            let s = &f * &tab[row][j];
            cost[j] -= s;
        }
    }
    basis[row] = col;
}
