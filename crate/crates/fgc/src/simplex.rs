//! Exact linear programming over rationals.
//!
//! A small two-phase primal simplex with the upper-bounding technique
//! (bounds are handled implicitly, not as tableau rows) and Bland's
//! anti-cycling rule. Every number is an arbitrary-precision rational, so
//! optima are exact; the branch-and-bound arborescence solver relies on
//! that. Problem sizes here are tens of variables and rows, so the dense
//! tableau is the right trade-off.

use crate::rational::Rational;
use num::{Signed, Zero};
use thiserror::Error;

/// `sum coefficient * x >= rhs`.
#[derive(Debug, Clone)]
pub struct LpRow {
    pub coefficients: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

/// Minimize `costs . x` subject to the rows and `lower <= x <= upper`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub costs: Vec<Rational>,
    pub lower: Vec<Rational>,
    /// `None` means unbounded above.
    pub upper: Vec<Option<Rational>>,
    pub rows: Vec<LpRow>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal { objective: Rational, values: Vec<Rational> },
    Infeasible,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("simplex iteration limit exceeded")]
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic,
    AtLower,
    AtUpper,
}

struct Tableau {
    /// rows[i][j]: coefficient of variable j in row i; identity on basics.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basic: Vec<usize>,
    status: Vec<Status>,
    lower: Vec<Rational>,
    upper: Vec<Option<Rational>>,
    /// Current value of the basic variable of each row.
    beta: Vec<Rational>,
    num_structural: usize,
}

impl Tableau {
    fn value_of_nonbasic(&self, j: usize) -> Rational {
        match self.status[j] {
            Status::AtUpper => self.upper[j].clone().expect("upper status implies finite bound"),
            _ => self.lower[j].clone(),
        }
    }

    fn variable_value(&self, j: usize) -> Rational {
        if self.status[j] == Status::Basic {
            let row = self.basic.iter().position(|&b| b == j).expect("basic var has a row");
            self.beta[row].clone()
        } else {
            self.value_of_nonbasic(j)
        }
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!(&self.upper[j], Some(u) if *u == self.lower[j])
    }

    /// One phase of simplex minimization for the given costs.
    fn optimize(&mut self, costs: &[Rational]) -> Result<(), LpError> {
        let num_vars = self.status.len();
        let num_rows = self.rows.len();
        let limit = 4000 + 200 * (num_vars + num_rows);
        for _ in 0..limit {
            // Reduced costs: d[j] = c[j] - c_B . column(j).
            let mut entering: Option<(usize, bool)> = None; // (var, increases)
            for j in 0..num_vars {
                if self.status[j] == Status::Basic || self.is_fixed(j) {
                    continue;
                }
                let mut reduced = costs[j].clone();
                for i in 0..num_rows {
                    let cb = &costs[self.basic[i]];
                    if !cb.is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= cb * &self.rows[i][j];
                    }
                }
                let improves = match self.status[j] {
                    Status::AtLower => reduced.is_negative(),
                    Status::AtUpper => reduced.is_positive(),
                    Status::Basic => false,
                };
                if improves {
                    entering = Some((j, self.status[j] == Status::AtLower));
                    break; // Bland: smallest improving index.
                }
            }
            let Some((enter, increases)) = entering else {
                return Ok(());
            };
            let sigma: i64 = if increases { 1 } else { -1 };

            // Ratio test: how far can the entering variable move?
            // Basic value change rate: d(x_B[i])/dt = -sigma * rows[i][enter].
            let mut best: Option<(Rational, usize)> = None; // (t_max, leaving var)
            let span = self.upper[enter]
                .as_ref()
                .map(|u| u - &self.lower[enter]);
            if let Some(span) = &span {
                best = Some((span.clone(), enter));
            }
            for i in 0..num_rows {
                let g = &self.rows[i][enter];
                if g.is_zero() {
                    continue;
                }
                let rate = if sigma > 0 { -g.clone() } else { g.clone() };
                let limit_t = if rate.is_positive() {
                    match &self.upper[self.basic[i]] {
                        Some(u) => Some((u - &self.beta[i]) / &rate),
                        None => None,
                    }
                } else {
                    Some((&self.beta[i] - &self.lower[self.basic[i]]) / (-rate))
                };
                let Some(limit_t) = limit_t else { continue };
                let replace = match &best {
                    None => true,
                    Some((t, leaving)) => {
                        limit_t < *t || (limit_t == *t && self.basic[i] < *leaving)
                    }
                };
                if replace {
                    best = Some((limit_t, self.basic[i]));
                }
            }
            let Some((t_star, leaving)) = best else {
                return Err(LpError::Unbounded);
            };
            debug_assert!(!t_star.is_negative());

            // Apply the move to every basic value.
            let delta = if sigma > 0 { t_star.clone() } else { -t_star.clone() };
            for i in 0..num_rows {
                if !self.rows[i][enter].is_zero() {
                    let change = &self.rows[i][enter] * &delta;
                    self.beta[i] -= change;
                }
            }
            if leaving == enter {
                // Bound flip, no basis change.
                self.status[enter] = if increases { Status::AtUpper } else { Status::AtLower };
                continue;
            }
            let pivot_row = self
                .basic
                .iter()
                .position(|&b| b == leaving)
                .expect("leaving variable is basic");
            let new_value = self.value_of_nonbasic(enter) + &delta;
            // Leaving variable settles on the bound it ran into.
            let g = &self.rows[pivot_row][enter];
            let rate_positive = if sigma > 0 { g.is_negative() } else { g.is_positive() };
            self.status[leaving] = if rate_positive { Status::AtUpper } else { Status::AtLower };
            self.status[enter] = Status::Basic;
            self.basic[pivot_row] = enter;
            self.beta[pivot_row] = new_value;

            // Pivot: normalize the row, eliminate the column elsewhere.
            let pivot = self.rows[pivot_row][enter].clone();
            for value in self.rows[pivot_row].iter_mut() {
                if !value.is_zero() {
                    *value /= &pivot;
                }
            }
            self.rhs[pivot_row] /= &pivot;
            for i in 0..num_rows {
                if i == pivot_row || self.rows[i][enter].is_zero() {
                    continue;
                }
                let factor = self.rows[i][enter].clone();
                for j in 0..num_vars {
                    if !self.rows[pivot_row][j].is_zero() {
                        let sub = &self.rows[pivot_row][j] * &factor;
                        self.rows[i][j] -= sub;
                    }
                }
                let sub = &self.rhs[pivot_row] * &factor;
                self.rhs[i] -= sub;
            }
        }
        Err(LpError::IterationLimit)
    }
}

/// Solves `minimize costs . x` over `rows` and bounds. Exact.
pub fn solve_min(problem: &LpProblem) -> Result<LpOutcome, LpError> {
    let ns = problem.costs.len();
    assert_eq!(problem.lower.len(), ns);
    assert_eq!(problem.upper.len(), ns);
    let m = problem.rows.len();
    // Variable layout: structural | surplus (one per row) | artificial (lazy).
    let mut lower: Vec<Rational> = problem.lower.clone();
    let mut upper: Vec<Option<Rational>> = problem.upper.clone();
    let mut status: Vec<Status> = (0..ns)
        .map(|j| if problem.upper[j].is_some() { Status::AtUpper } else { Status::AtLower })
        .collect();
    for j in 0..ns {
        debug_assert!(
            problem.upper[j].as_ref().is_none_or(|u| *u >= problem.lower[j]),
            "variable {j} has crossing bounds"
        );
    }
    for _ in 0..m {
        lower.push(Rational::zero());
        upper.push(None);
        status.push(Status::AtLower);
    }

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basic: Vec<usize> = Vec::with_capacity(m);
    let mut artificials: Vec<usize> = Vec::new();
    let mut beta: Vec<Rational> = Vec::with_capacity(m);

    let nonbasic_value = |j: usize, status: &[Status]| -> Rational {
        match status[j] {
            Status::AtUpper => upper[j].clone().unwrap(),
            _ => lower[j].clone(),
        }
    };

    for (i, row) in problem.rows.iter().enumerate() {
        let mut dense = vec![Rational::zero(); ns + m];
        for (j, c) in &row.coefficients {
            assert!(*j < ns, "row references unknown variable");
            dense[*j] += c;
        }
        let surplus = ns + i;
        let mut activity = Rational::zero();
        for j in 0..ns {
            if !dense[j].is_zero() {
                activity += &dense[j] * nonbasic_value(j, &status);
            }
        }
        let natural_surplus = activity - &row.rhs;
        if natural_surplus >= Rational::zero() {
            // Row as: -sum a x + s = -b, with s basic at its natural value.
            for value in dense.iter_mut() {
                if !value.is_zero() {
                    *value = -value.clone();
                }
            }
            dense[surplus] = Rational::from_integer(1.into());
            rows.push(dense);
            rhs.push(-row.rhs.clone());
            basic.push(surplus);
            beta.push(natural_surplus);
        } else {
            // Needs an artificial: sum a x - s + t = b, t basic.
            dense[surplus] = Rational::from_integer((-1).into());
            rows.push(dense);
            rhs.push(row.rhs.clone());
            basic.push(usize::MAX); // patched below once the column exists
            beta.push(-natural_surplus);
            artificials.push(i);
        }
    }
    let num_art = artificials.len();
    let total = ns + m + num_art;
    for (slot, &row_index) in artificials.iter().enumerate() {
        let col = ns + m + slot;
        basic[row_index] = col;
        lower.push(Rational::zero());
        upper.push(None);
        status.push(Status::Basic);
    }
    for row in rows.iter_mut() {
        row.resize(total, Rational::zero());
    }
    for (slot, &row_index) in artificials.iter().enumerate() {
        rows[row_index][ns + m + slot] = Rational::from_integer(1.into());
    }
    for i in 0..m {
        if basic[i] != usize::MAX && basic[i] < ns + m {
            status[basic[i]] = Status::Basic;
        }
    }

    let mut tableau = Tableau {
        rows,
        rhs,
        basic,
        status,
        lower,
        upper,
        beta,
        num_structural: ns,
    };

    // Phase 1: drive artificials to zero.
    if num_art > 0 {
        let mut phase1 = vec![Rational::zero(); total];
        for slot in 0..num_art {
            phase1[ns + m + slot] = Rational::from_integer(1.into());
        }
        tableau.optimize(&phase1)?;
        let infeasibility: Rational = (0..num_art)
            .map(|slot| tableau.variable_value(ns + m + slot))
            .sum();
        if !infeasibility.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot artificials out of the basis where possible; fix them at 0.
        for i in 0..m {
            if tableau.basic[i] >= ns + m {
                debug_assert!(tableau.beta[i].is_zero());
                let target = (0..ns + m).find(|&j| {
                    tableau.status[j] != Status::Basic && !tableau.rows[i][j].is_zero()
                });
                if let Some(j) = target {
                    let old = tableau.basic[i];
                    let entering_value = tableau.value_of_nonbasic(j);
                    tableau.status[old] = Status::AtLower;
                    tableau.status[j] = Status::Basic;
                    tableau.basic[i] = j;
                    tableau.beta[i] = entering_value;
                    let pivot = tableau.rows[i][j].clone();
                    for value in tableau.rows[i].iter_mut() {
                        if !value.is_zero() {
                            *value /= &pivot;
                        }
                    }
                    tableau.rhs[i] /= &pivot;
                    for other in 0..m {
                        if other == i || tableau.rows[other][j].is_zero() {
                            continue;
                        }
                        let factor = tableau.rows[other][j].clone();
                        for col in 0..total {
                            if !tableau.rows[i][col].is_zero() {
                                let sub = &tableau.rows[i][col] * &factor;
                                tableau.rows[other][col] -= sub;
                            }
                        }
                        let sub = &tableau.rhs[i] * &factor;
                        tableau.rhs[other] -= sub;
                    }
                }
                // If no pivot target exists the row is redundant; the
                // artificial stays basic at zero, which is harmless once
                // it is fixed there.
            }
        }
        for slot in 0..num_art {
            let col = ns + m + slot;
            tableau.upper[col] = Some(Rational::zero());
        }
    }

    // Phase 2: the real objective.
    let mut phase2 = vec![Rational::zero(); total];
    phase2[..ns].clone_from_slice(&problem.costs);
    tableau.optimize(&phase2)?;

    let values: Vec<Rational> = (0..ns).map(|j| tableau.variable_value(j)).collect();
    let objective: Rational = (0..ns).map(|j| &problem.costs[j] * &values[j]).sum();
    debug_assert_eq!(tableau.num_structural, ns);
    Ok(LpOutcome::Optimal { objective, values })
}
