//! Exact two-phase primal simplex over rationals.
//!
//! Pivoting follows Bland's least-index rule, so the method terminates on
//! degenerate problems and the returned vertex is a deterministic function
//! of the input.

use num_traits::{Signed, Zero};

use super::matrix::dot;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `maximize objective·x` subject to `eq_rows·x = eq_rhs`,
/// `le_rows·x <= le_rhs` and `x_j >= lower_bounds[j]` (`None` means free).
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub eq_rows: Vec<Vec<Rational>>,
    pub eq_rhs: Vec<Rational>,
    pub le_rows: Vec<Vec<Rational>>,
    pub le_rhs: Vec<Rational>,
    pub lower_bounds: Vec<Option<Rational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        solution: Vec<Rational>,
        value: Rational,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { solution, .. } => Some(solution),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LpProblem {
    /// A maximization problem over nonnegative variables with no constraints.
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            objective,
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            le_rows: Vec::new(),
            le_rhs: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn equality(mut self, row: Vec<Rational>, rhs: Rational) -> Self {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
        self
    }

    pub fn less_eq(mut self, row: Vec<Rational>, rhs: Rational) -> Self {
        self.le_rows.push(row);
        self.le_rhs.push(rhs);
        self
    }

    pub fn greater_eq(self, row: Vec<Rational>, rhs: Rational) -> Self {
        self.less_eq(row.into_iter().map(|v| -v).collect(), -rhs)
    }

    pub fn free(mut self, var: usize) -> Self {
        self.lower_bounds[var] = None;
        self
    }

    pub fn lower_bound(mut self, var: usize, bound: Rational) -> Self {
        self.lower_bounds[var] = Some(bound);
        self
    }

    pub fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        let mismatch = |what: &str| Err(Error::DimensionMismatch(what.to_string()));
        if self.lower_bounds.len() != n {
            return mismatch("lower bound vector length differs from objective length");
        }
        if self.eq_rows.len() != self.eq_rhs.len() {
            return mismatch("equality rows and rhs differ in length");
        }
        if self.le_rows.len() != self.le_rhs.len() {
            return mismatch("inequality rows and rhs differ in length");
        }
        if self.eq_rows.iter().chain(&self.le_rows).any(|r| r.len() != n) {
            return mismatch("constraint row length differs from objective length");
        }
        Ok(())
    }

    /// Exact feasibility test for a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.eq_rows.iter().zip(&self.eq_rhs).all(|(r, b)| dot(r, x) == *b)
            && self.le_rows.iter().zip(&self.le_rhs).all(|(r, b)| dot(r, x) <= *b)
            && self
                .lower_bounds
                .iter()
                .zip(x)
                .all(|(l, v)| l.as_ref().is_none_or(|l| v >= l))
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

/// How an original variable maps onto nonnegative standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    Shifted { col: usize, lower: Rational },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// `rows × (cols + 1)`; last entry of each row is the rhs.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum PivotResult {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                d -= &cost[b] * &self.t[i][j];
            }
        }
        d
    }

    /// Maximizes `cost` over columns `0..allowed` with Bland's rule.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> PivotResult {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(col) = entering else {
                return PivotResult::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return PivotResult::Unbounded,
            }
        }
    }
}

/// Solves `problem` exactly.
pub fn lp_solve(problem: &LpProblem) -> Result<LpOutcome> {
    problem.check_dimensions()?;
    let n = problem.num_vars();

    let mut maps = Vec::with_capacity(n);
    let mut std_cols = 0;
    for lb in &problem.lower_bounds {
        match lb {
            Some(l) => {
                maps.push(VarMap::Shifted {
                    col: std_cols,
                    lower: l.clone(),
                });
                std_cols += 1;
            }
            None => {
                maps.push(VarMap::Split {
                    pos: std_cols,
                    neg: std_cols + 1,
                });
                std_cols += 2;
            }
        }
    }
    let structural = std_cols;
    let n_le = problem.le_rows.len();
    let n_eq = problem.eq_rows.len();
    let slack_start = structural;
    let real_cols = structural + n_le;
    let rows = n_eq + n_le;
    let art_start = real_cols;
    let total_cols = real_cols + rows;

    let mut t = Vec::with_capacity(rows);
    let constraints = problem
        .eq_rows
        .iter()
        .zip(&problem.eq_rhs)
        .map(|(r, b)| (r, b, None))
        .chain(
            problem
                .le_rows
                .iter()
                .zip(&problem.le_rhs)
                .enumerate()
                .map(|(k, (r, b))| (r, b, Some(slack_start + k))),
        );
    for (i, (row, rhs, slack)) in constraints.enumerate() {
        let mut line = vec![Rational::zero(); total_cols + 1];
        let mut b = rhs.clone();
        for (coef, map) in row.iter().zip(&maps) {
            match map {
                VarMap::Shifted { col, lower } => {
                    line[*col] = coef.clone();
                    b -= coef * lower;
                }
                VarMap::Split { pos, neg } => {
                    line[*pos] = coef.clone();
                    line[*neg] = -coef.clone();
                }
            }
        }
        if let Some(s) = slack {
            line[s] = Rational::from_integer(1.into());
        }
        if b.is_negative() {
            for v in line.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        line[art_start + i] = Rational::from_integer(1.into());
        line[total_cols] = b;
        t.push(line);
    }

    let mut tab = Tableau {
        t,
        basis: (art_start..art_start + rows).collect(),
        cols: total_cols,
    };

    // Phase 1: drive artificial mass to zero.
    let mut phase1 = vec![Rational::zero(); total_cols];
    for c in phase1.iter_mut().skip(art_start) {
        *c = Rational::from_integer((-1).into());
    }
    tab.optimize(&phase1, total_cols);
    let infeasibility = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art_start)
        .fold(Rational::zero(), |acc, (i, _)| acc + tab.rhs(i));
    if infeasibility.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }

    // Pivot remaining (zero-level) artificials out, dropping redundant rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= art_start {
            match (0..real_cols).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![Rational::zero(); total_cols];
    for (c, map) in problem.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted { col, .. } => cost[*col] = c.clone(),
            VarMap::Split { pos, neg } => {
                cost[*pos] = c.clone();
                cost[*neg] = -c.clone();
            }
        }
    }
    if let PivotResult::Unbounded = tab.optimize(&cost, real_cols) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut std_values = vec![Rational::zero(); real_cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        std_values[b] = tab.rhs(i).clone();
    }
    let solution: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, lower } => lower + &std_values[*col],
            VarMap::Split { pos, neg } => &std_values[*pos] - &std_values[*neg],
        })
        .collect();
    debug_assert!(problem.is_feasible(&solution));
    let value = problem.objective_value(&solution);
    Ok(LpOutcome::Optimal { solution, value })
}
