use num_traits::Zero;

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

/// Classifies and solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// Inconsistency takes precedence: a system that is both rank deficient and
/// contradictory is reported as `Inconsistent`.
pub fn solve_linear_system(a: &Matrix, b: &[Rational]) -> Result<LinearSolution> {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::DimensionMismatch("empty coefficient matrix".into()));
    }
    if b.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{rows} equations but right-hand side has length {}",
            b.len()
        )));
    }

    // Augmented rows.
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::with_capacity(cols.min(rows));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for k in c..=cols {
                    let delta = &factor * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }
    if pivot_cols.len() < cols {
        return Ok(LinearSolution::Underdetermined);
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Ok(LinearSolution::Unique(x))
}
