//! Exact arithmetic: rationals, dense matrices, linear systems and LPs.

mod linsolve;
mod lp;
mod matrix;
mod rational;

pub use linsolve::{solve_linear_system, LinearSolution};
pub use lp::{lp_solve, LpOutcome, LpProblem, LpStatus};
pub use matrix::{bilinear, dot, sum, Matrix};
pub use rational::{
    format_rational, int, is_nonnegative, one, parse_rational, ratio, serde_string, to_f64, zero,
    Rational,
};
