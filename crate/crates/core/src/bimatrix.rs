//! Stage one: extreme equilibria of the belief game.
//!
//! The belief game pairs a receiver choosing a mixed action `a ∈ Δ(K)` with
//! a belief player choosing `λ ∈ Δ(M)`. The belief player maximizes
//! `aᵀUλ` (sender payoff) and the receiver maximizes `aᵀVλ`. This is the
//! orientation of the belief-dominance constraints; it is the transpose of
//! the usual "row player owns U" bimatrix convention.
//!
//! Enumeration is over completely labeled vertex pairs of the two
//! best-response polyhedra, which also covers degenerate games whose
//! equilibrium components are not points.

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{action_values, SimplexVector};
use crate::numeric::{bilinear, dot, solve_linear_system, LinearSolution, Matrix, Rational};

/// One equilibrium of the belief game with its two payoffs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquilibriumTuple {
    /// Receiver mixed action, length `K`.
    pub action: SimplexVector,
    /// Belief, length `M`.
    pub belief: SimplexVector,
    /// `aᵀUλ`
    pub sender_value: Rational,
    /// `aᵀVλ`
    pub receiver_value: Rational,
}

impl EquilibriumTuple {
    pub fn new(u: &Matrix, v: &Matrix, action: SimplexVector, belief: SimplexVector) -> Result<Self> {
        let sender_value = bilinear(action.entries(), u, belief.entries())?;
        let receiver_value = bilinear(action.entries(), v, belief.entries())?;
        Ok(Self {
            action,
            belief,
            sender_value,
            receiver_value,
        })
    }
}

/// A vertex of `{(s, w) : s ∈ Δ, payoff·s ≤ w·1}`.
struct Vertex {
    strategy: Vec<Rational>,
    /// Opponent pure strategies attaining the maximum.
    best_replies: Vec<bool>,
}

/// `payoff` rows are opponent pure strategies, columns index `s`.
fn polyhedron_vertices(payoff: &Matrix) -> Vec<Vertex> {
    let dim = payoff.cols();
    let replies = payoff.rows();
    // Inequalities 0..dim are `-s_j <= 0`, dim..dim+replies are `payoff_r·s - w <= 0`.
    let mut out: Vec<Vertex> = Vec::new();
    for tight in (0..dim + replies).combinations(dim) {
        let mut rows = Vec::with_capacity(dim + 1);
        let mut rhs = Vec::with_capacity(dim + 1);
        let mut total = vec![Rational::from_integer(1.into()); dim];
        total.push(Rational::zero());
        rows.push(total);
        rhs.push(Rational::from_integer(1.into()));
        for &c in &tight {
            let mut row = vec![Rational::zero(); dim + 1];
            if c < dim {
                row[c] = Rational::from_integer(1.into());
            } else {
                row[..dim].clone_from_slice(payoff.row(c - dim));
                row[dim] = Rational::from_integer((-1).into());
            }
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let system = Matrix::from_rows(rows).expect("rows have equal length");
        let Ok(LinearSolution::Unique(mut sol)) = solve_linear_system(&system, &rhs) else {
            continue;
        };
        let w = sol.pop().expect("system has dim + 1 unknowns");
        if sol.iter().any(|x| x < &Rational::zero()) {
            continue;
        }
        let values = action_values(payoff, &sol);
        if values.iter().any(|val| val > &w) {
            continue;
        }
        if out.iter().any(|vx| vx.strategy == sol) {
            continue;
        }
        out.push(Vertex {
            best_replies: values.iter().map(|val| *val == w).collect(),
            strategy: sol,
        });
    }
    out
}

fn check_shapes(u: &Matrix, v: &Matrix) -> Result<()> {
    if u.shape() != v.shape() || u.rows() == 0 || u.cols() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "payoff matrices must share a nonempty shape, got {:?} and {:?}",
            u.shape(),
            v.shape()
        )));
    }
    Ok(())
}

/// Every extreme equilibrium of the belief game, each exactly once, sorted by
/// sender value (descending) and then lexicographically by `(a, λ)`.
pub fn enumerate_extreme_equilibria(u: &Matrix, v: &Matrix) -> Result<Vec<EquilibriumTuple>> {
    check_shapes(u, v)?;
    // Receiver side: a is constrained by the belief player's replies, whose
    // payoff against a is Uᵀa.
    let action_vertices = polyhedron_vertices(&u.transpose());
    // Belief side: λ is constrained by receiver replies Vλ.
    let belief_vertices = polyhedron_vertices(v);

    let mut found = Vec::new();
    for av in &action_vertices {
        for bv in &belief_vertices {
            let actions_labeled = av
                .strategy
                .iter()
                .zip(&bv.best_replies)
                .all(|(ak, best)| ak.is_zero() || *best);
            let states_labeled = bv
                .strategy
                .iter()
                .zip(&av.best_replies)
                .all(|(lm, best)| lm.is_zero() || *best);
            if actions_labeled && states_labeled {
                let action = SimplexVector::new(av.strategy.clone())?;
                let belief = SimplexVector::new(bv.strategy.clone())?;
                found.push(EquilibriumTuple::new(u, v, action, belief)?);
            }
        }
    }
    found.sort_by(|x, y| {
        y.sender_value
            .cmp(&x.sender_value)
            .then_with(|| x.action.cmp(&y.action))
            .then_with(|| x.belief.cmp(&y.belief))
    });
    found.dedup();
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// A pure belief (state) beats `λ` against `a` under `U`.
    Belief,
    /// A pure action beats `a` against `λ` under `V`.
    Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub side: Side,
    pub index: usize,
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleReport {
    pub belief_side: bool,
    pub action_side: bool,
    /// Whether the stored `x`, `y` equal `aᵀUλ`, `aᵀVλ`.
    pub values_consistent: bool,
    pub violations: Vec<Deviation>,
}

impl TupleReport {
    pub fn is_equilibrium(&self) -> bool {
        self.belief_side && self.action_side
    }
}

/// Checks both best-response conditions against pure deviations.
pub fn verify_equilibrium_tuple(u: &Matrix, v: &Matrix, t: &EquilibriumTuple) -> Result<TupleReport> {
    check_shapes(u, v)?;
    let a = t.action.entries();
    let lambda = t.belief.entries();
    if a.len() != u.rows() || lambda.len() != u.cols() {
        return Err(Error::DimensionMismatch(format!(
            "tuple has |a| = {}, |λ| = {} for a {}x{} game",
            a.len(),
            lambda.len(),
            u.rows(),
            u.cols()
        )));
    }
    let mut violations = Vec::new();

    let belief_payoffs = u.vec_mul(a)?;
    let current = dot(&belief_payoffs, lambda);
    for (m, val) in belief_payoffs.iter().enumerate() {
        if val > &current {
            violations.push(Deviation {
                side: Side::Belief,
                index: m,
                gain: val - &current,
            });
        }
    }
    let belief_side = violations.is_empty();

    let action_payoffs = action_values(v, lambda);
    let current_r = dot(&action_payoffs, a);
    for (k, val) in action_payoffs.iter().enumerate() {
        if val > &current_r {
            violations.push(Deviation {
                side: Side::Action,
                index: k,
                gain: val - &current_r,
            });
        }
    }
    let action_side = violations.iter().all(|d| d.side == Side::Belief);

    Ok(TupleReport {
        belief_side,
        action_side,
        values_consistent: current == t.sender_value && current_r == t.receiver_value,
        violations,
    })
}
