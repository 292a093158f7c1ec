//! Overt persuasion: the sender commits to `Π` publicly.
//!
//! The sender-preferred value comes from the revelation-principle LP over
//! joint distributions `z_{mk}` of state and recommended action, subject to
//! obedience. Receiver ties break toward the sender. For two states the
//! value is cross-checked by concavifying the sender's indirect utility.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{action_values, CommGame, SimplexVector, StochasticMatrix};
use crate::numeric::{lp_solve, one, sum, LpOutcome, LpProblem, Matrix, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct PersuasionSolution {
    /// `z`, `M×K` joint probability of state and recommendation.
    pub joint: Matrix,
    pub value: Rational,
    /// Actions recommended with positive probability; signal `n` recommends
    /// `recommended[n]`.
    pub recommended: Vec<usize>,
    /// `Π_{mn} = z_{m,recommended[n]} / p_m`.
    pub pi: StochasticMatrix,
    /// Obedient receiver: row `n` is the point mass on `recommended[n]`.
    pub a: StochasticMatrix,
}

impl PersuasionSolution {
    /// Exact obedience check: no recommendation is better ignored.
    pub fn is_obedient(&self, game: &CommGame) -> bool {
        let v = game.receiver_payoff();
        let (m_count, k_count) = (game.num_states(), game.num_actions());
        (0..k_count).all(|k| {
            (0..k_count).all(|alt| {
                let gain = (0..m_count).fold(Rational::zero(), |acc, m| {
                    acc + &self.joint[(m, k)] * (&v[(k, m)] - &v[(alt, m)])
                });
                !gain.is_negative()
            })
        })
    }
}

/// Sender-preferred value of overt persuasion.
pub fn solve_op(game: &CommGame) -> Result<PersuasionSolution> {
    let (m_count, k_count) = (game.num_states(), game.num_actions());
    let u = game.sender_payoff();
    let v = game.receiver_payoff();
    let var = |m: usize, k: usize| m * k_count + k;
    let n_vars = m_count * k_count;

    let mut objective = vec![Rational::zero(); n_vars];
    for m in 0..m_count {
        for k in 0..k_count {
            objective[var(m, k)] = u[(k, m)].clone();
        }
    }
    let mut lp = LpProblem::maximize(objective);
    for (m, pm) in game.prior().entries().iter().enumerate() {
        let mut row = vec![Rational::zero(); n_vars];
        for k in 0..k_count {
            row[var(m, k)] = one();
        }
        lp = lp.equality(row, pm.clone());
    }
    for k in 0..k_count {
        for alt in (0..k_count).filter(|&alt| alt != k) {
            let mut row = vec![Rational::zero(); n_vars];
            for m in 0..m_count {
                row[var(m, k)] = &v[(k, m)] - &v[(alt, m)];
            }
            lp = lp.greater_eq(row, Rational::zero());
        }
    }

    let LpOutcome::Optimal { solution, value } = lp_solve(&lp)? else {
        unreachable!("recommending the prior best response is always feasible and the LP is bounded");
    };
    let joint = Matrix::from_fn(m_count, k_count, |m, k| solution[var(m, k)].clone());
    let recommended: Vec<usize> = (0..k_count)
        .filter(|&k| sum(&joint.column(k)).is_positive())
        .collect();
    let p = game.prior().entries();
    let pi = Matrix::from_fn(m_count, recommended.len(), |m, n| &joint[(m, recommended[n])] / &p[m]);
    let a_rows: Vec<SimplexVector> = recommended
        .iter()
        .map(|&k| SimplexVector::point(k_count, k))
        .collect();
    let sol = PersuasionSolution {
        joint,
        value,
        pi: StochasticMatrix::row_stochastic(pi)?,
        a: StochasticMatrix::from_rows(&a_rows)?,
        recommended,
    };
    debug_assert!(sol.is_obedient(game));
    Ok(sol)
}

/// Sender's indirect utility at `belief`: the receiver best-responds and
/// breaks ties in the sender's favour (lowest index among exact ties).
pub fn u_hat(game: &CommGame, belief: &SimplexVector) -> Result<(Rational, usize)> {
    if belief.len() != game.num_states() {
        return Err(Error::DimensionMismatch(format!(
            "belief has {} entries for {} states",
            belief.len(),
            game.num_states()
        )));
    }
    let r = action_values(game.receiver_payoff(), belief.entries());
    let s = action_values(game.sender_payoff(), belief.entries());
    let best = (0..r.len())
        .reduce(|a, b| {
            if (&r[b], &s[b]) > (&r[a], &s[a]) {
                b
            } else {
                a
            }
        })
        .expect("at least one action");
    Ok((s[best].clone(), best))
}

/// Concave envelope of `û` at the prior, for two-state games.
pub fn concavify_binary(game: &CommGame) -> Result<Rational> {
    if game.num_states() != 2 {
        return Err(Error::NotBinary(game.num_states()));
    }
    let v = game.receiver_payoff();
    let k_count = game.num_actions();
    let (zero, unit) = (Rational::zero(), one());

    // Beliefs are (1 - t, t); collect every t where two receiver payoffs cross.
    let mut points = vec![zero.clone(), unit.clone()];
    for k in 0..k_count {
        for j in k + 1..k_count {
            let c = &v[(k, 0)] - &v[(j, 0)];
            let slope = (&v[(k, 1)] - &v[(k, 0)]) - (&v[(j, 1)] - &v[(j, 0)]);
            if slope.is_zero() {
                continue;
            }
            let t = -c / slope;
            if t >= zero && t <= unit {
                points.push(t);
            }
        }
    }
    points.sort();
    points.dedup();
    let values: Vec<Rational> = points
        .iter()
        .map(|t| {
            let belief = SimplexVector::new(vec![&unit - t, t.clone()]).expect("t in [0, 1]");
            u_hat(game, &belief).map(|(val, _)| val)
        })
        .collect::<Result<_>>()?;

    let target = &game.prior()[1];
    let mut best: Option<Rational> = None;
    for i in 0..points.len() {
        if points[i] == *target {
            best = best.max(Some(values[i].clone()));
        }
        for j in i + 1..points.len() {
            let (lo, hi) = (&points[i], &points[j]);
            if lo < target && target < hi {
                let w_hi = (target - lo) / (hi - lo);
                let w_lo = &unit - &w_hi;
                best = best.max(Some(w_lo * &values[i] + w_hi * &values[j]));
            }
        }
    }
    Ok(best.expect("interior prior lies between 0 and 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::*;
    use crate::numeric::{int, ratio};

    fn sv(v: &[Rational]) -> SimplexVector {
        SimplexVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn example1_full_revelation() {
        let g = example1();
        let sol = solve_op(&g).unwrap();
        assert_eq!(sol.value, ratio(3, 4));
        assert_eq!(sol.joint, Matrix::diag(&[ratio(1, 2), ratio(1, 2)]));
        assert_eq!(sol.recommended, vec![0, 1]);
        assert_eq!(sol.pi.matrix(), &Matrix::identity(2));
        assert!(sol.is_obedient(&g));
    }

    #[test]
    fn pennies_pools() {
        let g = pennies(vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(solve_op(&g).unwrap().value, int(1));
    }

    #[test]
    fn aligned_game_reveals_everything() {
        let u = mat(&[&[int(3), int(0), int(1)], &[int(1), int(2), int(0)], &[int(0), int(1), int(4)]]);
        let p = vec![ratio(1, 5), ratio(1, 2), ratio(3, 10)];
        let g = CommGame::unlabeled(p.clone(), u.clone(), u.clone()).unwrap();
        let expected = (0..3).fold(Rational::zero(), |acc, m| {
            acc + &p[m] * u.column(m).iter().max().unwrap()
        });
        assert_eq!(solve_op(&g).unwrap().value, expected);
    }

    #[test]
    fn u_hat_examples() {
        let g = example1();
        assert_eq!(u_hat(&g, &sv(&[int(1), int(0)])).unwrap(), (int(1), 0));
        assert_eq!(u_hat(&g, &sv(&[int(0), int(1)])).unwrap(), (ratio(1, 2), 1));
        assert_eq!(u_hat(&g, &sv(&[ratio(1, 3), ratio(2, 3)])).unwrap(), (ratio(1, 3), 1));
    }

    #[test]
    fn concavify_example1() {
        assert_eq!(concavify_binary(&example1()).unwrap(), ratio(3, 4));
    }

    #[test]
    fn concavify_aligned() {
        let u = mat(&[&[int(5), int(1)], &[int(2), int(3)]]);
        let p = vec![ratio(2, 7), ratio(5, 7)];
        let g = CommGame::unlabeled(p.clone(), u.clone(), u).unwrap();
        assert_eq!(concavify_binary(&g).unwrap(), &p[0] * int(5) + &p[1] * int(3));
    }

    #[test]
    fn concavify_constant() {
        let g = CommGame::unlabeled(
            vec![ratio(1, 3), ratio(2, 3)],
            Matrix::filled(3, 2, ratio(5, 2)),
            mat(&[&[int(1), int(0)], &[int(0), int(1)], &[ratio(1, 2), ratio(1, 2)]]),
        )
        .unwrap();
        assert_eq!(concavify_binary(&g).unwrap(), ratio(5, 2));
    }

    #[test]
    fn concavify_rejects_non_binary() {
        let g = CommGame::unlabeled(vec![int(1)], mat(&[&[int(1)]]), mat(&[&[int(1)]])).unwrap();
        assert_eq!(concavify_binary(&g), Err(Error::NotBinary(1)));
    }
}
