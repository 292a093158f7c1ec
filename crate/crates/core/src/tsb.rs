//! Stage two: mixing belief-game equilibria into a covert-signaling PBE.
//!
//! Each stage-one tuple `(a, λ, x, y)` becomes one signal whose posterior is
//! `λ` and whose receiver response is `a`. Stage two picks weights `γ ⪰ 0`
//! with `Σ γ_i λ_i = p` that maximize (or minimize) `Σ γ_i x_i`.
//!
//! Mixing is restricted to tuples that are pairwise sender-compatible: for
//! chosen `i`, `j` and every state `m` in the support of `λ_i`,
//! `(Uᵀa_j)_m ≤ x_i`. Without it the sender may profit from sending signal
//! `j` in a state that is supposed to trigger signal `i`, and the mixture is
//! not an equilibrium. [`solve_tsb_relaxed`] drops the restriction.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bimatrix::{enumerate_extreme_equilibria, EquilibriumTuple};
use crate::error::{Error, Result};
use crate::game::{
    action_values, expected_receiver_payoff, expected_sender_payoff, posterior_from_structure,
    structure_from_posterior, BeliefOutcome, CommGame, Orientation, SimplexVector,
    StochasticMatrix,
};
use crate::numeric::{dot, lp_solve, serde_string, sum, LpOutcome, LpProblem, Matrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsbSolution {
    /// Tuples carrying positive weight; one per signal.
    pub tuples: Vec<EquilibriumTuple>,
    /// `γ`, aligned with `tuples`.
    pub weights: SimplexVector,
    pub value: Rational,
    pub sense: Sense,
}

impl TsbSolution {
    /// `Λ`, column `i` is the belief of tuple `i`.
    pub fn beliefs(&self) -> StochasticMatrix {
        let cols: Vec<SimplexVector> = self.tuples.iter().map(|t| t.belief.clone()).collect();
        StochasticMatrix::from_columns(&cols).expect("tuples share a state count")
    }

    /// `A`, row `i` is the action of tuple `i`.
    pub fn receiver_strategy(&self) -> StochasticMatrix {
        let rows: Vec<SimplexVector> = self.tuples.iter().map(|t| t.action.clone()).collect();
        StochasticMatrix::from_rows(&rows).expect("tuples share an action count")
    }

    pub fn belief_outcome(&self) -> BeliefOutcome {
        BeliefOutcome {
            beliefs: self.beliefs(),
            signal_probs: self.weights.clone(),
        }
    }

    pub fn receiver_value(&self) -> Rational {
        self.tuples
            .iter()
            .zip(self.weights.entries())
            .fold(Rational::zero(), |acc, (t, g)| acc + &t.receiver_value * g)
    }
}

/// A full strategy profile with beliefs: `Π` (M×N), `A` (N×K), `Λ` (M×N).
#[derive(Debug, Clone, PartialEq)]
pub struct PbeTriple {
    pub pi: StochasticMatrix,
    pub a: StochasticMatrix,
    pub lambda: StochasticMatrix,
}

fn compatible(u: &Matrix, ti: &EquilibriumTuple, tj: &EquilibriumTuple) -> bool {
    let reply = u.vec_mul(tj.action.entries()).expect("shapes checked");
    ti.belief
        .entries()
        .iter()
        .zip(&reply)
        .all(|(lm, val)| lm.is_zero() || *val <= ti.sender_value)
}

/// Maximal cliques of an undirected graph, each sorted, in a deterministic order.
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn expand(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| v != u && adj[u][v]).count()).unwrap();
        let mut p_left = p.clone();
        for v in p.iter().copied().filter(|&v| v == pivot || !adj[pivot][v]) {
            r.push(v);
            let np = p_left.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
            expand(adj, r, np, nx, out);
            r.pop();
            p_left.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// The stage-two LP over the tuples in `subset`.
fn mix(
    game: &CommGame,
    candidates: &[EquilibriumTuple],
    subset: &[usize],
    sense: Sense,
) -> Result<Option<TsbSolution>> {
    let objective = subset
        .iter()
        .map(|&i| match sense {
            Sense::Max => candidates[i].sender_value.clone(),
            Sense::Min => -candidates[i].sender_value.clone(),
        })
        .collect();
    let mut lp = LpProblem::maximize(objective);
    for (m, pm) in game.prior().entries().iter().enumerate() {
        let row = subset.iter().map(|&i| candidates[i].belief[m].clone()).collect();
        lp = lp.equality(row, pm.clone());
    }
    let LpOutcome::Optimal { solution, .. } = lp_solve(&lp)? else {
        return Ok(None);
    };
    debug_assert_eq!(sum(&solution), crate::numeric::one());
    let (tuples, weights): (Vec<_>, Vec<_>) = subset
        .iter()
        .zip(solution)
        .filter(|(_, g)| g.is_positive())
        .map(|(&i, g)| (candidates[i].clone(), g))
        .unzip();
    let value = tuples
        .iter()
        .zip(&weights)
        .fold(Rational::zero(), |acc, (t, g)| acc + &t.sender_value * g);
    Ok(Some(TsbSolution {
        tuples,
        weights: SimplexVector::new(weights)?,
        value,
        sense,
    }))
}

fn check_candidates(game: &CommGame, candidates: &[EquilibriumTuple]) -> Result<()> {
    for t in candidates {
        if t.action.len() != game.num_actions() || t.belief.len() != game.num_states() {
            return Err(Error::DimensionMismatch(
                "candidate tuple does not match the game's shape".into(),
            ));
        }
    }
    Ok(())
}

fn better(sense: Sense, new: &Rational, old: &Rational) -> bool {
    match sense {
        Sense::Max => new > old,
        Sense::Min => new < old,
    }
}

/// Optimal Bayesian-plausible mixture of pairwise-compatible tuples.
pub fn solve_tsb(game: &CommGame, candidates: &[EquilibriumTuple], sense: Sense) -> Result<TsbSolution> {
    check_candidates(game, candidates)?;
    let u = game.sender_payoff();
    let adj: Vec<Vec<bool>> = candidates
        .iter()
        .map(|ti| {
            candidates
                .iter()
                .map(|tj| compatible(u, ti, tj) && compatible(u, tj, ti))
                .collect()
        })
        .collect();
    let mut best: Option<TsbSolution> = None;
    for clique in maximal_cliques(&adj) {
        if let Some(sol) = mix(game, candidates, &clique, sense)? {
            if best.as_ref().is_none_or(|b| better(sense, &sol.value, &b.value)) {
                best = Some(sol);
            }
        }
    }
    best.ok_or(Error::NoBeliefDominantPbe)
}

/// The stage-two LP over all candidates at once, without the compatibility
/// restriction. Its value bounds [`solve_tsb`] but the mixture need not be an
/// equilibrium.
pub fn solve_tsb_relaxed(
    game: &CommGame,
    candidates: &[EquilibriumTuple],
    sense: Sense,
) -> Result<TsbSolution> {
    check_candidates(game, candidates)?;
    let all: Vec<usize> = (0..candidates.len()).collect();
    mix(game, candidates, &all, sense)?.ok_or(Error::NoBeliefDominantPbe)
}

/// Turns a stage-two solution into `(Π, A, Λ)`.
pub fn assemble_pbe(game: &CommGame, sol: &TsbSolution) -> Result<PbeTriple> {
    let outcome = sol.belief_outcome();
    let pi = structure_from_posterior(game, &outcome)?;
    let triple = PbeTriple {
        pi,
        a: sol.receiver_strategy(),
        lambda: outcome.beliefs,
    };
    debug_assert_eq!(
        expected_sender_payoff(game, &triple.pi, &triple.a).ok().as_ref(),
        Some(&sol.value)
    );
    Ok(triple)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Babbling {
    pub triple: PbeTriple,
    /// Receiver best response to the prior that the sender likes most.
    pub action: usize,
    pub sender_preferred: Rational,
    /// Sender value under the worst tied receiver best response.
    pub sender_worst: Rational,
    pub receiver_value: Rational,
}

/// The uninformative equilibrium with `signal_count` identical signals.
pub fn babbling_pbe(game: &CommGame, signal_count: usize) -> Babbling {
    let n = signal_count.max(1);
    let p = game.prior().entries();
    let r_vals = action_values(game.receiver_payoff(), p);
    let s_vals = action_values(game.sender_payoff(), p);
    let best_r = r_vals.iter().max().expect("at least one action").clone();
    let ties: Vec<usize> = (0..r_vals.len()).filter(|&k| r_vals[k] == best_r).collect();
    // First index wins among equal sender values.
    let action = ties
        .iter()
        .copied()
        .reduce(|a, b| if s_vals[b] > s_vals[a] { b } else { a })
        .unwrap();
    let worst = ties.iter().map(|&k| &s_vals[k]).min().unwrap().clone();

    let k_count = game.num_actions();
    let point = SimplexVector::point(k_count, action);
    let triple = PbeTriple {
        pi: StochasticMatrix::from_rows(&vec![SimplexVector::uniform(n); game.num_states()])
            .expect("uniform rows"),
        a: StochasticMatrix::from_rows(&vec![point; n]).expect("point rows"),
        lambda: StochasticMatrix::from_columns(&vec![game.prior().clone(); n]).expect("prior columns"),
    };
    Babbling {
        triple,
        action,
        sender_preferred: s_vals[action].clone(),
        sender_worst: worst,
        receiver_value: best_r,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SenderDeviation {
    pub state: usize,
    pub from_signal: usize,
    pub to_signal: usize,
    #[serde(with = "serde_string")]
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReceiverDeviation {
    pub signal: usize,
    pub from_action: usize,
    pub to_action: usize,
    #[serde(with = "serde_string")]
    pub gain: Rational,
}

/// Outcome of the three equilibrium conditions plus realizability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbeCheckReport {
    pub sender_best_response: bool,
    pub sender_witness: Option<SenderDeviation>,
    pub receiver_best_response: bool,
    pub receiver_witness: Option<ReceiverDeviation>,
    pub consistent: bool,
    pub all_signals_realizable: bool,
}

impl PbeCheckReport {
    pub fn all_true(&self) -> bool {
        self.sender_best_response
            && self.receiver_best_response
            && self.consistent
            && self.all_signals_realizable
    }
}

/// Checks sender optimality, receiver optimality and Bayes consistency of
/// `(Π, A, Λ)` exactly.
pub fn check_pbe(
    game: &CommGame,
    pi: &StochasticMatrix,
    a: &StochasticMatrix,
    lambda: &StochasticMatrix,
) -> Result<PbeCheckReport> {
    let (m_count, k_count) = (game.num_states(), game.num_actions());
    let n_count = pi.shape().1;
    if pi.orientation() != Orientation::Rows
        || a.orientation() != Orientation::Rows
        || lambda.orientation() != Orientation::Columns
        || pi.shape() != (m_count, n_count)
        || a.shape() != (n_count, k_count)
        || lambda.shape() != (m_count, n_count)
    {
        return Err(Error::DimensionMismatch(format!(
            "expected Π {m_count}xN row-stochastic, A Nx{k_count} row-stochastic, Λ {m_count}xN column-stochastic"
        )));
    }
    let pi_m = pi.matrix();
    let a_m = a.matrix();
    let lambda_m = lambda.matrix();

    // Sender: each state may only use signals whose induced play is best for it.
    let au = a_m.mul(game.sender_payoff())?;
    let mut sender_witness = None;
    'states: for m in 0..m_count {
        let col = au.column(m);
        let (best_n, best) = col.iter().enumerate().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0))).unwrap();
        for n in 0..n_count {
            if pi_m[(m, n)].is_positive() && col[n] < *best {
                sender_witness = Some(SenderDeviation {
                    state: m,
                    from_signal: n,
                    to_signal: best_n,
                    gain: best - &col[n],
                });
                break 'states;
            }
        }
    }

    // Receiver: each signal's mixed action uses only best replies to Λ_n.
    let v_lambda = game.receiver_payoff().mul(lambda_m)?;
    let mut receiver_witness = None;
    'signals: for n in 0..n_count {
        let col = v_lambda.column(n);
        let (best_k, best) = col.iter().enumerate().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0))).unwrap();
        for k in 0..k_count {
            if a_m[(n, k)].is_positive() && col[k] < *best {
                receiver_witness = Some(ReceiverDeviation {
                    signal: n,
                    from_action: k,
                    to_action: best_k,
                    gain: best - &col[k],
                });
                break 'signals;
            }
        }
    }

    // Consistency on realized signals.
    let p = game.prior().entries();
    let gamma: Vec<Rational> = (0..n_count)
        .map(|n| (0..m_count).fold(Rational::zero(), |acc, m| acc + &p[m] * &pi_m[(m, n)]))
        .collect();
    let all_signals_realizable = gamma.iter().all(Signed::is_positive);
    let consistent = (0..n_count).filter(|&n| gamma[n].is_positive()).all(|n| {
        (0..m_count).all(|m| lambda_m[(m, n)] == &p[m] * &pi_m[(m, n)] / &gamma[n])
    });

    Ok(PbeCheckReport {
        sender_best_response: sender_witness.is_none(),
        sender_witness,
        receiver_best_response: receiver_witness.is_none(),
        receiver_witness,
        consistent,
        all_signals_realizable,
    })
}

/// Per-signal test that `λ_n` maximizes `a_nᵀUλ` over beliefs.
pub fn check_belief_dominance(
    game: &CommGame,
    a: &StochasticMatrix,
    lambda: &StochasticMatrix,
) -> Result<Vec<bool>> {
    if a.shape().0 != lambda.shape().1
        || a.shape().1 != game.num_actions()
        || lambda.shape().0 != game.num_states()
    {
        return Err(Error::DimensionMismatch("A is NxK and Λ is MxN".into()));
    }
    let u = game.sender_payoff();
    Ok((0..a.shape().0)
        .map(|n| {
            let reply = u.vec_mul(a.matrix().row(n)).expect("shapes checked");
            let current = dot(&reply, &lambda.matrix().column(n));
            reply.iter().all(|v| *v <= current)
        })
        .collect())
}

/// All covert-signaling results for one game.
#[derive(Debug, Clone, PartialEq)]
pub struct CsReport {
    pub candidates: Vec<EquilibriumTuple>,
    pub tsb_max: Option<TsbSolution>,
    pub tsb_min: Option<TsbSolution>,
    pub babbling: Babbling,
}

pub fn solve_cs(game: &CommGame) -> Result<CsReport> {
    let candidates = enumerate_extreme_equilibria(game.sender_payoff(), game.receiver_payoff())?;
    let attempt = |sense| match solve_tsb(game, &candidates, sense) {
        Ok(sol) => Ok(Some(sol)),
        Err(Error::NoBeliefDominantPbe) => Ok(None),
        Err(e) => Err(e),
    };
    let tsb_max = attempt(Sense::Max)?;
    let tsb_min = attempt(Sense::Min)?;
    Ok(CsReport {
        babbling: babbling_pbe(game, 1),
        candidates,
        tsb_max,
        tsb_min,
    })
}

/// JSON form of an equilibrium profile, read back by the checker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumDocument {
    #[serde(with = "serde_string::matrix")]
    pub pi: Vec<Vec<Rational>>,
    #[serde(with = "serde_string::matrix")]
    pub a: Vec<Vec<Rational>>,
    #[serde(with = "serde_string::matrix")]
    pub lambda: Vec<Vec<Rational>>,
    #[serde(with = "serde_string::vec")]
    pub gamma: Vec<Rational>,
    #[serde(with = "serde_string")]
    pub sender_value: Rational,
    #[serde(with = "serde_string")]
    pub receiver_value: Rational,
}

impl EquilibriumDocument {
    /// Records `triple` with `γ` and both expected payoffs recomputed from it.
    pub fn from_triple(game: &CommGame, triple: &PbeTriple) -> Result<Self> {
        let p = game.prior().entries();
        let pi = triple.pi.matrix();
        let gamma = (0..pi.cols())
            .map(|n| (0..pi.rows()).fold(Rational::zero(), |acc, m| acc + &p[m] * &pi[(m, n)]))
            .collect();
        Ok(Self {
            pi: pi.to_rows(),
            a: triple.a.matrix().to_rows(),
            lambda: triple.lambda.matrix().to_rows(),
            gamma,
            sender_value: expected_sender_payoff(game, &triple.pi, &triple.a)?,
            receiver_value: expected_receiver_payoff(game, &triple.pi, &triple.a)?,
        })
    }

    /// Validates stochasticity; shape agreement with a game is left to `check_pbe`.
    pub fn to_triple(&self) -> Result<PbeTriple> {
        let as_validation = |e: Error| match e {
            Error::DimensionMismatch(msg) => Error::Validation(msg),
            other => other,
        };
        Ok(PbeTriple {
            pi: StochasticMatrix::row_stochastic(Matrix::from_rows(self.pi.clone()).map_err(as_validation)?)?,
            a: StochasticMatrix::row_stochastic(Matrix::from_rows(self.a.clone()).map_err(as_validation)?)?,
            lambda: StochasticMatrix::column_stochastic(
                Matrix::from_rows(self.lambda.clone()).map_err(as_validation)?,
            )?,
        })
    }
}

/// Babbling triple as a belief outcome; convenient for round-trip checks.
pub fn babbling_beliefs(game: &CommGame, signal_count: usize) -> Result<BeliefOutcome> {
    posterior_from_structure(game, &babbling_pbe(game, signal_count).triple.pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::*;
    use crate::numeric::{int, ratio};

    fn candidates(game: &CommGame) -> Vec<EquilibriumTuple> {
        enumerate_extreme_equilibria(game.sender_payoff(), game.receiver_payoff()).unwrap()
    }

    fn half() -> Vec<Rational> {
        vec![ratio(1, 2), ratio(1, 2)]
    }

    #[test]
    fn example1_max_is_truth_telling() {
        let g = example1();
        let sol = solve_tsb(&g, &candidates(&g), Sense::Max).unwrap();
        assert_eq!(sol.value, ratio(3, 4));
        assert_eq!(sol.weights.entries(), &half()[..]);
        assert_eq!(sol.beliefs().matrix(), &Matrix::identity(2));
        let values: Vec<_> = sol.tuples.iter().map(|t| t.sender_value.clone()).collect();
        assert_eq!(values, vec![int(1), ratio(1, 2)]);

        let triple = assemble_pbe(&g, &sol).unwrap();
        assert_eq!(triple.pi.matrix(), &Matrix::identity(2));
        assert_eq!(triple.a.matrix(), &Matrix::identity(2));
        assert_eq!(triple.lambda.matrix(), &Matrix::identity(2));
        assert!(check_pbe(&g, &triple.pi, &triple.a, &triple.lambda).unwrap().all_true());
    }

    #[test]
    fn example1_min_mixes_the_indifferent_tuple() {
        // Oracle: enumerate all plausible pairs of candidate beliefs by hand.
        // λ=(1,0) appears with x ∈ {1, 1/3}, λ=(0,1) with x = 1/2; p forces
        // γ = (1/2, 1/2) across the two beliefs, so min = 1/2·1/3 + 1/2·1/2.
        let g = example1();
        let sol = solve_tsb(&g, &candidates(&g), Sense::Min).unwrap();
        assert_eq!(sol.value, ratio(5, 12));
        let triple = assemble_pbe(&g, &sol).unwrap();
        assert!(check_pbe(&g, &triple.pi, &triple.a, &triple.lambda).unwrap().all_true());
    }

    #[test]
    fn pennies_single_tuple() {
        let g = pennies(half());
        let sol = solve_tsb(&g, &candidates(&g), Sense::Max).unwrap();
        assert_eq!(sol.tuples.len(), 1);
        assert_eq!(sol.weights.entries(), &[int(1)]);
        assert_eq!(sol.value, int(1));
        let triple = assemble_pbe(&g, &sol).unwrap();
        assert_eq!(triple.pi.matrix(), &Matrix::filled(2, 1, int(1)));
        assert_eq!(triple.a.matrix().row(0), &half()[..]);
    }

    #[test]
    fn pennies_off_center_prior_is_infeasible() {
        let g = pennies(vec![ratio(1, 4), ratio(3, 4)]);
        assert_eq!(solve_tsb(&g, &candidates(&g), Sense::Max), Err(Error::NoBeliefDominantPbe));
    }

    #[test]
    fn incompatible_separation_is_not_selected() {
        let g = CommGame::unlabeled(
            half(),
            mat(&[&[int(1), int(0)], &[int(2), int(3)]]),
            mat(&[&[int(1), int(0)], &[int(0), int(1)]]),
        )
        .unwrap();
        let cands = candidates(&g);
        let relaxed = solve_tsb_relaxed(&g, &cands, Sense::Max).unwrap();
        assert_eq!(relaxed.value, int(2));
        let t = assemble_pbe(&g, &relaxed).unwrap();
        let report = check_pbe(&g, &t.pi, &t.a, &t.lambda).unwrap();
        assert!(!report.sender_best_response);

        let sol = solve_tsb(&g, &cands, Sense::Max).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        let t = assemble_pbe(&g, &sol).unwrap();
        assert!(check_pbe(&g, &t.pi, &t.a, &t.lambda).unwrap().all_true());
    }

    #[test]
    fn babbling_example1() {
        let g = example1();
        let b = babbling_pbe(&g, 1);
        assert_eq!(b.action, 1);
        assert_eq!(b.sender_preferred, ratio(1, 4));
        assert_eq!(b.sender_worst, ratio(1, 4));
        assert_eq!(b.receiver_value, ratio(3, 2));
        assert!(check_pbe(&g, &b.triple.pi, &b.triple.a, &b.triple.lambda).unwrap().all_true());
    }

    #[test]
    fn babbling_uniform_structure() {
        let g = example1();
        let b = babbling_pbe(&g, 3);
        assert_eq!(b.triple.pi.matrix(), &Matrix::filled(2, 3, ratio(1, 3)));
        let rows = b.triple.a.matrix().to_rows();
        assert!(rows.windows(2).all(|w| w[0] == w[1]));
        assert!(check_pbe(&g, &b.triple.pi, &b.triple.a, &b.triple.lambda).unwrap().all_true());
        let beliefs = babbling_beliefs(&g, 3).unwrap();
        assert_eq!(&beliefs.beliefs, &b.triple.lambda);
    }

    #[test]
    fn babbling_symmetric_tie() {
        let b = babbling_pbe(&pennies(half()), 1);
        assert_eq!(b.sender_preferred, int(1));
        assert_eq!(b.sender_worst, int(1));
    }

    #[test]
    fn babbling_indifferent_receiver_favors_sender() {
        let g = CommGame::unlabeled(
            vec![ratio(1, 3), ratio(2, 3)],
            mat(&[&[int(3), int(0)], &[int(0), int(2)], &[int(1), int(1)]]),
            Matrix::filled(3, 2, int(4)),
        )
        .unwrap();
        let b = babbling_pbe(&g, 1);
        // (Up) = (1, 4/3, 1)
        assert_eq!(b.sender_preferred, ratio(4, 3));
        assert_eq!(b.sender_worst, int(1));
        assert_eq!(b.action, 1);
    }

    fn example1_triple(eps: Rational) -> PbeTriple {
        PbeTriple {
            pi: rows(&[&[int(1), int(0)], &[int(0), int(1)]]),
            a: rows(&[&[int(1) - &eps, eps], &[int(0), int(1)]]),
            lambda: StochasticMatrix::column_stochastic(Matrix::identity(2)).unwrap(),
        }
    }

    #[test]
    fn check_separating_family() {
        let g = example1();
        for eps in [int(0), ratio(2, 3), int(1)] {
            let t = example1_triple(eps);
            assert!(check_pbe(&g, &t.pi, &t.a, &t.lambda).unwrap().all_true());
        }
    }

    #[test]
    fn check_inverted_receiver() {
        let g = example1();
        let t = PbeTriple {
            a: rows(&[&[int(0), int(1)], &[int(1), int(0)]]),
            ..example1_triple(int(0))
        };
        let r = check_pbe(&g, &t.pi, &t.a, &t.lambda).unwrap();
        assert!(!r.receiver_best_response);
        assert_eq!(
            r.receiver_witness,
            Some(ReceiverDeviation {
                signal: 1,
                from_action: 0,
                to_action: 1,
                gain: int(2)
            })
        );
        assert!(r.consistent && r.all_signals_realizable);
        assert!(!r.all_true());
    }

    #[test]
    fn check_inconsistent_and_unrealized() {
        let g = example1();
        let t = PbeTriple {
            pi: rows(&[&[int(1), int(0)], &[int(1), int(0)]]),
            ..example1_triple(int(0))
        };
        let r = check_pbe(&g, &t.pi, &t.a, &t.lambda).unwrap();
        assert!(!r.all_signals_realizable);
        assert!(!r.consistent);
    }

    #[test]
    fn belief_dominance_cutoff() {
        let g = example1();
        for (eps, expect) in [(int(0), true), (ratio(2, 3), true), (ratio(3, 4), false)] {
            let t = example1_triple(eps);
            let dom = check_belief_dominance(&g, &t.a, &t.lambda).unwrap();
            assert_eq!(dom.iter().all(|d| *d), expect);
        }
    }

    #[test]
    fn solve_cs_reports_all_components() {
        let g = example1();
        let cs = solve_cs(&g).unwrap();
        assert_eq!(cs.candidates.len(), 3);
        assert_eq!(cs.tsb_max.unwrap().value, ratio(3, 4));
        assert_eq!(cs.tsb_min.unwrap().value, ratio(5, 12));
        assert_eq!(cs.babbling.sender_preferred, ratio(1, 4));

        let cs = solve_cs(&pennies(half())).unwrap();
        assert_eq!(cs.tsb_max.unwrap().value, int(1));
        assert_eq!(cs.tsb_min.unwrap().value, int(1));
        assert_eq!(cs.babbling.sender_preferred, int(1));

        let cs = solve_cs(&pennies(vec![ratio(1, 4), ratio(3, 4)])).unwrap();
        assert!(cs.tsb_max.is_none() && cs.tsb_min.is_none());
    }

    #[test]
    fn equilibrium_document_round_trip() {
        let g = example1();
        let sol = solve_tsb(&g, &candidates(&g), Sense::Max).unwrap();
        let triple = assemble_pbe(&g, &sol).unwrap();
        let doc = EquilibriumDocument::from_triple(&g, &triple).unwrap();
        assert_eq!(doc.sender_value, ratio(3, 4));
        assert_eq!(doc.gamma, half());
        let json = serde_json::to_string(&doc).unwrap();
        let back: EquilibriumDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_triple().unwrap(), triple);
    }

    #[test]
    fn cliques_of_small_graph() {
        // 0-1, 1-2, 0-2 triangle plus isolated 3
        let t = true;
        let f = false;
        let adj = vec![
            vec![t, t, t, f],
            vec![t, t, t, f],
            vec![t, t, t, f],
            vec![f, f, f, t],
        ];
        assert_eq!(maximal_cliques(&adj), vec![vec![0, 1, 2], vec![3]]);
        let path = vec![vec![t, t, f], vec![t, t, t], vec![f, t, t]];
        assert_eq!(maximal_cliques(&path), vec![vec![0, 1], vec![1, 2]]);
    }
}
