//! Finite communication games, their JSON document and the Bayes kernels.
//!
//! Payoff matrices are action-major: `U[k][m]` is the sender's payoff when
//! the receiver plays action `k` in state `m`. The same holds for `V`.
//! Information structures `Π` are `M×N` row-stochastic (state → signal),
//! receiver strategies `A` are `N×K` row-stochastic (signal → action) and
//! belief systems `Λ` are `M×N` column-stochastic (one posterior per signal).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{dot, format_rational, serde_string, sum, Matrix, Rational};

/// A probability vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexVector(Vec<Rational>);

impl SimplexVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Validation("empty probability vector".into()));
        }
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::Validation(format!(
                "negative entry in probability vector {}",
                fmt_vec(&entries)
            )));
        }
        if sum(&entries) != crate::numeric::one() {
            return Err(Error::Validation(format!(
                "probability vector {} does not sum to 1",
                fmt_vec(&entries)
            )));
        }
        Ok(Self(entries))
    }

    pub fn point(len: usize, index: usize) -> Self {
        let mut v = vec![Rational::zero(); len];
        v[index] = crate::numeric::one();
        Self(v)
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0);
        Self(vec![crate::numeric::ratio(1, len as i64); len])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl std::ops::Index<usize> for SimplexVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Every row is a probability vector.
    Rows,
    /// Every column is a probability vector.
    Columns,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticMatrix {
    matrix: Matrix,
    orientation: Orientation,
}

impl StochasticMatrix {
    pub fn row_stochastic(matrix: Matrix) -> Result<Self> {
        for i in 0..matrix.rows() {
            SimplexVector::new(matrix.row(i).to_vec())
                .map_err(|e| Error::Validation(format!("row {i}: {e}")))?;
        }
        Ok(Self {
            matrix,
            orientation: Orientation::Rows,
        })
    }

    pub fn column_stochastic(matrix: Matrix) -> Result<Self> {
        for j in 0..matrix.cols() {
            SimplexVector::new(matrix.column(j))
                .map_err(|e| Error::Validation(format!("column {j}: {e}")))?;
        }
        Ok(Self {
            matrix,
            orientation: Orientation::Columns,
        })
    }

    pub fn from_rows(rows: &[SimplexVector]) -> Result<Self> {
        let m = Matrix::from_rows(rows.iter().map(|r| r.entries().to_vec()).collect())?;
        Ok(Self {
            matrix: m,
            orientation: Orientation::Rows,
        })
    }

    pub fn from_columns(cols: &[SimplexVector]) -> Result<Self> {
        let m = Matrix::from_columns(&cols.iter().map(|c| c.entries().to_vec()).collect::<Vec<_>>())?;
        Ok(Self {
            matrix: m,
            orientation: Orientation::Columns,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }
}

/// A finite sender–receiver game with a full-support prior.
#[derive(Debug, Clone, PartialEq)]
pub struct CommGame {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    prior: SimplexVector,
    sender: Matrix,
    receiver: Matrix,
    sender_nonnegative: bool,
}

impl CommGame {
    pub fn new(
        states: Vec<String>,
        actions: Vec<String>,
        prior: Vec<Rational>,
        sender: Matrix,
        receiver: Matrix,
    ) -> Result<Self> {
        let m = states.len();
        let k = actions.len();
        if m == 0 || k == 0 {
            return Err(Error::Validation("a game needs at least one state and one action".into()));
        }
        if prior.len() != m {
            return Err(Error::Validation(format!(
                "prior has {} entries for {m} states",
                prior.len()
            )));
        }
        for (name, mat) in [("sender", &sender), ("receiver", &receiver)] {
            if mat.shape() != (k, m) {
                return Err(Error::Validation(format!(
                    "{name} payoff is {}x{}, expected {k}x{m} (actions x states)",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        let prior = SimplexVector::new(prior)?;
        if let Some(z) = prior.entries().iter().position(|p| !p.is_positive()) {
            return Err(Error::Validation(format!(
                "state {:?} has zero prior probability",
                states[z]
            )));
        }
        let sender_nonnegative = sender.entries().all(|v| !v.is_negative());
        Ok(Self {
            states,
            actions,
            prior,
            sender,
            receiver,
            sender_nonnegative,
        })
    }

    /// Builds a game with generated labels `w1..wM` and `a1..aK`.
    pub fn unlabeled(prior: Vec<Rational>, sender: Matrix, receiver: Matrix) -> Result<Self> {
        let states = (1..=prior.len()).map(|i| format!("w{i}")).collect();
        let actions = (1..=sender.rows()).map(|i| format!("a{i}")).collect();
        Self::new(states, actions, prior, sender, receiver)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn prior(&self) -> &SimplexVector {
        &self.prior
    }

    /// `U`, `K×M`.
    pub fn sender_payoff(&self) -> &Matrix {
        &self.sender
    }

    /// `V`, `K×M`.
    pub fn receiver_payoff(&self) -> &Matrix {
        &self.receiver
    }

    pub fn sender_nonnegative(&self) -> bool {
        self.sender_nonnegative
    }

    pub fn with_prior(&self, prior: Vec<Rational>) -> Result<Self> {
        Self::new(
            self.states.clone(),
            self.actions.clone(),
            prior,
            self.sender.clone(),
            self.receiver.clone(),
        )
    }

    pub fn to_document(&self) -> GameDocument {
        GameDocument {
            states: self.states.clone(),
            actions: self.actions.clone(),
            prior: self.prior.entries().to_vec(),
            sender_payoff: self.sender.to_rows(),
            receiver_payoff: self.receiver.to_rows(),
        }
    }
}

/// On-disk JSON form of a [`CommGame`]. Numbers are rational strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    #[serde(with = "serde_string::vec")]
    pub prior: Vec<Rational>,
    #[serde(with = "serde_string::matrix")]
    pub sender_payoff: Vec<Vec<Rational>>,
    #[serde(with = "serde_string::matrix")]
    pub receiver_payoff: Vec<Vec<Rational>>,
}

impl GameDocument {
    pub fn into_game(self) -> Result<CommGame> {
        let shape_err = |e: Error| match e {
            Error::DimensionMismatch(msg) => Error::Validation(msg),
            other => other,
        };
        let sender = Matrix::from_rows(self.sender_payoff).map_err(shape_err)?;
        let receiver = Matrix::from_rows(self.receiver_payoff).map_err(shape_err)?;
        CommGame::new(self.states, self.actions, self.prior, sender, receiver)
    }
}

pub fn parse_game(document: &[u8]) -> Result<CommGame> {
    let doc: GameDocument =
        serde_json::from_slice(document).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_game()
}

/// Posterior beliefs together with the signal distribution that induces them.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefOutcome {
    /// `Λ`, column-stochastic `M×N`.
    pub beliefs: StochasticMatrix,
    /// `γ`, length `N`.
    pub signal_probs: SimplexVector,
}

impl BeliefOutcome {
    /// `Z = ΛΓ`
    pub fn z_matrix(&self) -> Matrix {
        let lambda = self.beliefs.matrix();
        Matrix::from_fn(lambda.rows(), lambda.cols(), |m, n| {
            &lambda[(m, n)] * &self.signal_probs[n]
        })
    }
}

fn check_structure(game: &CommGame, pi: &StochasticMatrix) -> Result<()> {
    if pi.orientation() != Orientation::Rows || pi.shape().0 != game.num_states() {
        return Err(Error::DimensionMismatch(format!(
            "information structure must be a row-stochastic {}xN matrix",
            game.num_states()
        )));
    }
    Ok(())
}

fn expected_payoff(
    game: &CommGame,
    payoff: &Matrix,
    pi: &StochasticMatrix,
    a: &StochasticMatrix,
) -> Result<Rational> {
    check_structure(game, pi)?;
    if a.orientation() != Orientation::Rows
        || a.shape() != (pi.shape().1, game.num_actions())
    {
        return Err(Error::DimensionMismatch(format!(
            "receiver strategy must be a row-stochastic {}x{} matrix",
            pi.shape().1,
            game.num_actions()
        )));
    }
    let p_pi = Matrix::diag(game.prior().entries()).mul(pi.matrix())?;
    p_pi.mul(a.matrix())?.mul(payoff)?.trace()
}

/// `Tr(P Π A U)`
pub fn expected_sender_payoff(
    game: &CommGame,
    pi: &StochasticMatrix,
    a: &StochasticMatrix,
) -> Result<Rational> {
    expected_payoff(game, game.sender_payoff(), pi, a)
}

/// `Tr(P Π A V)`
pub fn expected_receiver_payoff(
    game: &CommGame,
    pi: &StochasticMatrix,
    a: &StochasticMatrix,
) -> Result<Rational> {
    expected_payoff(game, game.receiver_payoff(), pi, a)
}

/// Bayes update `Λ = PΠ ⊘ (11ᵀPΠ)` with signal probabilities `γ = Πᵀp`.
pub fn posterior_from_structure(game: &CommGame, pi: &StochasticMatrix) -> Result<BeliefOutcome> {
    check_structure(game, pi)?;
    let p = game.prior().entries();
    let (m_count, n_count) = pi.shape();
    let joint = Matrix::from_fn(m_count, n_count, |m, n| &p[m] * &pi.matrix()[(m, n)]);
    let gamma: Vec<Rational> = (0..n_count).map(|n| sum(&joint.column(n))).collect();
    if let Some(n) = gamma.iter().position(Zero::is_zero) {
        return Err(Error::DegenerateSignal(n));
    }
    let lambda = Matrix::from_fn(m_count, n_count, |m, n| &joint[(m, n)] / &gamma[n]);
    let out = BeliefOutcome {
        beliefs: StochasticMatrix::column_stochastic(lambda)?,
        signal_probs: SimplexVector::new(gamma)?,
    };
    debug_assert!(is_plausible(game, &out));
    Ok(out)
}

/// Exact test of `Λγ = p`.
pub fn is_plausible(game: &CommGame, beliefs: &BeliefOutcome) -> bool {
    beliefs.beliefs.shape().0 == game.num_states()
        && beliefs.beliefs.shape().1 == beliefs.signal_probs.len()
        && beliefs
            .beliefs
            .matrix()
            .mul_vec(beliefs.signal_probs.entries())
            .is_ok_and(|v| v == game.prior().entries())
}

/// Inverse Bayes map: `Π_{mn} = Λ_{mn} γ_n / p_m`.
pub fn structure_from_posterior(game: &CommGame, beliefs: &BeliefOutcome) -> Result<StochasticMatrix> {
    if beliefs.beliefs.orientation() != Orientation::Columns
        || beliefs.beliefs.shape().0 != game.num_states()
        || beliefs.beliefs.shape().1 != beliefs.signal_probs.len()
    {
        return Err(Error::DimensionMismatch(
            "belief system must be column-stochastic M×N with γ of length N".into(),
        ));
    }
    if !is_plausible(game, beliefs) {
        return Err(Error::PlausibilityViolation);
    }
    if let Some(n) = beliefs.signal_probs.entries().iter().position(|g| !g.is_positive()) {
        return Err(Error::DegenerateSignal(n));
    }
    let p = game.prior().entries();
    let z = beliefs.z_matrix();
    let pi = Matrix::from_fn(z.rows(), z.cols(), |m, n| &z[(m, n)] / &p[m]);
    StochasticMatrix::row_stochastic(pi)
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Payoff of each action against a belief: `(Mλ)_k`.
pub(crate) fn action_values(payoff: &Matrix, belief: &[Rational]) -> Vec<Rational> {
    (0..payoff.rows()).map(|k| dot(payoff.row(k), belief)).collect()
}
