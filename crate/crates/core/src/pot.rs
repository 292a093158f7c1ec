//! Price of transparency: covert-signaling value over overt-persuasion value.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{action_values, CommGame, SimplexVector};
use crate::numeric::{lp_solve, one, serde_string, LpOutcome, LpProblem, Matrix, Rational};
use crate::persuasion::solve_op;
use crate::tsb::solve_cs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    TsbMax,
    TsbMin,
    BabblingPreferred,
    BabblingWorst,
}

impl CandidateKind {
    pub fn label(self) -> &'static str {
        match self {
            CandidateKind::TsbMax => "tsb_max",
            CandidateKind::TsbMin => "tsb_min",
            CandidateKind::BabblingPreferred => "babbling_pref",
            CandidateKind::BabblingWorst => "babbling_worst",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub kind: CandidateKind,
    #[serde(with = "serde_string")]
    pub value: Rational,
    #[serde(with = "serde_string::option")]
    pub pot: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioStatus {
    Available,
    /// Some sender payoff is negative; ratios are not meaningful.
    NegativePayoffs,
    /// The persuasion value is zero.
    ZeroOpValue,
}

/// `cU + dJ = -eV + fJ` with `c, e > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompetitiveCertificate {
    #[serde(with = "serde_string")]
    pub c: Rational,
    #[serde(with = "serde_string")]
    pub d: Rational,
    #[serde(with = "serde_string")]
    pub e: Rational,
    #[serde(with = "serde_string")]
    pub f: Rational,
}

/// Reference quantities logged for competitive games.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompetitiveDiagnostics {
    /// Value of `U` with the belief maximizing and the receiver minimizing.
    #[serde(with = "serde_string")]
    pub saddle_value: Rational,
    #[serde(with = "serde_string")]
    pub min_up: Rational,
    #[serde(with = "serde_string")]
    pub max_up: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotReport {
    #[serde(with = "serde_string")]
    pub op_value: Rational,
    pub candidates: Vec<Candidate>,
    pub ratio_status: RatioStatus,
    pub competitive: Option<CompetitiveCertificate>,
    pub diagnostics: Option<CompetitiveDiagnostics>,
}

impl PotReport {
    pub fn candidate(&self, kind: CandidateKind) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.kind == kind)
    }

    /// The ratio for `kind`, or why it is unavailable.
    pub fn ratio(&self, kind: CandidateKind) -> Result<Rational> {
        match self.ratio_status {
            RatioStatus::ZeroOpValue => return Err(Error::ZeroOpValue),
            RatioStatus::NegativePayoffs => {
                return Err(Error::Validation("sender payoffs have negative entries".into()))
            }
            RatioStatus::Available => {}
        }
        self.candidate(kind)
            .and_then(|c| c.pot.clone())
            .ok_or(Error::NoBeliefDominantPbe)
    }

    /// Every candidate value is at most the persuasion value, and every
    /// ratio lies in `[0, 1]`.
    pub fn bound_holds(&self) -> bool {
        self.candidates.iter().all(|c| {
            c.value <= self.op_value
                && c.pot
                    .as_ref()
                    .is_none_or(|r| !r.is_negative() && *r <= one())
        })
    }
}

pub fn compute_pot(game: &CommGame) -> Result<PotReport> {
    let op = solve_op(game)?;
    let cs = solve_cs(game)?;
    let ratio_status = if !game.sender_nonnegative() {
        RatioStatus::NegativePayoffs
    } else if op.value.is_zero() {
        RatioStatus::ZeroOpValue
    } else {
        RatioStatus::Available
    };
    let mut values = Vec::new();
    if let Some(s) = &cs.tsb_max {
        values.push((CandidateKind::TsbMax, s.value.clone()));
    }
    if let Some(s) = &cs.tsb_min {
        values.push((CandidateKind::TsbMin, s.value.clone()));
    }
    values.push((CandidateKind::BabblingPreferred, cs.babbling.sender_preferred.clone()));
    values.push((CandidateKind::BabblingWorst, cs.babbling.sender_worst.clone()));
    let candidates = values
        .into_iter()
        .map(|(kind, value)| Candidate {
            kind,
            pot: (ratio_status == RatioStatus::Available).then(|| &value / &op.value),
            value,
        })
        .collect();

    let competitive = check_strict_competitive(game.sender_payoff(), game.receiver_payoff())?;
    let diagnostics = match &competitive {
        Some(_) => {
            let up = action_values(game.sender_payoff(), game.prior().entries());
            Some(CompetitiveDiagnostics {
                saddle_value: solve_matrix_game(game.sender_payoff())?.value,
                min_up: up.iter().min().expect("K >= 1").clone(),
                max_up: up.iter().max().expect("K >= 1").clone(),
            })
        }
        None => None,
    };
    if let Some(d) = &diagnostics {
        log::debug!(
            "competitive game: U^OP={} saddle={} min(Up)={} max(Up)={}",
            op.value,
            d.saddle_value,
            d.min_up,
            d.max_up
        );
    }

    Ok(PotReport {
        op_value: op.value,
        candidates,
        ratio_status,
        competitive,
        diagnostics,
    })
}

/// Finds `(c, d, e, f)` with `c = 1`, `d = 0` and `U + eV = fJ`, `e > 0`,
/// when one exists.
pub fn check_strict_competitive(u: &Matrix, v: &Matrix) -> Result<Option<CompetitiveCertificate>> {
    if u.shape() != v.shape() || u.rows() * u.cols() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "payoff shapes {:?} and {:?} differ",
            u.shape(),
            v.shape()
        )));
    }
    let us: Vec<&Rational> = u.entries().collect();
    let vs: Vec<&Rational> = v.entries().collect();
    let e = match (1..vs.len()).find(|&i| vs[i] != vs[0]) {
        Some(i) => -(us[i] - us[0]) / (vs[i] - vs[0]),
        // V constant: competitive iff U is constant too, for any e > 0.
        None => one(),
    };
    if !e.is_positive() {
        return Ok(None);
    }
    let f = us[0] + &e * vs[0];
    if us.iter().zip(&vs).any(|(ui, vi)| *ui + &e * *vi != f) {
        return Ok(None);
    }
    Ok(Some(CompetitiveCertificate {
        c: one(),
        d: Rational::zero(),
        e,
        f,
    }))
}

/// Mixed saddle point of `U`: the receiver `a` minimizes, the belief `λ`
/// maximizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saddle {
    pub minimizer: SimplexVector,
    pub maximizer: SimplexVector,
    pub value: Rational,
}

pub fn solve_matrix_game(u: &Matrix) -> Result<Saddle> {
    let (k_count, m_count) = u.shape();
    if k_count == 0 || m_count == 0 {
        return Err(Error::DimensionMismatch("empty payoff matrix".into()));
    }

    // max v  s.t.  v <= (Uλ)_k,  1ᵀλ = 1
    let mut objective = vec![Rational::zero(); m_count + 1];
    objective[m_count] = one();
    let mut lp = LpProblem::maximize(objective).free(m_count);
    for k in 0..k_count {
        let mut row: Vec<Rational> = u.row(k).iter().map(|x| -x.clone()).collect();
        row.push(one());
        lp = lp.less_eq(row, Rational::zero());
    }
    let mut total = vec![one(); m_count];
    total.push(Rational::zero());
    lp = lp.equality(total, one());
    let LpOutcome::Optimal { solution: mut lam, value } = lp_solve(&lp)? else {
        unreachable!("matrix games always have a value");
    };
    lam.pop();

    // max -w  s.t.  (Uᵀa)_m <= w,  1ᵀa = 1
    let mut objective = vec![Rational::zero(); k_count + 1];
    objective[k_count] = -one();
    let mut lp = LpProblem::maximize(objective).free(k_count);
    for m in 0..m_count {
        let mut row = u.column(m);
        row.push(-one());
        lp = lp.less_eq(row, Rational::zero());
    }
    let mut total = vec![one(); k_count];
    total.push(Rational::zero());
    lp = lp.equality(total, one());
    let LpOutcome::Optimal { solution: mut a, value: neg_w } = lp_solve(&lp)? else {
        unreachable!("matrix games always have a value");
    };
    a.pop();
    debug_assert_eq!(value, -neg_w);

    Ok(Saddle {
        minimizer: SimplexVector::new(a)?,
        maximizer: SimplexVector::new(lam)?,
        value,
    })
}

/// A zero-sum-equivalent game whose prior is the saddle belief of `U`.
///
/// `V = max(U)·J − U` keeps receiver payoffs nonnegative.
pub fn construct_competitive_instance(u: &Matrix) -> Result<CommGame> {
    if u.entries().any(Signed::is_negative) {
        return Err(Error::Validation("sender payoffs must be nonnegative".into()));
    }
    let saddle = solve_matrix_game(u)?;
    if let Some(m) = saddle.maximizer.entries().iter().position(Zero::is_zero) {
        return Err(Error::BoundaryPrior(m));
    }
    let top = u.max_entry().expect("nonempty").clone();
    let v = u.map(|x| &top - x);
    CommGame::unlabeled(saddle.maximizer.into_inner(), u.clone(), v)
}
