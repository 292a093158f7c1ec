//! Exact equilibrium computation for finite sender–receiver games under
//! overt persuasion and covert signaling, and the price of transparency
//! between them.
//!
//! Finite-game arithmetic is exact ([`numeric::Rational`]); the quadratic
//! cheap-talk module works in `f64`.

pub mod bimatrix;
pub mod error;
pub mod game;
pub mod numeric;
pub mod persuasion;
pub mod pot;
pub mod quadratic;
pub mod tsb;

pub use bimatrix::{enumerate_extreme_equilibria, verify_equilibrium_tuple, EquilibriumTuple};
pub use error::{Error, Result};
pub use game::{parse_game, CommGame, SimplexVector, StochasticMatrix};
pub use numeric::{Matrix, Rational};
pub use persuasion::{concavify_binary, solve_op, PersuasionSolution};
pub use pot::{compute_pot, PotReport};
pub use tsb::{assemble_pbe, check_pbe, solve_cs, solve_tsb, Sense, TsbSolution};
