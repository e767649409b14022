//! The representation game, the formulas describing it, a finite model
//! checker, and the translation from totalised to relational formulas.

mod eval;
pub mod formula;
mod game;
mod mu;
mod parse;
mod play;
mod translate;

pub use eval::{counterexample, eval_formula, eval_total, holds, holds_total, Assignment, Program, Runner, Structure};
pub use formula::{Formula, Rel, Term, F};
pub use game::{
    decide_game, decide_game_with, first_forall_win, legal_moves, responses, strategy_table, win_for_forall,
    GameMove, GameSolution, GameSolver, Player, Position, Rounds, StrategyEntry, StrategyTable,
    DEFAULT_POSITION_CAP, DEFAULT_STRATEGY_LIMIT,
};
pub use mu::{gen_mu, gen_rho};
pub use parse::{parse_formula, parse_term};
pub use play::{play_interactive, PlayStatus, Transcript};
pub use translate::{grounded_sets, phi, psi_d, subterm_vars, translate_to_relational, GroundedSet, SubtermVars};

#[cfg(test)]
mod tests;
