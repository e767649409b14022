//! `(⊔, 0)`-terms and equations: parsing, evaluation, validity over
//! disjoint-union algebras of sets, and a brute-force countermodel search.

mod parse;
mod term;
mod validity;

pub use parse::{parse_equation, parse_term};
pub use term::{eval_term, Equation, Node, Term};
pub use validity::{decide_validity, find_countermodel, Countermodel, COUNTERMODEL_BASE_CAP};

#[cfg(test)]
mod tests;
