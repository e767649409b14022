//! A workbench for finite partial algebras of sets and partial functions over
//! disjoint-union style signatures.

pub mod algebra;
pub mod counterexamples;
pub mod decider;
pub mod equations;
pub mod error;
pub mod games;
pub mod meet;
pub mod repsearch;

pub use error::{Error, Result};
