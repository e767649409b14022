//! Signatures with intersection: axiom suites, filters and the filter
//! representation.

mod axioms;
mod filters;

pub use axioms::{check_axioms, suite, Axiom, AxiomSuite, AxiomViolation, SuiteId};
pub use filters::{
    enumerate_prime_filters, enumerate_prime_filters_capped, is_filter, maximal_separating_filter, meet_le, Filter,
    PrimeKind, DEFAULT_FILTER_CAP,
};

use fixedbitset::FixedBitSet;

use crate::algebra::{Elem, PartialAlgebra};
use crate::error::{Error, Result};
use crate::games::{Program, Structure};
use crate::repsearch::SetRepresentation;

impl SuiteId {
    pub fn prime_kind(self) -> PrimeKind {
        if self.uses_join() {
            PrimeKind::Join
        } else {
            PrimeKind::Minus
        }
    }
}

/// The first element satisfying the zero-like clause of a zero-less suite.
fn find_zero_like(alg: &PartialAlgebra, id: SuiteId) -> Result<Option<Elem>> {
    let clause = if id.uses_join() {
        axioms::join_zero_clause("z")
    } else {
        axioms::minus_zero_clause("z")
    };
    let prog = Program::compile(&clause);
    let mut run = prog.runner(Structure::Partial(alg))?;
    Ok(alg.elements().find(|&z| run.eval_values(&[z])))
}

/// `a ↦ {F ∈ Φ : a ∈ F}` over the given filters.
fn filter_map(alg: &PartialAlgebra, phi: &[Filter]) -> SetRepresentation {
    let base = (0..phi.len()).map(|i| format!("F{i}")).collect();
    let images = alg
        .elements()
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(phi.len());
            for (i, f) in phi.iter().enumerate() {
                s.set(i, f.contains(a));
            }
            s
        })
        .collect();
    SetRepresentation::new(base, images)
}

/// `a ↦ {b : b ≤ a}` over the carrier.
fn down_set_map(alg: &PartialAlgebra) -> SetRepresentation {
    let base = alg.names().to_vec();
    let images = alg
        .elements()
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(alg.len());
            for b in alg.elements() {
                s.set(b, meet_le(alg, b, a));
            }
            s
        })
        .collect();
    SetRepresentation::new(base, images)
}

/// Builds a representation of a model of the suite by sets. The base is the
/// set of proper prime filters, except in the degenerate branches of the
/// zero-less suites: the down-set map when join is nowhere defined, and the
/// empty map on the empty algebra.
pub fn birkhoff_representation(alg: &PartialAlgebra, id: SuiteId) -> Result<SetRepresentation> {
    birkhoff_representation_capped(alg, id, DEFAULT_FILTER_CAP)
}

/// [`birkhoff_representation`] with a limit on the carrier size for filter
/// enumeration.
pub fn birkhoff_representation_capped(alg: &PartialAlgebra, id: SuiteId, filter_cap: usize) -> Result<SetRepresentation> {
    let violations = check_axioms(alg, id)?;
    if let Some(v) = violations.first() {
        let more = match violations.len() {
            1 => String::new(),
            n => format!(" (and {} more)", n - 1),
        };
        return Err(Error::AxiomsViolated(format!("{v}{more}; run the axiom check for details")));
    }
    if alg.is_empty() {
        return Ok(SetRepresentation::empty());
    }
    if !id.has_zero() && find_zero_like(alg, id)?.is_none() {
        // A nonempty model of AxKMeet always has the element; for AxJMeet
        // the other disjunct says join is nowhere defined.
        return Ok(down_set_map(alg));
    }
    let phi = enumerate_prime_filters_capped(alg, id.prime_kind(), filter_cap)?;
    Ok(filter_map(alg, &phi))
}

#[cfg(test)]
mod tests;
