use crate::algebra::{BinOp, Elem, PartialAlgebra, Signature};
use crate::error::{Error, Result};
use crate::repsearch::{verify_representation, SetRepresentation};

/// Checks `a ⊖ b = c ⟺ b ⊔ c = a` for all triples, returning the first failure.
pub fn check_abc(alg: &PartialAlgebra) -> Result<()> {
    let sig = alg.signature();
    if !(sig.has_join && sig.has_minus) {
        return Err(Error::precondition("(abc) needs both join and minus"));
    }
    for (a, b, c) in alg.triples(BinOp::Minus) {
        if alg.join(b, c) != Some(a) {
            return Err(Error::precondition(format!(
                "(abc) fails: {} ⊖ {} = {} but {} ⊔ {} is not {}",
                alg.name(a), alg.name(b), alg.name(c), alg.name(b), alg.name(c), alg.name(a)
            )));
        }
    }
    for (b, c, a) in alg.triples(BinOp::Join) {
        if alg.minus(a, b) != Some(c) {
            return Err(Error::precondition(format!(
                "(abc) fails: {} ⊔ {} = {} but {} ⊖ {} is not {}",
                alg.name(b), alg.name(c), alg.name(a), alg.name(a), alg.name(b), alg.name(c)
            )));
        }
    }
    Ok(())
}

/// The unique `1` with `1 ⊖ a` defined for every `a`, if the algebra
/// satisfies `(abc)` and such an element exists and is unique.
pub fn is_complemented(alg: &PartialAlgebra) -> Result<Option<Elem>> {
    check_abc(alg)?;
    let mut tops = alg
        .elements()
        .filter(|&t| alg.elements().all(|a| alg.minus(t, a).is_some()));
    let first = tops.next();
    Ok(if tops.next().is_some() { None } else { first })
}

/// Both verdicts for one map, as a join representation and as a minus
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterpartReport {
    pub as_join: bool,
    pub as_minus: bool,
}

impl CounterpartReport {
    pub fn agree(&self) -> bool {
        self.as_join == self.as_minus
    }
}

/// Verifies `rep` against the join reduct and against the minus reduct.
pub fn derive_counterpart_checks(alg: &PartialAlgebra, rep: &SetRepresentation) -> Result<CounterpartReport> {
    check_abc(alg)?;
    let as_join = verify_representation(&alg.reduct(Signature::JOIN)?, rep).is_ok();
    let as_minus = verify_representation(&alg.reduct(Signature::MINUS)?, rep).is_ok();
    Ok(CounterpartReport { as_join, as_minus })
}
