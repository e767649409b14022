//! Finite partial algebras: data, validation, congruences, the derived order
//! and totalisation.

mod congruence;
mod doc;
mod order;
mod partial;
mod sets;
mod signature;
mod total;
mod validate;

pub use congruence::{check_congruence, quotient, Congruence, CongruenceViolation};
pub use doc::{
    parse_algebra, parse_algebra_doc, parse_algebra_with, serialize_algebra, AlgebraDoc, Triple,
};
pub(crate) use doc::{json_list, json_str, parse_error};
pub use order::{lesssim, LessSim};
pub use partial::{AlgebraBuilder, BinOp, Elem, PartialAlgebra};
pub use sets::{close_family, power_family, power_set, power_set_without, set_algebra, set_label};
pub use signature::{Signature, Symbol};
pub use total::{detotalise, totalise, TotalAlgebra};
pub use validate::{validate, ValidateOptions, ValidationReport, Violation, ViolationKind};

#[cfg(test)]
mod tests;
