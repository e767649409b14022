//! Representability by sets: point types, witness search, certificates,
//! explicit representations and their checks.

mod certificate;
mod complete;
mod pf;
mod point;
mod representation;
mod search;
mod zero;

pub use certificate::{
    base_bound, parse_certificate, requirements, serialize_certificate, verify_certificate,
    RepCertificate, Requirement, UndefinednessWitness,
};
pub use complete::{verify_lesssim_complete, CompletenessMode, CompletenessReport, DEFAULT_COMPLETE_CAP};
pub use pf::{serialize_pf_representation, to_pf_representation, verify_pf_representation, PfRepresentation};
pub use point::{check_point_type, subset, ClauseKind, PointViolation};
pub use representation::{
    build_representation, parse_representation, serialize_representation, verify_representation,
    RepReport, SetRepresentation,
};
pub use search::{
    decide_representable, decide_representable_with, Refutation, SearchConfig, SearchOutcome,
    DEFAULT_NODE_CAP,
};
pub use zero::{decide_via_zero_reduction, strip_zero, ZeroReduction};
