//! The axial-set families, their gluing congruence and quotients, the
//! permutation representation and complemented-algebra utilities.

mod axial;
mod complement;
mod family;
mod generator;
mod perm;

pub use axial::{axial_algebra, gen_a, gen_sim, gen_x, x_certificate, AxialSet, Axis, Grid};
pub use complement::{check_abc, derive_counterpart_checks, is_complemented, CounterpartReport};
pub use family::{expand_comp_zero, expand_join_via_abc, expand_minus_via_abc, gen_aminus, gen_b};
pub use generator::{Generator, GeneratorRegistry};
pub use perm::{permutations, perm_representation, perm_representation_capped, DEFAULT_PERM_CAP};
