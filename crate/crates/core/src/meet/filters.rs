use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Elem, PartialAlgebra, Symbol};
use crate::error::{Error, Result};

/// Largest carrier for which filters are enumerated by brute force.
pub const DEFAULT_FILTER_CAP: usize = 20;

/// Which primeness a filter must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    /// `a⊔b ∈ F` implies `a ∈ F` or `b ∈ F`.
    Join,
    /// `a ∈ F` and `a⊖b` defined imply `b ∈ F` or `a⊖b ∈ F`.
    Minus,
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeKind::Join => "⊔-prime",
            PrimeKind::Minus => "⊖-prime",
        })
    }
}

/// A nonempty subset with `a·b ∈ F ⇔ a ∈ F ∧ b ∈ F`, with its properties.
/// Primeness for an operation the algebra lacks holds vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    pub members: FixedBitSet,
    pub proper: bool,
    pub join_prime: bool,
    pub minus_prime: bool,
}

impl Filter {
    /// Computes the flags of a set already known to be a filter.
    pub fn from_members(alg: &PartialAlgebra, members: FixedBitSet) -> Filter {
        let proper = members.count_ones(..) < alg.len();
        let join_prime = is_join_prime(alg, &members);
        let minus_prime = is_minus_prime(alg, &members);
        Filter {
            members,
            proper,
            join_prime,
            minus_prime,
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn is_prime(&self, kind: PrimeKind) -> bool {
        match kind {
            PrimeKind::Join => self.join_prime,
            PrimeKind::Minus => self.minus_prime,
        }
    }

    pub fn describe(&self, alg: &PartialAlgebra) -> String {
        let names: Vec<&str> = self.members.ones().map(|e| alg.name(e)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn require_meet(alg: &PartialAlgebra) -> Result<()> {
    if !alg.has(Symbol::Meet) {
        return Err(Error::SignatureMismatch(format!(
            "filters need meet, the algebra has {}",
            alg.signature()
        )));
    }
    Ok(())
}

/// `a ≤ b ⇔ a·b = a`.
pub fn meet_le(alg: &PartialAlgebra, a: Elem, b: Elem) -> bool {
    alg.meet(a, b) == a
}

pub fn is_filter(alg: &PartialAlgebra, set: &FixedBitSet) -> bool {
    if set.is_clear() {
        return false;
    }
    alg.elements().all(|a| {
        alg.elements()
            .all(|b| set.contains(alg.meet(a, b)) == (set.contains(a) && set.contains(b)))
    })
}

fn is_join_prime(alg: &PartialAlgebra, set: &FixedBitSet) -> bool {
    !alg.has(Symbol::Join)
        || alg
            .triples(crate::algebra::BinOp::Join)
            .all(|(a, b, c)| !set.contains(c) || set.contains(a) || set.contains(b))
}

fn is_minus_prime(alg: &PartialAlgebra, set: &FixedBitSet) -> bool {
    !alg.has(Symbol::Minus)
        || alg
            .triples(crate::algebra::BinOp::Minus)
            .all(|(a, b, c)| !set.contains(a) || set.contains(b) || set.contains(c))
}

/// All proper filters of the given primeness, in increasing order of the
/// membership bit mask.
pub fn enumerate_prime_filters(alg: &PartialAlgebra, kind: PrimeKind) -> Result<Vec<Filter>> {
    enumerate_prime_filters_capped(alg, kind, DEFAULT_FILTER_CAP)
}

pub fn enumerate_prime_filters_capped(alg: &PartialAlgebra, kind: PrimeKind, cap: usize) -> Result<Vec<Filter>> {
    require_meet(alg)?;
    let n = alg.len();
    if n > cap || n >= 64 {
        return Err(Error::TooLarge {
            what: "carrier for filter enumeration",
            size: n,
            cap: cap.min(63),
        });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set = mask_set(n, mask);
        if !is_filter(alg, &set) {
            continue;
        }
        let f = Filter::from_members(alg, set);
        if f.proper && f.is_prime(kind) {
            out.push(f);
        }
    }
    Ok(out)
}

fn mask_set(n: usize, mask: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// The filter generated by a filter and one more element:
/// `{x : x ≥ f·c for some f ∈ F}`.
fn extend(alg: &PartialAlgebra, f: &FixedBitSet, c: Elem) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(alg.len());
    for g in f.ones() {
        let low = alg.meet(g, c);
        for x in alg.elements() {
            if meet_le(alg, low, x) {
                out.insert(x);
            }
        }
    }
    out
}

/// A filter containing `a` but not `b`, maximal among such filters, grown
/// greedily from the principal filter of `a` in carrier order. An element
/// rejected once stays rejected as the filter grows, so the result is maximal.
/// The result must be proper and prime of `kind`; an algebra satisfying its
/// axiom suite always meets this, so a failure is reported as a violation.
pub fn maximal_separating_filter(alg: &PartialAlgebra, a: Elem, b: Elem, kind: PrimeKind) -> Result<Filter> {
    require_meet(alg)?;
    for e in [a, b] {
        if e >= alg.len() {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
    }
    if meet_le(alg, a, b) {
        return Err(Error::precondition(format!(
            "{} ≤ {}: no filter separates them",
            alg.name(a),
            alg.name(b)
        )));
    }
    let mut f = FixedBitSet::with_capacity(alg.len());
    for x in alg.elements() {
        if meet_le(alg, a, x) {
            f.insert(x);
        }
    }
    for c in alg.elements() {
        if f.contains(c) {
            continue;
        }
        let g = extend(alg, &f, c);
        if !g.contains(b) {
            f = g;
        }
    }
    let filter = Filter::from_members(alg, f);
    if !filter.proper || !filter.is_prime(kind) {
        return Err(Error::AxiomsViolated(format!(
            "the maximal filter {} separating {} from {} is not a proper {kind} filter",
            filter.describe(alg),
            alg.name(a),
            alg.name(b)
        )));
    }
    Ok(filter)
}
