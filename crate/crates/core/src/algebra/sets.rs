use super::partial::{AlgebraBuilder, PartialAlgebra};
use super::signature::Signature;
use crate::error::{Error, Result};

/// Names a subset of `{1, …, 64}` given as a bit mask, e.g. `{1,3}`.
pub fn set_label(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// The partial algebra formed by a family of sets under the concrete
/// operations of `signature`: disjoint union, subset complement and
/// intersection, each defined only when the result stays in the family.
/// Meet and zero require the family to be closed under intersection and to
/// contain the empty set.
pub fn set_algebra(family: &[u64], signature: Signature) -> Result<PartialAlgebra> {
    if signature.has_comp {
        return Err(Error::precondition("set algebras do not carry composition"));
    }
    let pos = |m: u64| family.iter().position(|&x| x == m);
    let mut b = AlgebraBuilder::new(family.iter().map(|&m| set_label(m)), signature);
    if signature.is_degenerate() {
        b = b.allow_degenerate();
    }
    for (i, &x) in family.iter().enumerate() {
        for (j, &y) in family.iter().enumerate() {
            if signature.has_join && x & y == 0 {
                if let Some(k) = pos(x | y) {
                    b.join(i, j, k);
                }
            }
            if signature.has_minus && y & !x == 0 {
                if let Some(k) = pos(x & !y) {
                    b.minus(i, j, k);
                }
            }
            if signature.has_meet {
                let k = pos(x & y).ok_or_else(|| {
                    Error::precondition(format!(
                        "family not closed under intersection: {} ∩ {}",
                        set_label(x),
                        set_label(y)
                    ))
                })?;
                b.meet(i, j, k);
            }
        }
    }
    if signature.has_zero {
        let z = pos(0).ok_or_else(|| Error::precondition("family lacks the empty set"))?;
        b.zero(z);
    }
    b.build()
}

/// All subsets of `{1, …, k}` in binary counting order.
pub fn power_family(k: usize) -> Vec<u64> {
    assert!(k < 64, "power set too large");
    (0..1u64 << k).collect()
}

/// The power set of `{1, …, k}` as a set algebra.
pub fn power_set(k: usize, signature: Signature) -> Result<PartialAlgebra> {
    set_algebra(&power_family(k), signature)
}

/// The power set of `{1, …, k}` with some members removed.
pub fn power_set_without(k: usize, removed: &[u64], signature: Signature) -> Result<PartialAlgebra> {
    let family: Vec<u64> = power_family(k)
        .into_iter()
        .filter(|m| !removed.contains(m))
        .collect();
    set_algebra(&family, signature)
}

/// Closes a family of sets under the set operations of the signature:
/// intersection for meet, disjoint union for join, subset difference for
/// minus, and adds the empty set for zero. Sorted by bit mask.
pub fn close_family(family: &[u64], signature: Signature) -> Vec<u64> {
    let mut set: std::collections::BTreeSet<u64> = family.iter().copied().collect();
    if signature.has_zero {
        set.insert(0);
    }
    loop {
        let items: Vec<u64> = set.iter().copied().collect();
        let mut added = false;
        for &x in &items {
            for &y in &items {
                let mut add = |m: u64| added |= set.insert(m);
                if signature.has_meet {
                    add(x & y);
                }
                if signature.has_join && x & y == 0 {
                    add(x | y);
                }
                if signature.has_minus && y & !x == 0 {
                    add(x & !y);
                }
            }
        }
        if !added {
            return set.into_iter().collect();
        }
    }
}
