use super::certificate::RepCertificate;
use super::search::{decide_representable_with, Refutation, SearchConfig, SearchOutcome};
use crate::algebra::{PartialAlgebra, Symbol};
use crate::error::{Error, Result};

/// The zero-free reduct of an algebra and whether the zero law holds.
#[derive(Debug, Clone)]
pub struct ZeroReduction {
    pub reduct: PartialAlgebra,
    pub zero_law: bool,
    /// Human-readable statement of the law that was checked.
    pub law: String,
}

/// Drops the zero (and the composition, which depends on it). The zero law
/// is `0 ⊔ 0 = 0` when join is present and `0 ⊖ 0 = 0` when minus is; with
/// meet alone it is `a · 0 = 0` for every `a`.
pub fn strip_zero(alg: &PartialAlgebra) -> Result<ZeroReduction> {
    let z = alg
        .zero()
        .ok_or_else(|| Error::precondition("the algebra has no zero"))?;
    let sig = alg.signature().without(Symbol::Zero).without(Symbol::Comp);
    if sig.is_degenerate() {
        return Err(Error::DegenerateSignature(sig.to_string()));
    }
    let reduct = alg.reduct(sig)?;
    let zn = alg.name(z);
    let mut laws = Vec::new();
    let mut holds = true;
    if sig.has_join {
        laws.push(format!("{zn} ⊔ {zn} = {zn}"));
        holds &= alg.join(z, z) == Some(z);
    }
    if sig.has_minus {
        laws.push(format!("{zn} ⊖ {zn} = {zn}"));
        holds &= alg.minus(z, z) == Some(z);
    }
    if !sig.has_join && !sig.has_minus {
        laws.push(format!("a · {zn} = {zn} for all a"));
        holds &= alg.elements().all(|a| alg.meet(a, z) == z);
    }
    Ok(ZeroReduction {
        reduct,
        zero_law: holds,
        law: laws.join(" and "),
    })
}

/// Decides representability of an algebra with zero through its zero-free
/// reduct. A reduct certificate becomes one for the algebra by dropping the
/// points that contain the zero.
pub fn decide_via_zero_reduction(alg: &PartialAlgebra, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let red = strip_zero(alg)?;
    if !red.zero_law {
        return Ok(SearchOutcome::Refuted(Refutation {
            requirement: None,
            reason: format!("zero law fails: {}", red.law),
        }));
    }
    let z = alg.zero().expect("checked by strip_zero");
    Ok(match decide_representable_with(&red.reduct, cfg) {
        SearchOutcome::Certified(cert) => SearchOutcome::Certified(drop_points_with(&cert, z)),
        other => other,
    })
}

fn drop_points_with(cert: &RepCertificate, z: usize) -> RepCertificate {
    let mut remap = vec![None; cert.point_types.len()];
    let mut out = RepCertificate::default();
    for (i, u) in cert.point_types.iter().enumerate() {
        if !u.contains(z) {
            remap[i] = Some(out.point_types.len());
            out.point_types.push(u.clone());
        }
    }
    for &(a, b, p) in &cert.separators {
        if let Some(q) = remap[p] {
            out.separators.push((a, b, q));
        }
    }
    for w in &cert.undefinedness_witnesses {
        if let Some(q) = remap[w.point] {
            let mut w = *w;
            w.point = q;
            out.undefinedness_witnesses.push(w);
        }
    }
    out
}
