use std::collections::BTreeSet;

use super::representation::{verify_representation, RepReport, SetRepresentation};
use crate::algebra::{json_list, json_str, PartialAlgebra};
use crate::error::{Error, Result};

/// A map from elements to finite partial functions on a base, each stored as
/// a sorted set of `(x, y)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfRepresentation {
    pub base: Vec<String>,
    pub images: Vec<BTreeSet<(usize, usize)>>,
}

/// Turns a set representation into one by partial functions. Without
/// composition every set becomes the identity on it. With the constant-zero
/// composition the base is doubled with a primed copy and each set becomes
/// the bijection onto its copy, so every composite is empty.
pub fn to_pf_representation(alg: &PartialAlgebra, rep: &SetRepresentation) -> Result<PfRepresentation> {
    let report = verify_representation(alg, rep);
    if !report.is_ok() {
        return Err(Error::InvalidRepresentation(report.to_string()));
    }
    let k = rep.base.len();
    if alg.signature().has_comp {
        let z = alg.zero().ok_or_else(|| Error::precondition("comp requires zero"))?;
        for a in alg.elements() {
            for b in alg.elements() {
                if alg.comp(a, b) != z {
                    return Err(Error::precondition(format!(
                        "comp is not constant zero at ({},{})",
                        alg.name(a),
                        alg.name(b)
                    )));
                }
            }
        }
        let mut base = rep.base.clone();
        base.extend(rep.base.iter().map(|p| format!("{p}'")));
        let images = rep
            .images
            .iter()
            .map(|s| s.ones().map(|x| (x, k + x)).collect())
            .collect();
        Ok(PfRepresentation { base, images })
    } else {
        let images = rep
            .images
            .iter()
            .map(|s| s.ones().map(|x| (x, x)).collect())
            .collect();
        Ok(PfRepresentation {
            base: rep.base.clone(),
            images,
        })
    }
}

fn domain(f: &BTreeSet<(usize, usize)>) -> BTreeSet<usize> {
    f.iter().map(|p| p.0).collect()
}

fn compose(f: &BTreeSet<(usize, usize)>, g: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    f.iter()
        .flat_map(|&(x, y)| g.iter().filter(move |p| p.0 == y).map(move |&(_, z)| (x, z)))
        .collect()
}

/// Checks a partial-function representation: images are functional and
/// distinct, join is union of domain-disjoint functions, minus is difference
/// of included functions, meet is intersection, composition is relational
/// composition and zero is the empty function.
pub fn verify_pf_representation(alg: &PartialAlgebra, rep: &PfRepresentation) -> RepReport {
    let mut report = RepReport::default();
    let mut fail = |m: String| report.failures.push(m);
    if rep.images.len() != alg.len() {
        fail(format!("assignment has {} images for {} elements", rep.images.len(), alg.len()));
        return report;
    }
    let name = |e| alg.name(e);
    for (e, f) in rep.images.iter().enumerate() {
        if domain(f).len() != f.len() {
            fail(format!("image of {} is not functional", name(e)));
        }
        if f.iter().any(|&(x, y)| x >= rep.base.len() || y >= rep.base.len()) {
            fail(format!("image of {} leaves the base", name(e)));
        }
    }
    for a in alg.elements() {
        for b in a + 1..alg.len() {
            if rep.images[a] == rep.images[b] {
                fail(format!("not faithful: {} and {} have the same image", name(a), name(b)));
            }
        }
    }
    let sig = alg.signature();
    for a in alg.elements() {
        for b in alg.elements() {
            let (f, g) = (&rep.images[a], &rep.images[b]);
            if sig.has_join {
                let disjoint = domain(f).is_disjoint(&domain(g));
                match alg.join(a, b) {
                    Some(c) if disjoint => {
                        let u: BTreeSet<_> = f.union(g).copied().collect();
                        if u != rep.images[c] {
                            fail(format!("{} ⊔ {} = {} is not the union of images", name(a), name(b), name(c)));
                        }
                    }
                    Some(_) => fail(format!("{} ⊔ {} is defined but the domains meet", name(a), name(b))),
                    None if disjoint => fail(format!("{} ⊔ {} is undefined but the domains are disjoint", name(a), name(b))),
                    None => {}
                }
            }
            if sig.has_minus {
                let inside = g.is_subset(f);
                match alg.minus(a, b) {
                    Some(c) if inside => {
                        let d: BTreeSet<_> = f.difference(g).copied().collect();
                        if d != rep.images[c] {
                            fail(format!("{} ⊖ {} = {} is not the difference of images", name(a), name(b), name(c)));
                        }
                    }
                    Some(_) => fail(format!("{} ⊖ {} is defined but the image of {} is not inside", name(a), name(b), name(b))),
                    None if inside => fail(format!("{} ⊖ {} is undefined but the image of {} is inside", name(a), name(b), name(b))),
                    None => {}
                }
            }
            if sig.has_meet {
                let c = alg.meet(a, b);
                let i: BTreeSet<_> = f.intersection(g).copied().collect();
                if i != rep.images[c] {
                    fail(format!("{} · {} = {} is not the intersection of images", name(a), name(b), name(c)));
                }
            }
            if sig.has_comp {
                let c = alg.comp(a, b);
                if compose(f, g) != rep.images[c] {
                    fail(format!("{} ; {} = {} is not the composite of images", name(a), name(b), name(c)));
                }
            }
        }
    }
    if let Some(z) = alg.zero() {
        if !rep.images[z].is_empty() {
            fail(format!("zero {} is not mapped to the empty function", name(z)));
        }
    }
    report
}

/// Writes a partial-function representation; each image is a list of pairs.
pub fn serialize_pf_representation(alg: &PartialAlgebra, rep: &PfRepresentation) -> String {
    let rows: Vec<String> = alg
        .elements()
        .map(|e| {
            let pairs: Vec<String> = rep.images[e]
                .iter()
                .map(|&(x, y)| json_list([rep.base[x].as_str(), rep.base[y].as_str()]))
                .collect();
            format!("    {}: [{}]", json_str(alg.name(e)), pairs.join(", "))
        })
        .collect();
    let assignment = if rows.is_empty() {
        "{}".to_string()
    } else {
        format!("{{\n{}\n  }}", rows.join(",\n"))
    };
    format!(
        "{{\n  \"base\": {},\n  \"assignment\": {}\n}}\n",
        json_list(rep.base.iter().map(String::as_str)),
        assignment
    )
}
