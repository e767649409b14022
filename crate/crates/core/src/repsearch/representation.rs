use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::certificate::{verify_certificate, RepCertificate};
use crate::algebra::{json_list, json_str, parse_error, PartialAlgebra};
use crate::error::{Error, Result};

/// A map from elements to subsets of a finite base. `images[e]` is indexed
/// by position in `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetRepresentation {
    pub base: Vec<String>,
    pub images: Vec<FixedBitSet>,
}

impl SetRepresentation {
    pub fn new(base: Vec<String>, images: Vec<FixedBitSet>) -> Self {
        SetRepresentation { base, images }
    }

    /// The empty map on the empty algebra.
    pub fn empty() -> Self {
        SetRepresentation {
            base: Vec::new(),
            images: Vec::new(),
        }
    }

    /// Builds images from lists of base indices.
    pub fn from_lists(base: Vec<String>, lists: &[Vec<usize>]) -> Self {
        let images = lists
            .iter()
            .map(|l| {
                let mut s = FixedBitSet::with_capacity(base.len());
                for &p in l {
                    s.insert(p);
                }
                s
            })
            .collect();
        SetRepresentation { base, images }
    }

    pub fn base_size(&self) -> usize {
        self.base.len()
    }

    pub fn image(&self, e: usize) -> &FixedBitSet {
        &self.images[e]
    }
}

/// `a ↦ {U : a ∈ U}` over the point types of a verified certificate.
pub fn build_representation(alg: &PartialAlgebra, cert: &RepCertificate) -> Result<SetRepresentation> {
    verify_certificate(alg, cert)?;
    let k = cert.point_types.len();
    let base = (0..k).map(|i| format!("p{i}")).collect();
    let images = alg
        .elements()
        .map(|e| {
            let mut s = FixedBitSet::with_capacity(k);
            for (i, u) in cert.point_types.iter().enumerate() {
                s.set(i, u.contains(e));
            }
            s
        })
        .collect();
    Ok(SetRepresentation { base, images })
}

/// Failures found while checking a representation, first failure first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepReport {
    pub failures: Vec<String>,
}

impl RepReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("representation verified");
        }
        for (i, m) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn show(rep: &SetRepresentation, s: &FixedBitSet) -> String {
    let names: Vec<&str> = s.ones().map(|i| rep.base[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

/// Checks faithfulness and, for every operation tuple, that definedness and
/// values agree with the concrete set operations. Composition is not checked
/// here; see the partial-function representations.
pub fn verify_representation(alg: &PartialAlgebra, rep: &SetRepresentation) -> RepReport {
    let mut report = RepReport::default();
    let fail = |report: &mut RepReport, m: String| report.failures.push(m);
    if rep.images.len() != alg.len() {
        fail(
            &mut report,
            format!("assignment has {} images for {} elements", rep.images.len(), alg.len()),
        );
        return report;
    }
    let k = rep.base.len();
    let mut images = rep.images.clone();
    for (e, s) in images.iter_mut().enumerate() {
        if s.ones().any(|p| p >= k) {
            fail(&mut report, format!("image of {} leaves the base", alg.name(e)));
            return report;
        }
        s.grow(k);
    }
    let name = |e| alg.name(e);
    for a in alg.elements() {
        for b in a + 1..alg.len() {
            if images[a] == images[b] {
                fail(
                    &mut report,
                    format!("not faithful: {} and {} have the same image", name(a), name(b)),
                );
            }
        }
    }
    let sig = alg.signature();
    for a in alg.elements() {
        for b in alg.elements() {
            let (x, y) = (&images[a], &images[b]);
            if sig.has_join {
                let disjoint = x.is_disjoint(y);
                match alg.join(a, b) {
                    Some(_) if !disjoint => fail(
                        &mut report,
                        format!("{} ⊔ {} is defined but the images meet", name(a), name(b)),
                    ),
                    Some(c) => {
                        let mut u = x.clone();
                        u.union_with(y);
                        if u != images[c] {
                            fail(
                                &mut report,
                                format!(
                                    "{} ⊔ {} = {} but the union of images is {} not {}",
                                    name(a), name(b), name(c), show(rep, &u), show(rep, &images[c])
                                ),
                            );
                        }
                    }
                    None if disjoint => fail(
                        &mut report,
                        format!("{} ⊔ {} is undefined but the images are disjoint", name(a), name(b)),
                    ),
                    None => {}
                }
            }
            if sig.has_minus {
                let inside = y.is_subset(x);
                match alg.minus(a, b) {
                    Some(_) if !inside => fail(
                        &mut report,
                        format!("{} ⊖ {} is defined but the image of {} is not inside", name(a), name(b), name(b)),
                    ),
                    Some(c) => {
                        let mut d = x.clone();
                        d.difference_with(y);
                        if d != images[c] {
                            fail(
                                &mut report,
                                format!(
                                    "{} ⊖ {} = {} but the difference of images is {} not {}",
                                    name(a), name(b), name(c), show(rep, &d), show(rep, &images[c])
                                ),
                            );
                        }
                    }
                    None if inside => fail(
                        &mut report,
                        format!("{} ⊖ {} is undefined but the image of {} is inside", name(a), name(b), name(b)),
                    ),
                    None => {}
                }
            }
            if sig.has_meet {
                let c = alg.meet(a, b);
                let mut i = x.clone();
                i.intersect_with(y);
                if i != images[c] {
                    fail(
                        &mut report,
                        format!(
                            "{} · {} = {} but the intersection of images is {} not {}",
                            name(a), name(b), name(c), show(rep, &i), show(rep, &images[c])
                        ),
                    );
                }
            }
        }
    }
    if let Some(z) = alg.zero() {
        if !images[z].is_clear() {
            fail(&mut report, format!("zero {} is not mapped to the empty set", name(z)));
        }
    }
    report
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RepresentationDoc {
    pub base: Vec<String>,
    pub assignment: BTreeMap<String, Vec<String>>,
}

/// Writes a representation, listing elements in carrier order.
pub fn serialize_representation(alg: &PartialAlgebra, rep: &SetRepresentation) -> String {
    let rows: Vec<String> = alg
        .elements()
        .map(|e| {
            let pts = rep.images[e].ones().map(|p| rep.base[p].as_str());
            format!("    {}: {}", json_str(alg.name(e)), json_list(pts))
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

/// Reads a representation of `alg`. The assignment must cover the carrier
/// exactly and mention only base points.
pub fn parse_representation(alg: &PartialAlgebra, text: &str) -> Result<SetRepresentation> {
    let doc: RepresentationDoc = serde_json::from_str(text).map_err(parse_error)?;
    let mut pos = std::collections::HashMap::new();
    for (i, p) in doc.base.iter().enumerate() {
        if pos.insert(p.as_str(), i).is_some() {
            return Err(Error::InvalidRepresentation(format!("duplicate base point `{p}`")));
        }
    }
    for key in doc.assignment.keys() {
        alg.element(key)?;
    }
    let mut images = Vec::with_capacity(alg.len());
    for e in alg.elements() {
        let pts = doc.assignment.get(alg.name(e)).ok_or_else(|| {
            Error::InvalidRepresentation(format!("no image for element `{}`", alg.name(e)))
        })?;
        let mut s = FixedBitSet::with_capacity(doc.base.len());
        for p in pts {
            let &i = pos.get(p.as_str()).ok_or_else(|| {
                Error::InvalidRepresentation(format!("unknown base point `{p}`"))
            })?;
            s.insert(i);
        }
        images.push(s);
    }
    Ok(SetRepresentation {
        base: doc.base,
        images,
    })
}
