use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::point::check_point_type;
use crate::algebra::{json_list, json_str, parse_error, BinOp, Elem, PartialAlgebra, Symbol};
use crate::error::{Error, Result};

/// A point witnessing that `op(a, b)` is undefined: for join both `a` and `b`
/// lie in the point; for minus `b` does and `a` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UndefinednessWitness {
    pub op: BinOp,
    pub a: Elem,
    pub b: Elem,
    pub point: usize,
}

/// A family of point types together with the witnesses that make them
/// sufficient for a representation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepCertificate {
    pub point_types: Vec<FixedBitSet>,
    /// `(a, b, point)` with `a < b`: the point contains exactly one of them.
    pub separators: Vec<(Elem, Elem, usize)>,
    pub undefinedness_witnesses: Vec<UndefinednessWitness>,
}

/// The pairs a certificate has to cover, in the order the search visits them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Requirement {
    /// Some point contains both `a` and `b` (`a <= b`), since `a ⊔ b` or `b ⊔ a` is undefined.
    JoinUndefined(Elem, Elem),
    /// Some point contains `b` but not `a`, since `a ⊖ b` is undefined.
    MinusUndefined(Elem, Elem),
    /// Some point contains exactly one of `a < b`.
    Separate(Elem, Elem),
}

impl Requirement {
    pub fn satisfied_by(&self, u: &FixedBitSet) -> bool {
        match *self {
            Requirement::JoinUndefined(a, b) => u.contains(a) && u.contains(b),
            Requirement::MinusUndefined(a, b) => u.contains(b) && !u.contains(a),
            Requirement::Separate(a, b) => u.contains(a) != u.contains(b),
        }
    }

    pub fn describe(&self, alg: &PartialAlgebra) -> String {
        let n = |e| alg.name(e);
        match *self {
            Requirement::JoinUndefined(a, b) => {
                format!("no point type contains both {} and {} ({} ⊔ {} is undefined)", n(a), n(b), n(a), n(b))
            }
            Requirement::MinusUndefined(a, b) => {
                format!("no point type contains {} but not {} ({} ⊖ {} is undefined)", n(b), n(a), n(a), n(b))
            }
            Requirement::Separate(a, b) => format!("no point type separates {} and {}", n(a), n(b)),
        }
    }
}

/// Every witness requirement of the algebra's signature, grouped by pair in
/// carrier order.
pub fn requirements(alg: &PartialAlgebra) -> Vec<Requirement> {
    let sig = alg.signature();
    let mut out = Vec::new();
    for a in alg.elements() {
        for b in a..alg.len() {
            if sig.has_join && (alg.join(a, b).is_none() || alg.join(b, a).is_none()) {
                out.push(Requirement::JoinUndefined(a, b));
            }
            if sig.has_minus {
                if alg.minus(a, b).is_none() {
                    out.push(Requirement::MinusUndefined(a, b));
                }
                if a != b && alg.minus(b, a).is_none() {
                    out.push(Requirement::MinusUndefined(b, a));
                }
            }
            if a != b {
                out.push(Requirement::Separate(a, b));
            }
        }
    }
    out
}

impl RepCertificate {
    /// Records that `point` meets `req`.
    pub(crate) fn record(&mut self, req: Requirement, point: usize) {
        match req {
            Requirement::JoinUndefined(a, b) => self.undefinedness_witnesses.push(UndefinednessWitness {
                op: BinOp::Join,
                a,
                b,
                point,
            }),
            Requirement::MinusUndefined(a, b) => self.undefinedness_witnesses.push(UndefinednessWitness {
                op: BinOp::Minus,
                a,
                b,
                point,
            }),
            Requirement::Separate(a, b) => self.separators.push((a, b, point)),
        }
    }
}

/// Largest base a certificate may use: `2|A|²`.
pub fn base_bound(alg: &PartialAlgebra) -> usize {
    2 * alg.len() * alg.len()
}

/// Checks that every point type is valid and every required pair has a
/// correct witness.
pub fn verify_certificate(alg: &PartialAlgebra, cert: &RepCertificate) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidCertificate(m));
    for (i, u) in cert.point_types.iter().enumerate() {
        if u.len() != alg.len() {
            return bad(format!("point type {i} is not sized to the carrier"));
        }
        if let Err(v) = check_point_type(alg, u) {
            return bad(format!("point type {i} is not valid: {v}"));
        }
    }
    if cert.point_types.len() > base_bound(alg) {
        return bad(format!(
            "{} point types exceed the bound {}",
            cert.point_types.len(),
            base_bound(alg)
        ));
    }
    // Index witnesses once so verification stays quadratic in the carrier.
    let mut index: HashMap<Requirement, usize> = HashMap::new();
    for &(a, b, p) in &cert.separators {
        index.entry(Requirement::Separate(a.min(b), a.max(b))).or_insert(p);
    }
    for w in &cert.undefinedness_witnesses {
        let req = match w.op {
            BinOp::Join => Requirement::JoinUndefined(w.a.min(w.b), w.a.max(w.b)),
            BinOp::Minus => Requirement::MinusUndefined(w.a, w.b),
            op => return bad(format!("{op} has no undefinedness witnesses")),
        };
        index.entry(req).or_insert(w.point);
    }
    for req in requirements(alg) {
        let Some(&p) = index.get(&req) else {
            return bad(format!("missing witness: {}", req.describe(alg)));
        };
        let Some(u) = cert.point_types.get(p) else {
            return bad(format!("witness refers to point type {p}, which does not exist"));
        };
        if !req.satisfied_by(u) {
            return bad(format!("point type {p} does not witness: {}", req.describe(alg)));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct CertificateDoc {
    pub point_types: Vec<Vec<String>>,
    pub separators: Vec<(String, String, usize)>,
    pub undefinedness_witnesses: Vec<(Symbol, String, String, usize)>,
}

/// Writes a certificate with element ids in place of indices.
pub fn serialize_certificate(alg: &PartialAlgebra, cert: &RepCertificate) -> String {
    let n = |e: Elem| alg.name(e);
    let points: Vec<String> = cert
        .point_types
        .iter()
        .map(|u| format!("    {}", json_list(u.ones().map(n))))
        .collect();
    let seps: Vec<String> = cert
        .separators
        .iter()
        .map(|&(a, b, p)| format!("    [{}, {}, {p}]", json_str(n(a)), json_str(n(b))))
        .collect();
    let wits: Vec<String> = cert
        .undefinedness_witnesses
        .iter()
        .map(|w| {
            format!(
                "    [{}, {}, {}, {}]",
                json_str(w.op.symbol().as_str()),
                json_str(n(w.a)),
                json_str(n(w.b)),
                w.point
            )
        })
        .collect();
    let block = |rows: Vec<String>| {
        if rows.is_empty() {
            "[]".to_string()
        } else {
            format!("[\n{}\n  ]", rows.join(",\n"))
        }
    };
    format!(
        "{{\n  \"point_types\": {},\n  \"separators\": {},\n  \"undefinedness_witnesses\": {}\n}}\n",
        block(points),
        block(seps),
        block(wits)
    )
}

/// Reads a certificate for `alg`. The result still needs [`verify_certificate`].
pub fn parse_certificate(alg: &PartialAlgebra, text: &str) -> Result<RepCertificate> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(parse_error)?;
    let mut cert = RepCertificate::default();
    for members in &doc.point_types {
        let mut u = FixedBitSet::with_capacity(alg.len());
        for m in members {
            u.insert(alg.element(m)?);
        }
        cert.point_types.push(u);
    }
    for (a, b, p) in &doc.separators {
        cert.separators.push((alg.element(a)?, alg.element(b)?, *p));
    }
    for (sym, a, b, p) in &doc.undefinedness_witnesses {
        let op = match sym {
            Symbol::Join => BinOp::Join,
            Symbol::Minus => BinOp::Minus,
            other => return Err(Error::InvalidCertificate(format!("{other} has no undefinedness witnesses"))),
        };
        cert.undefinedness_witnesses.push(UndefinednessWitness {
            op,
            a: alg.element(a)?,
            b: alg.element(b)?,
            point: *p,
        });
    }
    Ok(cert)
}
