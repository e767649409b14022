use crate::algebra::{BinOp, PartialAlgebra};
use crate::error::{Error, Result};

use super::axial::gen_a;

/// Adds minus by `a ⊖ b = c ⟺ b ⊔ c = a`, insisting on a unique `c`.
pub fn expand_minus_via_abc(alg: &PartialAlgebra) -> Result<PartialAlgebra> {
    if !alg.signature().has_join {
        return Err(Error::precondition("defining minus from join needs join"));
    }
    let n = alg.len();
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for (b, c, a) in alg.triples(BinOp::Join) {
        match table[a * n + b] {
            Some(c0) if c0 != c => {
                return Err(Error::NonUniqueMinus {
                    a: alg.name(a).into(),
                    b: alg.name(b).into(),
                    c: alg.name(c0).into(),
                    c2: alg.name(c).into(),
                })
            }
            _ => table[a * n + b] = Some(c),
        }
    }
    let triples = table
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (i / n, i % n, c)))
        .collect();
    alg.expand(BinOp::Minus, triples, None)
}

/// Adds join by `b ⊔ c = a ⟺ a ⊖ b = c`, insisting on a unique `a`.
pub fn expand_join_via_abc(alg: &PartialAlgebra) -> Result<PartialAlgebra> {
    if !alg.signature().has_minus {
        return Err(Error::precondition("defining join from minus needs minus"));
    }
    let n = alg.len();
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for (a, b, c) in alg.triples(BinOp::Minus) {
        match table[b * n + c] {
            Some(a0) if a0 != a => {
                return Err(Error::precondition(format!(
                    "join is not single-valued under (abc): {} ⊔ {} could be {} or {}",
                    alg.name(b),
                    alg.name(c),
                    alg.name(a0),
                    alg.name(a)
                )))
            }
            _ => table[b * n + c] = Some(a),
        }
    }
    let triples = table
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.map(|a| (i / n, i % n, a)))
        .collect();
    alg.expand(BinOp::Join, triples, None)
}

/// Adds the constant-zero composition `a ; b = 0`. The zero must exist.
pub fn expand_comp_zero(alg: &PartialAlgebra) -> Result<PartialAlgebra> {
    let z = alg
        .zero()
        .ok_or_else(|| Error::precondition("the constant-zero composition needs a zero"))?;
    let triples = alg
        .elements()
        .flat_map(|a| alg.elements().map(move |b| (a, b, z)))
        .collect();
    alg.expand(BinOp::Comp, triples, None)
}

/// `A(m, n)` with minus defined by `(abc)`.
pub fn gen_aminus(m: usize, n: usize) -> Result<PartialAlgebra> {
    expand_minus_via_abc(&gen_a(m, n)?)
}

/// `A(m, n)` with the constant-zero composition.
pub fn gen_b(m: usize, n: usize) -> Result<PartialAlgebra> {
    expand_comp_zero(&gen_a(m, n)?)
}
