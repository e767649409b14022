use std::fmt;

use super::partial::{BinOp, Elem, PartialAlgebra};
use super::validate::{RawAlgebra, ValidateOptions};
use crate::error::{Error, Result};

/// A partition of the carrier into nonempty disjoint blocks. The first member
/// of each block is its representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    blocks: Vec<Vec<Elem>>,
    block_of: Vec<usize>,
}

impl Congruence {
    /// Checks that `blocks` partitions `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<Elem>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::precondition(format!("block {i} is empty")));
            }
            for &e in block {
                if e >= n {
                    return Err(Error::precondition(format!("block {i} has element {e} outside the carrier")));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::precondition(format!("element {e} lies in two blocks")));
                }
                block_of[e] = i;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::precondition(format!("element {e} is in no block")));
        }
        Ok(Congruence { blocks, block_of })
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            blocks: (0..n).map(|e| vec![e]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// Builds a partition from blocks of element ids.
    pub fn from_names<S: AsRef<str>>(alg: &PartialAlgebra, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|s| alg.element(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Congruence::new(alg.len(), blocks)
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn block_of(&self, e: Elem) -> usize {
        self.block_of[e]
    }

    pub fn representative(&self, block: usize) -> Elem {
        self.blocks[block][0]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.block_of[a] == self.block_of[b]
    }
}

/// A pair of related argument tuples on which an operation misbehaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub op: BinOp,
    pub left: (Elem, Elem),
    pub right: (Elem, Elem),
    pub message: String,
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Lists every argument pair whose behaviour differs from that of the block
/// representatives. Comparing each tuple against the representatives is enough:
/// two related tuples that both agree with the same representative tuple agree
/// with each other.
pub fn check_congruence(alg: &PartialAlgebra, cong: &Congruence) -> Vec<CongruenceViolation> {
    let mut out = Vec::new();
    if cong.block_of.len() != alg.len() {
        return vec![CongruenceViolation {
            op: BinOp::Join,
            left: (0, 0),
            right: (0, 0),
            message: "partition does not match the carrier".into(),
        }];
    }
    let rep = |e: Elem| cong.representative(cong.block_of(e));
    for op in BinOp::ALL {
        if !alg.has(op.symbol()) {
            continue;
        }
        for a in alg.elements() {
            for b in alg.elements() {
                let (ra, rb) = (rep(a), rep(b));
                if (ra, rb) == (a, b) {
                    continue;
                }
                let here = alg.op(op, a, b);
                let there = alg.op(op, ra, rb);
                let name = |e: Elem| alg.name(e);
                let message = match (here, there) {
                    (Some(c), Some(d)) if !cong.related(c, d) => format!(
                        "{op} results not related: ({},{}) -> {} but ({},{}) -> {}",
                        name(a), name(b), name(c), name(ra), name(rb), name(d)
                    ),
                    (Some(_), None) => format!(
                        "{op} definedness differs: defined at ({},{}), undefined at ({},{})",
                        name(a), name(b), name(ra), name(rb)
                    ),
                    (None, Some(_)) => format!(
                        "{op} definedness differs: undefined at ({},{}), defined at ({},{})",
                        name(a), name(b), name(ra), name(rb)
                    ),
                    _ => continue,
                };
                out.push(CongruenceViolation {
                    op,
                    left: (a, b),
                    right: (ra, rb),
                    message,
                });
            }
        }
    }
    out
}

/// The quotient algebra on blocks. Each block is named after its representative.
pub fn quotient(alg: &PartialAlgebra, cong: &Congruence) -> Result<PartialAlgebra> {
    if let Some(v) = check_congruence(alg, cong).into_iter().next() {
        return Err(Error::NotCongruence(v.message));
    }
    let names = (0..cong.len())
        .map(|i| alg.name(cong.representative(i)).to_string())
        .collect();
    let mut raw = RawAlgebra::empty(names, alg.signature());
    raw.zero = alg.zero().map(|z| cong.block_of(z));
    for op in BinOp::ALL {
        if !alg.has(op.symbol()) {
            continue;
        }
        let mut entries = Vec::new();
        for i in 0..cong.len() {
            for j in 0..cong.len() {
                let (a, b) = (cong.representative(i), cong.representative(j));
                if let Some(c) = alg.op(op, a, b) {
                    entries.push((i, j, cong.block_of(c)));
                }
            }
        }
        *raw.table_mut(op) = Some(entries);
    }
    PartialAlgebra::from_raw(raw, ValidateOptions::permissive())
}
