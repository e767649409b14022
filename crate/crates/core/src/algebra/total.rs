use super::partial::{BinOp, Elem, PartialAlgebra};
use super::signature::Signature;
use super::validate::{RawAlgebra, ValidateOptions};
use crate::error::{Error, Result};

/// A partial algebra completed with an absorbing element `∞`, which sits at
/// index `len()` after the named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalAlgebra {
    names: Vec<String>,
    signature: Signature,
    tables: [Vec<Option<Elem>>; 4],
    zero: Option<Elem>,
}

fn slot(op: BinOp) -> usize {
    BinOp::ALL.iter().position(|&o| o == op).unwrap()
}

impl TotalAlgebra {
    /// Assembles a total algebra from raw tables of size `(n+1)²`, indexed by
    /// `a * (n+1) + b`. No invariant is checked here; see [`detotalise`].
    pub fn from_tables(
        names: Vec<String>,
        signature: Signature,
        tables: Vec<(BinOp, Vec<Option<Elem>>)>,
        zero: Option<Elem>,
    ) -> Self {
        let mut t: [Vec<Option<Elem>>; 4] = Default::default();
        for (op, table) in tables {
            t[slot(op)] = table;
        }
        TotalAlgebra {
            names,
            signature,
            tables: t,
            zero,
        }
    }

    /// Number of named elements, excluding `∞`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Size including `∞`.
    pub fn size(&self) -> usize {
        self.names.len() + 1
    }

    pub fn infinity(&self) -> Elem {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn entry(&self, op: BinOp, a: Elem, b: Elem) -> Option<Elem> {
        self.tables[slot(op)].get(a * self.size() + b).copied().flatten()
    }

    /// The total value of `op(a, b)`. Panics if the table has a hole.
    pub fn apply(&self, op: BinOp, a: Elem, b: Elem) -> Elem {
        self.entry(op, a, b)
            .unwrap_or_else(|| panic!("total table for {op} has no entry at ({a},{b})"))
    }

    pub fn table(&self, op: BinOp) -> &[Option<Elem>] {
        &self.tables[slot(op)]
    }
}

/// Adds `∞` and sends every undefined entry and every entry touching `∞` to it.
pub fn totalise(alg: &PartialAlgebra) -> TotalAlgebra {
    let n = alg.len();
    let size = n + 1;
    let mut tables = Vec::new();
    for op in BinOp::ALL {
        if !alg.has(op.symbol()) {
            continue;
        }
        let mut t = vec![Some(n); size * size];
        for (a, b, c) in alg.triples(op) {
            t[a * size + b] = Some(c);
        }
        tables.push((op, t));
    }
    TotalAlgebra::from_tables(alg.names().to_vec(), alg.signature(), tables, alg.zero())
}

/// Removes `∞`, turning entries equal to `∞` into undefined ones.
pub fn detotalise(t: &TotalAlgebra) -> Result<PartialAlgebra> {
    let n = t.len();
    let inf = t.infinity();
    let size = t.size();
    let mut raw = RawAlgebra::empty(t.names().to_vec(), t.signature());
    if let Some(z) = t.zero() {
        if z >= n {
            return Err(Error::Detotalise("zero must be a named element".into()));
        }
        raw.zero = Some(z);
    }
    for op in BinOp::ALL {
        if !t.signature().contains(op.symbol()) {
            continue;
        }
        if t.table(op).len() != size * size {
            return Err(Error::Detotalise(format!("{op} table has the wrong size")));
        }
        let mut entries = Vec::new();
        for a in 0..size {
            for b in 0..size {
                let Some(c) = t.entry(op, a, b) else {
                    return Err(Error::Detotalise(format!("{op} has no entry at ({a},{b})")));
                };
                if c > inf {
                    return Err(Error::Detotalise(format!("{op} entry at ({a},{b}) is out of range")));
                }
                if a == inf || b == inf {
                    if c != inf {
                        return Err(Error::Detotalise(format!(
                            "{op} entry at ({a},{b}) involves ∞ but is not ∞"
                        )));
                    }
                } else if c != inf {
                    entries.push((a, b, c));
                } else if op.is_total() {
                    return Err(Error::Detotalise(format!(
                        "{op} is total but is ∞ at ({},{})",
                        t.names()[a],
                        t.names()[b]
                    )));
                }
            }
        }
        *raw.table_mut(op) = Some(entries);
    }
    PartialAlgebra::from_raw(raw, ValidateOptions::permissive())
        .map_err(|e| Error::Detotalise(e.to_string()))
}
