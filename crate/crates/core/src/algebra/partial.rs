use std::collections::HashMap;
use std::fmt;

use super::signature::{Signature, Symbol};
use super::validate::{check_raw, RawAlgebra, ValidateOptions};
use crate::error::{Error, Result};

/// Index of an element in the carrier.
pub type Elem = usize;

/// The binary operations an algebra may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Join,
    Minus,
    Meet,
    Comp,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Join, BinOp::Minus, BinOp::Meet, BinOp::Comp];

    pub fn symbol(self) -> Symbol {
        match self {
            BinOp::Join => Symbol::Join,
            BinOp::Minus => Symbol::Minus,
            BinOp::Meet => Symbol::Meet,
            BinOp::Comp => Symbol::Comp,
        }
    }

    /// Whether the operation is required to be total.
    pub fn is_total(self) -> bool {
        matches!(self, BinOp::Meet | BinOp::Comp)
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol().as_str())
    }
}

/// A finite partial algebra with element-indexed operation tables.
///
/// Values are immutable once built; construct them with [`AlgebraBuilder`] or by
/// parsing a document.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialAlgebra {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    signature: Signature,
    tables: [Vec<Option<Elem>>; 4],
    zero: Option<Elem>,
}

fn slot(op: BinOp) -> usize {
    match op {
        BinOp::Join => 0,
        BinOp::Minus => 1,
        BinOp::Meet => 2,
        BinOp::Comp => 3,
    }
}

impl PartialAlgebra {
    pub fn builder<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        signature: Signature,
    ) -> AlgebraBuilder {
        AlgebraBuilder::new(names, signature)
    }

    /// Builds from a raw description, validating it first.
    pub(crate) fn from_raw(raw: RawAlgebra, opts: ValidateOptions) -> Result<Self> {
        let report = check_raw(&raw, opts);
        if !report.is_empty() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::from_raw_unchecked(raw))
    }

    fn from_raw_unchecked(raw: RawAlgebra) -> Self {
        let n = raw.names.len();
        let index = raw
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut tables: [Vec<Option<Elem>>; 4] = Default::default();
        for op in BinOp::ALL {
            if raw.signature.contains(op.symbol()) {
                let mut t = vec![None; n * n];
                for &(a, b, c) in raw.table(op).iter().flatten() {
                    t[a * n + b] = Some(c);
                }
                tables[slot(op)] = t;
            }
        }
        PartialAlgebra {
            names: raw.names,
            index,
            signature: raw.signature,
            tables,
            zero: raw.zero,
        }
    }

    pub(crate) fn to_raw(&self) -> RawAlgebra {
        let mut raw = RawAlgebra {
            names: self.names.clone(),
            signature: self.signature,
            join: None,
            minus: None,
            meet: None,
            comp: None,
            zero: self.zero,
        };
        for op in BinOp::ALL {
            if self.signature.contains(op.symbol()) {
                *raw.table_mut(op) = Some(self.triples(op).collect());
            }
        }
        raw
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    /// Looks up an element by id, failing with [`Error::UnknownElement`].
    pub fn element(&self, name: &str) -> Result<Elem> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn has(&self, s: Symbol) -> bool {
        self.signature.contains(s)
    }

    /// The value of `op(a, b)`, or `None` when undefined or not in the signature.
    pub fn op(&self, op: BinOp, a: Elem, b: Elem) -> Option<Elem> {
        let t = &self.tables[slot(op)];
        if t.is_empty() {
            None
        } else {
            t[a * self.len() + b]
        }
    }

    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.op(BinOp::Join, a, b)
    }

    pub fn minus(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.op(BinOp::Minus, a, b)
    }

    /// The meet of `a` and `b`. Panics if meet is not in the signature.
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.op(BinOp::Meet, a, b)
            .expect("meet is total whenever it is in the signature")
    }

    /// The composition of `a` and `b`. Panics if comp is not in the signature.
    pub fn comp(&self, a: Elem, b: Elem) -> Elem {
        self.op(BinOp::Comp, a, b)
            .expect("comp is total whenever it is in the signature")
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    /// All defined entries `(a, b, op(a, b))` in row-major order.
    pub fn triples(&self, op: BinOp) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        let n = self.len();
        self.tables[slot(op)]
            .iter()
            .enumerate()
            .filter_map(move |(i, c)| c.map(|c| (i / n, i % n, c)))
    }

    /// The reduct to a smaller signature. Degenerate results are allowed here;
    /// callers decide whether they make sense.
    pub fn reduct(&self, signature: Signature) -> Result<Self> {
        for s in signature.symbols() {
            if !self.signature.contains(s) {
                return Err(Error::SignatureMismatch(format!(
                    "cannot take a reduct to {signature}: {s} is not in {}",
                    self.signature
                )));
            }
        }
        if signature.has_comp && !signature.has_zero {
            return Err(Error::SignatureMismatch(
                "comp requires zero in the reduct".into(),
            ));
        }
        let mut out = self.clone();
        for op in BinOp::ALL {
            if !signature.contains(op.symbol()) {
                out.tables[slot(op)] = Vec::new();
            }
        }
        if !signature.has_zero {
            out.zero = None;
        }
        out.signature = signature;
        Ok(out)
    }

    /// Adds or replaces one operation table, revalidating the result.
    pub fn expand(
        &self,
        op: BinOp,
        triples: Vec<(Elem, Elem, Elem)>,
        zero: Option<Elem>,
    ) -> Result<Self> {
        let mut raw = self.to_raw();
        raw.signature.set(op.symbol(), true);
        *raw.table_mut(op) = Some(triples);
        if let Some(z) = zero {
            raw.signature.has_zero = true;
            raw.zero = Some(z);
        }
        PartialAlgebra::from_raw(raw, ValidateOptions::permissive())
    }

    /// The partial subalgebra induced on `subset`: entries are kept when their
    /// arguments and result all lie in the subset. Total operations must be
    /// closed on the subset and the zero must belong to it.
    pub fn induced(&self, subset: &[Elem]) -> Result<Self> {
        let mut pos = vec![None; self.len()];
        for (k, &e) in subset.iter().enumerate() {
            if e >= self.len() || pos[e].is_some() {
                return Err(Error::precondition("subset has an invalid or repeated element"));
            }
            pos[e] = Some(k);
        }
        if let Some(z) = self.zero {
            if pos[z].is_none() {
                return Err(Error::precondition("subset must contain the zero"));
            }
        }
        let mut raw = RawAlgebra::empty(
            subset.iter().map(|&e| self.names[e].clone()).collect(),
            self.signature,
        );
        raw.zero = self.zero.and_then(|z| pos[z]);
        for op in BinOp::ALL {
            if !self.signature.contains(op.symbol()) {
                continue;
            }
            let mut entries = Vec::new();
            for &a in subset {
                for &b in subset {
                    let Some(c) = self.op(op, a, b) else { continue };
                    match pos[c] {
                        Some(pc) => entries.push((pos[a].unwrap(), pos[b].unwrap(), pc)),
                        None if op.is_total() => {
                            return Err(Error::precondition(format!(
                                "subset is not closed under {op}: {} {op} {} = {}",
                                self.names[a], self.names[b], self.names[c]
                            )))
                        }
                        None => {}
                    }
                }
            }
            *raw.table_mut(op) = Some(entries);
        }
        PartialAlgebra::from_raw(raw, ValidateOptions::permissive())
    }

    /// Whether `subset` is closed under every defined operation.
    pub fn is_closed(&self, subset: &[Elem]) -> bool {
        let mut inside = vec![false; self.len()];
        for &e in subset {
            inside[e] = true;
        }
        if let Some(z) = self.zero {
            if !inside[z] {
                return false;
            }
        }
        BinOp::ALL.into_iter().all(|op| {
            self.triples(op)
                .all(|(a, b, c)| !(inside[a] && inside[b]) || inside[c])
        })
    }

    /// The same algebra with elements renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::precondition("rename needs one name per element"));
        }
        let mut raw = self.to_raw();
        raw.names = names;
        PartialAlgebra::from_raw(raw, ValidateOptions::permissive())
    }

    /// The image of this algebra under a permutation of element positions:
    /// element `e` moves to position `perm[e]` and keeps its name.
    pub fn permuted(&self, perm: &[Elem]) -> Self {
        let n = self.len();
        let mut names = vec![String::new(); n];
        for e in 0..n {
            names[perm[e]] = self.names[e].clone();
        }
        let mut raw = RawAlgebra::empty(names, self.signature);
        raw.zero = self.zero.map(|z| perm[z]);
        for op in BinOp::ALL {
            if self.signature.contains(op.symbol()) {
                *raw.table_mut(op) = Some(
                    self.triples(op)
                        .map(|(a, b, c)| (perm[a], perm[b], perm[c]))
                        .collect(),
                );
            }
        }
        Self::from_raw_unchecked(raw)
    }
}

impl fmt::Debug for PartialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialAlgebra{} {{ carrier: {:?}", self.signature, self.names)?;
        for op in BinOp::ALL {
            if self.has(op.symbol()) {
                let entries: Vec<String> = self
                    .triples(op)
                    .map(|(a, b, c)| format!("{}.{}={}", self.names[a], self.names[b], self.names[c]))
                    .collect();
                write!(f, ", {op}: [{}]", entries.join(" "))?;
            }
        }
        if let Some(z) = self.zero {
            write!(f, ", zero: {}", self.names[z])?;
        }
        write!(f, " }}")
    }
}

/// Incremental, index-based construction of a [`PartialAlgebra`].
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    raw: RawAlgebra,
    opts: ValidateOptions,
}

impl AlgebraBuilder {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, signature: Signature) -> Self {
        let names = names.into_iter().map(Into::into).collect();
        let mut raw = RawAlgebra::empty(names, signature);
        for op in BinOp::ALL {
            if signature.contains(op.symbol()) {
                *raw.table_mut(op) = Some(Vec::new());
            }
        }
        AlgebraBuilder {
            raw,
            opts: ValidateOptions::default(),
        }
    }

    /// Accepts degenerate signatures.
    pub fn allow_degenerate(mut self) -> Self {
        self.opts.allow_degenerate = true;
        self
    }

    pub fn len(&self) -> usize {
        self.raw.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.names.is_empty()
    }

    pub fn set(&mut self, op: BinOp, a: Elem, b: Elem, c: Elem) -> &mut Self {
        self.raw
            .table_mut(op)
            .get_or_insert_with(Vec::new)
            .push((a, b, c));
        self
    }

    pub fn join(&mut self, a: Elem, b: Elem, c: Elem) -> &mut Self {
        self.set(BinOp::Join, a, b, c)
    }

    pub fn minus(&mut self, a: Elem, b: Elem, c: Elem) -> &mut Self {
        self.set(BinOp::Minus, a, b, c)
    }

    pub fn meet(&mut self, a: Elem, b: Elem, c: Elem) -> &mut Self {
        self.set(BinOp::Meet, a, b, c)
    }

    pub fn comp(&mut self, a: Elem, b: Elem, c: Elem) -> &mut Self {
        self.set(BinOp::Comp, a, b, c)
    }

    pub fn zero(&mut self, z: Elem) -> &mut Self {
        self.raw.zero = Some(z);
        self
    }

    pub fn build(&self) -> Result<PartialAlgebra> {
        PartialAlgebra::from_raw(self.raw.clone(), self.opts)
    }
}
