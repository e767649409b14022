use std::collections::HashMap;
use std::fmt;

use super::doc::AlgebraDoc;
use super::partial::{BinOp, Elem};
use super::signature::Signature;

/// Knobs for validation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Accept signatures without join, minus or meet.
    pub allow_degenerate: bool,
}

impl ValidateOptions {
    pub fn permissive() -> Self {
        ValidateOptions {
            allow_degenerate: true,
        }
    }
}

/// The invariant a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    DuplicateId,
    DegenerateSignature,
    CompWithoutZero,
    TableWithoutSymbol,
    MissingZero,
    DanglingElement,
    NotSingleValued,
    NotTotal,
    CompNotConstantZero,
}

/// One failed invariant, naming the table and the offending tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub table: Option<String>,
    pub tuple: Vec<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// The result of validation: empty iff the algebra is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, table: Option<&str>, tuple: Vec<String>, message: String) {
        self.violations.push(Violation {
            kind,
            table: table.map(str::to_string),
            tuple,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Index-based tables before validation. A `None` table means the key was absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawAlgebra {
    pub names: Vec<String>,
    pub signature: Signature,
    pub join: Option<Vec<(Elem, Elem, Elem)>>,
    pub minus: Option<Vec<(Elem, Elem, Elem)>>,
    pub meet: Option<Vec<(Elem, Elem, Elem)>>,
    pub comp: Option<Vec<(Elem, Elem, Elem)>>,
    pub zero: Option<Elem>,
}

impl RawAlgebra {
    pub fn empty(names: Vec<String>, signature: Signature) -> Self {
        RawAlgebra {
            names,
            signature,
            join: None,
            minus: None,
            meet: None,
            comp: None,
            zero: None,
        }
    }

    pub fn table(&self, op: BinOp) -> &Option<Vec<(Elem, Elem, Elem)>> {
        match op {
            BinOp::Join => &self.join,
            BinOp::Minus => &self.minus,
            BinOp::Meet => &self.meet,
            BinOp::Comp => &self.comp,
        }
    }

    pub fn table_mut(&mut self, op: BinOp) -> &mut Option<Vec<(Elem, Elem, Elem)>> {
        match op {
            BinOp::Join => &mut self.join,
            BinOp::Minus => &mut self.minus,
            BinOp::Meet => &mut self.meet,
            BinOp::Comp => &mut self.comp,
        }
    }
}

fn tuple(names: &[String], xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| names[x].clone()).collect()
}

fn check_signature(sig: Signature, opts: ValidateOptions, report: &mut ValidationReport) {
    if sig.is_degenerate() && !opts.allow_degenerate {
        report.push(
            ViolationKind::DegenerateSignature,
            None,
            vec![],
            format!("degenerate signature {sig}: needs join, minus or meet"),
        );
    }
    if sig.has_comp && !sig.has_zero {
        report.push(
            ViolationKind::CompWithoutZero,
            Some("comp"),
            vec![],
            "comp requires zero in the signature".into(),
        );
    }
}

fn check_duplicates(names: &[String], report: &mut ValidationReport) {
    let mut seen = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if seen.insert(n.as_str(), i).is_some() {
            report.push(
                ViolationKind::DuplicateId,
                None,
                vec![n.clone()],
                format!("duplicate element id `{n}`"),
            );
        }
    }
}

/// Validates index-based tables whose entries are already known to lie in the carrier.
pub(crate) fn check_raw(raw: &RawAlgebra, opts: ValidateOptions) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = raw.names.len();
    let names = &raw.names;
    check_duplicates(names, &mut report);
    check_signature(raw.signature, opts, &mut report);

    for op in BinOp::ALL {
        let table = raw.table(op);
        let present = raw.signature.contains(op.symbol());
        let label = op.symbol().as_str();
        if !present {
            if table.as_ref().is_some_and(|t| !t.is_empty()) {
                report.push(
                    ViolationKind::TableWithoutSymbol,
                    Some(label),
                    vec![],
                    format!("{label} table present but {label} is not in the signature"),
                );
            }
            continue;
        }
        let entries = table.as_deref().unwrap_or(&[]);
        let mut cell: Vec<Option<Elem>> = vec![None; n * n];
        let mut dangling = false;
        for &(a, b, c) in entries {
            if a >= n || b >= n || c >= n {
                dangling = true;
                report.push(
                    ViolationKind::DanglingElement,
                    Some(label),
                    vec![],
                    format!("dangling element in {label} entry: index outside the carrier"),
                );
                continue;
            }
            match cell[a * n + b] {
                Some(prev) if prev != c => report.push(
                    ViolationKind::NotSingleValued,
                    Some(label),
                    tuple(names, &[a, b]),
                    format!(
                        "{label} not single-valued at ({},{}): {} vs {}",
                        names[a], names[b], names[prev], names[c]
                    ),
                ),
                _ => cell[a * n + b] = Some(c),
            }
        }
        if op.is_total() && !dangling {
            for a in 0..n {
                for b in 0..n {
                    if cell[a * n + b].is_none() {
                        report.push(
                            ViolationKind::NotTotal,
                            Some(label),
                            tuple(names, &[a, b]),
                            format!("{label} not total: no entry at ({},{})", names[a], names[b]),
                        );
                    }
                }
            }
        }
        if op == BinOp::Comp {
            if let Some(z) = raw.zero.filter(|&z| z < n) {
                for &(a, b, c) in entries {
                    if a < n && b < n && c < n && c != z {
                        report.push(
                            ViolationKind::CompNotConstantZero,
                            Some(label),
                            tuple(names, &[a, b, c]),
                            format!(
                                "comp must be constant zero: ({},{}) -> {}",
                                names[a], names[b], names[c]
                            ),
                        );
                    }
                }
            }
        }
    }

    match (raw.signature.has_zero, raw.zero) {
        (true, None) => report.push(
            ViolationKind::MissingZero,
            Some("zero"),
            vec![],
            "zero is in the signature but no zero element is given".into(),
        ),
        (false, Some(_)) => report.push(
            ViolationKind::TableWithoutSymbol,
            Some("zero"),
            vec![],
            "zero element given but zero is not in the signature".into(),
        ),
        (_, Some(z)) if z >= n => report.push(
            ViolationKind::DanglingElement,
            Some("zero"),
            vec![],
            "dangling element as zero".into(),
        ),
        _ => {}
    }
    report
}

/// Resolves a document's names to indices. Dangling references are reported and
/// the offending entries dropped.
pub(crate) fn resolve(doc: &AlgebraDoc, report: &mut ValidationReport) -> Option<RawAlgebra> {
    let signature = Signature::from_symbols(doc.signature.iter().copied());
    let mut index = HashMap::new();
    for (i, n) in doc.carrier.iter().enumerate() {
        index.entry(n.as_str()).or_insert(i);
    }
    let mut raw = RawAlgebra::empty(doc.carrier.clone(), signature);
    for op in BinOp::ALL {
        let Some(entries) = doc.table(op) else { continue };
        let label = op.symbol().as_str();
        let mut out = Vec::with_capacity(entries.len());
        for [a, b, c] in entries {
            let mut ids = [0; 3];
            let mut ok = true;
            for (k, s) in [a, b, c].into_iter().enumerate() {
                match index.get(s.as_str()) {
                    Some(&i) => ids[k] = i,
                    None => {
                        ok = false;
                        report.push(
                            ViolationKind::DanglingElement,
                            Some(label),
                            vec![a.clone(), b.clone(), c.clone()],
                            format!("dangling element `{s}` in {label} entry ({a},{b},{c})"),
                        );
                    }
                }
            }
            if ok {
                out.push((ids[0], ids[1], ids[2]));
            }
        }
        *raw.table_mut(op) = Some(out);
    }
    if let Some(z) = &doc.zero {
        match index.get(z.as_str()) {
            Some(&i) => raw.zero = Some(i),
            None => {
                report.push(
                    ViolationKind::DanglingElement,
                    Some("zero"),
                    vec![z.clone()],
                    format!("dangling element `{z}` as zero"),
                );
                return None;
            }
        }
    }
    Some(raw)
}

/// Checks every structural invariant of an algebra document.
pub fn validate(doc: &AlgebraDoc, opts: ValidateOptions) -> ValidationReport {
    let mut report = ValidationReport::default();
    match resolve(doc, &mut report) {
        Some(raw) => {
            let rest = check_raw(&raw, opts);
            report.violations.extend(rest.violations);
        }
        None => {
            check_duplicates(&doc.carrier, &mut report);
            check_signature(Signature::from_symbols(doc.signature.iter().copied()), opts, &mut report);
        }
    }
    report
}
