use serde::{Deserialize, Serialize};

use super::partial::{BinOp, PartialAlgebra};
use super::signature::Symbol;
use super::validate::{check_raw, resolve, ValidateOptions, ValidationReport};
use crate::error::{Error, Result};

pub type Triple = [String; 3];

/// The on-disk form of an algebra: element ids are strings and tables are
/// lists of `[a, b, c]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub carrier: Vec<String>,
    pub signature: Vec<Symbol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
}

impl AlgebraDoc {
    pub fn table(&self, op: BinOp) -> Option<&Vec<Triple>> {
        match op {
            BinOp::Join => self.join.as_ref(),
            BinOp::Minus => self.minus.as_ref(),
            BinOp::Meet => self.meet.as_ref(),
            BinOp::Comp => self.comp.as_ref(),
        }
    }

    fn table_mut(&mut self, op: BinOp) -> &mut Option<Vec<Triple>> {
        match op {
            BinOp::Join => &mut self.join,
            BinOp::Minus => &mut self.minus,
            BinOp::Meet => &mut self.meet,
            BinOp::Comp => &mut self.comp,
        }
    }

    pub fn from_algebra(alg: &PartialAlgebra) -> Self {
        let mut doc = AlgebraDoc {
            carrier: alg.names().to_vec(),
            signature: alg.signature().symbols(),
            join: None,
            minus: None,
            meet: None,
            comp: None,
            zero: alg.zero().map(|z| alg.name(z).to_string()),
        };
        for op in BinOp::ALL {
            if alg.has(op.symbol()) {
                *doc.table_mut(op) = Some(
                    alg.triples(op)
                        .map(|(a, b, c)| {
                            [alg.name(a).into(), alg.name(b).into(), alg.name(c).into()]
                        })
                        .collect(),
                );
            }
        }
        doc
    }

    pub fn to_algebra(&self, opts: ValidateOptions) -> Result<PartialAlgebra> {
        let mut report = ValidationReport::default();
        let raw = resolve(self, &mut report);
        if let Some(raw) = &raw {
            report.violations.extend(check_raw(raw, opts).violations);
        }
        match raw {
            Some(raw) if report.is_empty() => PartialAlgebra::from_raw(raw, opts),
            _ => Err(Error::Invalid(report)),
        }
    }
}

pub(crate) fn parse_error(err: serde_json::Error) -> Error {
    Error::Parse {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Line and column (1-based) of a byte offset.
pub(crate) fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn duplicate_error(text: &str, doc: &AlgebraDoc) -> Option<Error> {
    let mut seen = std::collections::HashSet::new();
    let dup = doc.carrier.iter().find(|n| !seen.insert(n.as_str()))?;
    let quoted = serde_json::to_string(dup).expect("strings serialize");
    let offset = text
        .match_indices(&quoted)
        .nth(1)
        .map_or(0, |(i, _)| i);
    let (line, column) = position(text, offset);
    Some(Error::Parse {
        line,
        column,
        message: format!("duplicate element id `{dup}`"),
    })
}

/// Parses the raw document without checking algebra invariants.
pub fn parse_algebra_doc(text: &str) -> Result<AlgebraDoc> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(parse_error)?;
    if let Some(e) = duplicate_error(text, &doc) {
        return Err(e);
    }
    Ok(doc)
}

/// Parses and validates an algebra document with default options.
pub fn parse_algebra(text: &str) -> Result<PartialAlgebra> {
    parse_algebra_with(text, ValidateOptions::default())
}

pub fn parse_algebra_with(text: &str, opts: ValidateOptions) -> Result<PartialAlgebra> {
    parse_algebra_doc(text)?.to_algebra(opts)
}

pub(crate) fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

pub(crate) fn json_list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<String> = items.into_iter().map(json_str).collect();
    format!("[{}]", parts.join(", "))
}

/// Writes an algebra document with one triple per line.
pub fn serialize_algebra(alg: &PartialAlgebra) -> String {
    let doc = AlgebraDoc::from_algebra(alg);
    let mut fields = vec![
        format!("  \"carrier\": {}", json_list(doc.carrier.iter().map(String::as_str))),
        format!(
            "  \"signature\": {}",
            json_list(doc.signature.iter().map(|s| s.as_str()))
        ),
    ];
    for op in BinOp::ALL {
        if let Some(entries) = doc.table(op) {
            let key = op.symbol().as_str();
            if entries.is_empty() {
                fields.push(format!("  \"{key}\": []"));
            } else {
                let rows: Vec<String> = entries
                    .iter()
                    .map(|t| format!("    {}", json_list(t.iter().map(String::as_str))))
                    .collect();
                fields.push(format!("  \"{key}\": [\n{}\n  ]", rows.join(",\n")));
            }
        }
    }
    if let Some(z) = &doc.zero {
        fields.push(format!("  \"zero\": {}", json_str(z)));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}
