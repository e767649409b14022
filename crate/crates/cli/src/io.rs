use std::fmt;
use std::fs;
use std::io::{ErrorKind, Read, Write};
use std::path::Path;

use partalg::algebra::{parse_algebra_doc, AlgebraDoc, PartialAlgebra, ValidateOptions};
use serde_json::Value;

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<partalg::Error> for Failure {
    fn from(e: partalg::Error) -> Self {
        let code = match e {
            partalg::Error::ResourceCap { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CmdResult = Result<u8, Failure>;

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

/// Writes a document to the given file, or to standard output.
pub fn emit(doc: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, doc).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => write_stdout(doc),
    }
}

/// Writes to standard output. A closed pipe, as with `| head`, is not an error.
pub fn write_stdout(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::usage(format!("cannot write output: {e}"))),
        _ => Ok(()),
    }
}

/// The kinds of structured document the tools exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Algebra,
    Representation,
    FunctionRepresentation,
    Certificate,
}

impl fmt::Display for DocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocKind::Algebra => "an algebra document",
            DocKind::Representation => "a set representation document",
            DocKind::FunctionRepresentation => "a partial-function representation document",
            DocKind::Certificate => "a certificate document",
        })
    }
}

/// Recognises a document by its keys.
pub fn doc_kind(text: &str) -> Result<DocKind, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("not a structured document: {e}")))?;
    let Some(obj) = v.as_object() else {
        return Err(Failure::usage("not a structured document: expected an object"));
    };
    if obj.contains_key("carrier") {
        return Ok(DocKind::Algebra);
    }
    if obj.contains_key("point_types") {
        return Ok(DocKind::Certificate);
    }
    if let Some(assignment) = obj.get("assignment").and_then(Value::as_object) {
        let pairs = assignment
            .values()
            .filter_map(Value::as_array)
            .flatten()
            .any(Value::is_array);
        return Ok(if pairs {
            DocKind::FunctionRepresentation
        } else {
            DocKind::Representation
        });
    }
    Err(Failure::usage("unrecognised document: expected keys carrier, base/assignment or point_types"))
}

/// Fails with exit 2 unless the document has the expected kind.
pub fn expect_kind(text: &str, expected: DocKind) -> Result<(), Failure> {
    let found = doc_kind(text)?;
    if found != expected {
        return Err(Failure::usage(format!("expected {expected}, found {found}")));
    }
    Ok(())
}

pub fn read_doc(path: &str) -> Result<AlgebraDoc, Failure> {
    let text = read_input(path)?;
    expect_kind(&text, DocKind::Algebra)?;
    Ok(parse_algebra_doc(&text)?)
}

pub fn read_algebra(path: &str) -> Result<PartialAlgebra, Failure> {
    read_algebra_with(path, ValidateOptions::default())
}

pub fn read_algebra_with(path: &str, opts: ValidateOptions) -> Result<PartialAlgebra, Failure> {
    Ok(read_doc(path)?.to_algebra(opts)?)
}
