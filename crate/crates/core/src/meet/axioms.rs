use std::fmt;
use std::str::FromStr;

use crate::algebra::{PartialAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::games::formula::{and, eq, exists, forall, iff, implies, j, k, not, or, rel, tt, Rel, Term, F};
use crate::games::{Assignment, Program, Structure};

/// The four axiom suites for signatures with intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    /// Join, meet and zero.
    AxJMeetZero,
    /// Join and meet.
    AxJMeet,
    /// Minus, meet and zero.
    AxKMeetZero,
    /// Minus and meet.
    AxKMeet,
}

impl SuiteId {
    pub const ALL: [SuiteId; 4] = [SuiteId::AxJMeetZero, SuiteId::AxJMeet, SuiteId::AxKMeetZero, SuiteId::AxKMeet];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::AxJMeetZero => "AxJMeetZero",
            SuiteId::AxJMeet => "AxJMeet",
            SuiteId::AxKMeetZero => "AxKMeetZero",
            SuiteId::AxKMeet => "AxKMeet",
        }
    }

    /// The signature the suite axiomatises.
    pub fn signature(self) -> Signature {
        let base = if self.uses_join() { Signature::JOIN } else { Signature::MINUS };
        let s = base.with(Symbol::Meet);
        if self.has_zero() {
            s.with(Symbol::Zero)
        } else {
            s
        }
    }

    pub fn uses_join(self) -> bool {
        matches!(self, SuiteId::AxJMeetZero | SuiteId::AxJMeet)
    }

    pub fn has_zero(self) -> bool {
        matches!(self, SuiteId::AxJMeetZero | SuiteId::AxKMeetZero)
    }

    /// The suite for an algebra's signature, if there is one.
    pub fn for_signature(sig: Signature) -> Option<SuiteId> {
        SuiteId::ALL.into_iter().find(|s| s.signature() == sig)
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::precondition(format!("unknown axiom suite `{s}`; expected one of AxJMeetZero, AxJMeet, AxKMeetZero, AxKMeet")))
    }
}

/// A named closed formula.
#[derive(Debug, Clone)]
pub struct Axiom {
    pub name: &'static str,
    pub formula: F,
}

#[derive(Debug, Clone)]
pub struct AxiomSuite {
    pub id: SuiteId,
    pub axioms: Vec<Axiom>,
}

fn v(x: &str) -> Term {
    Term::var(x)
}

fn m(a: Term, b: Term) -> Term {
    Term::meet(a, b)
}

fn semilattice() -> Vec<Axiom> {
    vec![
        Axiom {
            name: "· is commutative",
            formula: forall(&["a", "b"], eq(m(v("a"), v("b")), m(v("b"), v("a")))),
        },
        Axiom {
            name: "· is associative",
            formula: forall(
                &["a", "b", "c"],
                eq(m(m(v("a"), v("b")), v("c")), m(v("a"), m(v("b"), v("c")))),
            ),
        },
        Axiom {
            name: "· is idempotent",
            formula: forall(&["a"], eq(m(v("a"), v("a")), v("a"))),
        },
    ]
}

fn distributes(r: Rel) -> F {
    forall(
        &["a", "b", "c", "d"],
        implies(
            rel(r, v("b"), v("c"), v("d")),
            rel(r, m(v("a"), v("b")), m(v("a"), v("c")), m(v("a"), v("d"))),
        ),
    )
}

fn single_valued(r: Rel) -> F {
    let atom = |x: &str| rel(r, v("a"), v("b"), v(x));
    forall(
        &["a", "b", "c", "c'"],
        implies(and(vec![atom("c"), atom("c'")]), eq(v("c"), v("c'"))),
    )
}

/// The zero-like element clause for join: `∀a J(a, z, a) ∧ ∀a,b (a·b = z ↔ ∃c J(a, b, c))`.
pub(crate) fn join_zero_clause(z: &str) -> F {
    and(vec![
        forall(&["a"], rel(Rel::J, v("a"), v(z), v("a"))),
        forall(
            &["a", "b"],
            iff(eq(m(v("a"), v("b")), v(z)), exists(&["c"], j("a", "b", "c"))),
        ),
    ])
}

/// The zero-like element clause for minus: `∀a K(a, z, a)`.
pub(crate) fn minus_zero_clause(z: &str) -> F {
    forall(&["a"], rel(Rel::K, v("a"), v(z), v("a")))
}

/// The axioms of a suite, in a fixed order.
pub fn suite(id: SuiteId) -> AxiomSuite {
    let mut axioms = Vec::new();
    if id.uses_join() {
        axioms.push(Axiom {
            name: "⊔ is single valued",
            formula: single_valued(Rel::J),
        });
        axioms.push(Axiom {
            name: "⊔ is commutative",
            formula: forall(&["a", "b", "c"], implies(j("a", "b", "c"), j("b", "a", "c"))),
        });
        axioms.extend(semilattice());
        axioms.push(Axiom {
            name: "· distributes over ⊔",
            formula: distributes(Rel::J),
        });
        if id.has_zero() {
            axioms.push(Axiom {
                name: "0 is identity for ⊔",
                formula: forall(&["a"], rel(Rel::J, v("a"), Term::Zero, v("a"))),
            });
            axioms.push(Axiom {
                name: "domain of ⊔",
                formula: forall(
                    &["a", "b"],
                    iff(exists(&["c"], j("a", "b", "c")), eq(m(v("a"), v("b")), Term::Zero)),
                ),
            });
        } else {
            axioms.push(Axiom {
                name: "zero-like element or ⊔ nowhere defined",
                formula: or(vec![
                    exists(&["z"], join_zero_clause("z")),
                    forall(&["a", "b", "c"], not(j("a", "b", "c"))),
                ]),
            });
        }
    } else {
        axioms.push(Axiom {
            name: "⊖ is single valued",
            formula: single_valued(Rel::K),
        });
        axioms.push(Axiom {
            name: "⊖ is left injective",
            formula: forall(
                &["a", "a'", "b", "c"],
                implies(and(vec![k("a", "b", "c"), k("a'", "b", "c")]), eq(v("a"), v("a'"))),
            ),
        });
        axioms.push(Axiom {
            name: "⊖ is subtractive",
            formula: forall(&["a", "b", "c"], iff(k("a", "b", "c"), k("a", "c", "b"))),
        });
        axioms.extend(semilattice());
        axioms.push(Axiom {
            name: "· distributes over ⊖",
            formula: distributes(Rel::K),
        });
        if id.has_zero() {
            axioms.push(Axiom {
                name: "0 is identity for ⊖",
                formula: forall(&["a"], rel(Rel::K, v("a"), Term::Zero, v("a"))),
            });
        } else {
            axioms.push(Axiom {
                name: "empty or zero-like element",
                formula: or(vec![
                    not(exists(&["a"], tt())),
                    exists(&["z"], minus_zero_clause("z")),
                ]),
            });
        }
        axioms.push(Axiom {
            name: "domain of ⊖",
            formula: forall(
                &["a", "b"],
                iff(exists(&["c"], k("a", "b", "c")), eq(m(v("a"), v("b")), v("b"))),
            ),
        });
    }
    AxiomSuite { id, axioms }
}

/// An axiom that fails, with a falsifying assignment to its outer
/// universal variables (empty for axioms that are not universal).
#[derive(Debug, Clone)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub assignment: Assignment,
    pub message: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub(crate) fn require_signature(alg: &PartialAlgebra, id: SuiteId) -> Result<()> {
    if alg.signature() != id.signature() {
        return Err(Error::SignatureMismatch(format!(
            "suite {id} is for signature {}, the algebra has {}",
            id.signature(),
            alg.signature()
        )));
    }
    Ok(())
}

/// Evaluates every axiom of the suite and lists those that fail.
pub fn check_axioms(alg: &PartialAlgebra, id: SuiteId) -> Result<Vec<AxiomViolation>> {
    require_signature(alg, id)?;
    let mut out = Vec::new();
    for ax in suite(id).axioms {
        let prog = Program::compile(&ax.formula);
        let mut run = prog.runner(Structure::Partial(alg))?;
        if let Some(asg) = run.counterexample() {
            let at = run.describe(&asg);
            let message = if at.is_empty() {
                format!("{}: fails", ax.name)
            } else {
                format!("{}: fails at {at}", ax.name)
            };
            out.push(AxiomViolation {
                axiom: ax.name,
                assignment: asg,
                message,
            });
        }
    }
    Ok(out)
}
