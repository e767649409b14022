use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::BinOp;

/// A term over variables, the constants `0` and `∞`, and the binary operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    Infinity,
    Op(BinOp, Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn op(op: BinOp, a: Term, b: Term) -> Term {
        Term::Op(op, Arc::new(a), Arc::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::op(BinOp::Join, a, b)
    }

    pub fn minus(a: Term, b: Term) -> Term {
        Term::op(BinOp::Minus, a, b)
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::op(BinOp::Meet, a, b)
    }

    /// Adds the variables of the term to `out`.
    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::Infinity => {}
            Term::Op(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Pushes every subterm, children before parents, without duplicates.
    pub fn collect_subterms(&self, out: &mut Vec<Term>) {
        if let Term::Op(_, a, b) = self {
            a.collect_subterms(out);
            b.collect_subterms(out);
        }
        if !out.contains(self) {
            out.push(self.clone());
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Op(_, a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

/// Relation symbols: `J` is the graph of join, `K` the graph of minus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    J,
    K,
}

impl Rel {
    pub fn op(self) -> BinOp {
        match self {
            Rel::J => BinOp::Join,
            Rel::K => BinOp::Minus,
        }
    }
}

/// A first-order formula. Children are shared so that recursively generated
/// formulas stay small in memory.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Rel(Rel, [Term; 3]),
    Not(Arc<Formula>),
    And(Vec<Arc<Formula>>),
    Or(Vec<Arc<Formula>>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Forall(Vec<String>, Arc<Formula>),
    Exists(Vec<String>, Arc<Formula>),
}

pub type F = Arc<Formula>;

pub fn tt() -> F {
    Arc::new(Formula::True)
}

pub fn ff() -> F {
    Arc::new(Formula::False)
}

pub fn eq(a: Term, b: Term) -> F {
    Arc::new(Formula::Eq(a, b))
}

pub fn neq(a: Term, b: Term) -> F {
    not(eq(a, b))
}

pub fn rel(r: Rel, a: Term, b: Term, c: Term) -> F {
    Arc::new(Formula::Rel(r, [a, b, c]))
}

/// `J(a, b, c)` over variables.
pub fn j(a: &str, b: &str, c: &str) -> F {
    rel(Rel::J, Term::var(a), Term::var(b), Term::var(c))
}

/// `K(a, b, c)` over variables.
pub fn k(a: &str, b: &str, c: &str) -> F {
    rel(Rel::K, Term::var(a), Term::var(b), Term::var(c))
}

pub fn not(f: F) -> F {
    Arc::new(Formula::Not(f))
}

/// Conjunction; an empty list is `⊤` and a single conjunct is returned as is.
pub fn and(mut fs: Vec<F>) -> F {
    match fs.len() {
        0 => tt(),
        1 => fs.pop().unwrap(),
        _ => Arc::new(Formula::And(fs)),
    }
}

/// Disjunction; an empty list is `⊥` and a single disjunct is returned as is.
pub fn or(mut fs: Vec<F>) -> F {
    match fs.len() {
        0 => ff(),
        1 => fs.pop().unwrap(),
        _ => Arc::new(Formula::Or(fs)),
    }
}

pub fn implies(a: F, b: F) -> F {
    Arc::new(Formula::Implies(a, b))
}

pub fn iff(a: F, b: F) -> F {
    Arc::new(Formula::Iff(a, b))
}

pub fn forall(vars: &[&str], body: F) -> F {
    Arc::new(Formula::Forall(vars.iter().map(|s| s.to_string()).collect(), body))
}

pub fn exists(vars: &[&str], body: F) -> F {
    Arc::new(Formula::Exists(vars.iter().map(|s| s.to_string()).collect(), body))
}

impl Formula {
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Rel(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Free variables in name order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let terms = |ts: &[&Term], out: &mut BTreeSet<String>| {
            let mut vs = BTreeSet::new();
            for t in ts {
                t.collect_vars(&mut vs);
            }
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => terms(&[a, b], out),
            Formula::Rel(_, [a, b, c]) => terms(&[a, b, c], out),
            Formula::Not(f) => f.free_into(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.free_into(bound, out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.free_into(bound, out);
                b.free_into(bound, out);
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let mark = bound.len();
                bound.extend(vs.iter().cloned());
                f.free_into(bound, out);
                bound.truncate(mark);
            }
        }
    }

    /// Number of nodes when the formula is written out as a tree.
    pub fn tree_size(&self) -> u128 {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Rel(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.tree_size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(|f| f.tree_size()).sum::<u128>(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.tree_size() + b.tree_size(),
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::Rel(..) => true,
            Formula::Not(f) => matches!(**f, Formula::Eq(..)),
            _ => false,
        }
    }

    /// Binds tighter than any binary connective when printed.
    fn is_unary(&self) -> bool {
        matches!(
            self,
            Formula::True
                | Formula::False
                | Formula::Eq(..)
                | Formula::Rel(..)
                | Formula::Not(_)
                | Formula::Forall(..)
                | Formula::Exists(..)
        )
    }
}

fn op_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::Join => "⊔",
        BinOp::Minus => "⊖",
        BinOp::Meet => "·",
        BinOp::Comp => ";",
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::Infinity => write!(f, "∞"),
            Term::Op(op, a, b) => {
                let side = |t: &Term, f: &mut fmt::Formatter<'_>| match t {
                    Term::Op(..) => write!(f, "({t})"),
                    _ => write!(f, "{t}"),
                };
                side(a, f)?;
                write!(f, " {} ", op_symbol(*op))?;
                side(b, f)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |g: &Formula, f: &mut fmt::Formatter<'_>| {
            if g.is_unary() {
                write!(f, "{g}")
            } else {
                write!(f, "({g})")
            }
        };
        let list = |fs: &[F], sep: &str, f: &mut fmt::Formatter<'_>| {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                child(g, f)?;
            }
            Ok(())
        };
        match self {
            Formula::True => write!(f, "⊤"),
            Formula::False => write!(f, "⊥"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Rel(r, [a, b, c]) => write!(f, "{r:?}({a},{b},{c})"),
            Formula::Not(g) => match &**g {
                Formula::Eq(a, b) => write!(f, "{a} ≠ {b}"),
                _ => {
                    write!(f, "¬")?;
                    child(g, f)
                }
            },
            Formula::And(fs) => list(fs, "∧", f),
            Formula::Or(fs) => list(fs, "∨", f),
            Formula::Implies(a, b) => {
                child(a, f)?;
                write!(f, " → ")?;
                child(b, f)
            }
            Formula::Iff(a, b) => {
                child(a, f)?;
                write!(f, " ↔ ")?;
                child(b, f)
            }
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let q = if matches!(self, Formula::Forall(..)) { "∀" } else { "∃" };
                write!(f, "{q}{}", vs.join(","))?;
                if g.is_atomic() {
                    write!(f, " {g}")
                } else {
                    write!(f, " ({g})")
                }
            }
        }
    }
}
