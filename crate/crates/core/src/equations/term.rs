use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Elem, PartialAlgebra, Symbol};
use crate::error::{Error, Result};

/// A node of a term. Children always come before their parent in
/// [`Term::nodes`], so one forward pass evaluates a term bottom up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    /// Index into [`Term::var_names`].
    Var(usize),
    Zero,
    Join(usize, usize),
}

/// A `(⊔, 0)`-term stored as a flat arena, so that arbitrarily long terms
/// are built, walked and dropped without recursion. The root is the last node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    nodes: Vec<Node>,
    names: Vec<String>,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term {
            nodes: vec![Node::Var(0)],
            names: vec![name.into()],
        }
    }

    pub fn zero() -> Term {
        Term {
            nodes: vec![Node::Zero],
            names: Vec::new(),
        }
    }

    pub fn join(a: Term, b: Term) -> Term {
        let mut b_ids = Vec::with_capacity(b.names.len());
        let mut t = a;
        for name in b.names {
            b_ids.push(t.intern(&name));
        }
        let offset = t.nodes.len();
        let (ra, rb) = (offset - 1, offset + b.nodes.len() - 1);
        t.nodes.extend(b.nodes.into_iter().map(|n| match n {
            Node::Var(v) => Node::Var(b_ids[v]),
            Node::Zero => Node::Zero,
            Node::Join(x, y) => Node::Join(x + offset, y + offset),
        }));
        t.nodes.push(Node::Join(ra, rb));
        t
    }

    /// Left-associated join of the parts: `((t1 + t2) + t3) + …`.
    pub fn join_all(parts: impl IntoIterator<Item = Term>) -> Option<Term> {
        let mut b = Builder::default();
        let mut acc = None;
        for p in parts {
            let r = b.append(&p);
            acc = Some(match acc {
                None => r,
                Some(a) => b.push(Node::Join(a, r)),
            });
        }
        acc.map(|_| b.finish())
    }

    fn intern(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Distinct variable names in order of first appearance.
    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn root(&self) -> Node {
        *self.nodes.last().expect("a term has at least one node")
    }

    /// Number of nodes, the measure of term length.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::Join(a, b) = *n {
                d[i] = 1 + d[a].max(d[b]);
            }
        }
        *d.last().unwrap()
    }

    /// Occurrences of each variable, indexed like [`Term::var_names`].
    pub fn occurrences(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.names.len()];
        for n in &self.nodes {
            if let Node::Var(v) = *n {
                count[v] += 1;
            }
        }
        count
    }

    /// Evaluates the term bottom up with `leaf` for variables, `zero` for the
    /// constant and `join` for the operation; `None` means undefined.
    pub fn fold<T: Copy>(
        &self,
        leaf: impl Fn(usize) -> Option<T>,
        zero: Option<T>,
        join: impl Fn(T, T) -> Option<T>,
    ) -> Option<T> {
        let mut vals: Vec<Option<T>> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let v = match *n {
                Node::Var(x) => leaf(x),
                Node::Zero => zero,
                Node::Join(a, b) => match (vals[a], vals[b]) {
                    (Some(x), Some(y)) => join(x, y),
                    _ => None,
                },
            };
            vals.push(v);
        }
        *vals.last().unwrap()
    }
}

#[derive(Default)]
pub(crate) struct Builder {
    nodes: Vec<Node>,
    names: Vec<String>,
    index: std::collections::HashMap<String, usize>,
}

impl Builder {
    pub(crate) fn var(&mut self, name: &str) -> usize {
        let id = match self.index.get(name) {
            Some(&i) => i,
            None => {
                self.names.push(name.to_string());
                self.index.insert(name.to_string(), self.names.len() - 1);
                self.names.len() - 1
            }
        };
        self.push(Node::Var(id))
    }

    pub(crate) fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn append(&mut self, t: &Term) -> usize {
        let offset = self.nodes.len();
        for n in &t.nodes {
            match *n {
                Node::Var(v) => {
                    self.var(&t.names[v]);
                }
                Node::Zero => {
                    self.push(Node::Zero);
                }
                Node::Join(a, b) => {
                    self.push(Node::Join(a + offset, b + offset));
                }
            }
        }
        self.nodes.len() - 1
    }

    /// The term rooted at the last node pushed. Every node must be reachable
    /// from it, which holds when each node is used exactly once as a child.
    pub(crate) fn finish(self) -> Term {
        Term {
            nodes: self.nodes,
            names: self.names,
        }
    }
}

/// `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    /// Variables of both sides, sorted by name.
    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.lhs.names.iter().chain(&self.rhs.names).cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for Term {
    /// Prints with `+`, bracketing only right operands that are joins, which
    /// reads back to the same tree under left associativity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Task {
            Node(usize),
            Text(&'static str),
        }
        let mut stack = vec![Task::Node(self.nodes.len() - 1)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Text(s) => f.write_str(s)?,
                Task::Node(i) => match self.nodes[i] {
                    Node::Var(v) => f.write_str(&self.names[v])?,
                    Node::Zero => f.write_str("0")?,
                    Node::Join(a, b) => {
                        if matches!(self.nodes[b], Node::Join(..)) {
                            stack.push(Task::Text(")"));
                            stack.push(Task::Node(b));
                            stack.push(Task::Text(" + ("));
                        } else {
                            stack.push(Task::Node(b));
                            stack.push(Task::Text(" + "));
                        }
                        stack.push(Task::Node(a));
                    }
                },
            }
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Evaluates a term in an algebra with join; `None` means undefined.
pub fn eval_term(alg: &PartialAlgebra, term: &Term, assignment: &BTreeMap<String, Elem>) -> Result<Option<Elem>> {
    if !alg.has(Symbol::Join) {
        return Err(Error::SignatureMismatch(format!(
            "terms use join, the algebra has {}",
            alg.signature()
        )));
    }
    let zero = if term.nodes.contains(&Node::Zero) {
        Some(alg.zero().ok_or_else(|| {
            Error::SignatureMismatch(format!("the term uses 0, the algebra has {}", alg.signature()))
        })?)
    } else {
        None
    };
    let mut values = Vec::with_capacity(term.names.len());
    for name in &term.names {
        let e = *assignment
            .get(name)
            .ok_or_else(|| Error::precondition(format!("no value for variable `{name}`")))?;
        if e >= alg.len() {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        values.push(e);
    }
    Ok(term.fold(|v| Some(values[v]), zero, |a, b| alg.join(a, b)))
}
