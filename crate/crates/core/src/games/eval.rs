use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::formula::{Formula, Rel, Term};
use crate::algebra::{BinOp, Elem, PartialAlgebra, Symbol, TotalAlgebra};
use crate::error::{Error, Result};

/// Values for free variables, by name.
pub type Assignment = BTreeMap<String, Elem>;

/// A structure to evaluate in.
///
/// A partial algebra is read relationally: quantifiers range over the
/// carrier, `J` and `K` are the graphs of join and minus, and only the total
/// operations may appear inside terms. A total algebra is read as `A⁺`:
/// quantifiers range over the carrier and `∞`, every operation may appear in
/// terms and there are no relation symbols.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Partial(&'a PartialAlgebra),
    Total(&'a TotalAlgebra),
}

impl<'a> Structure<'a> {
    fn domain(&self) -> usize {
        match self {
            Structure::Partial(a) => a.len(),
            Structure::Total(t) => t.size(),
        }
    }

    fn has(&self, s: Symbol) -> bool {
        match self {
            Structure::Partial(a) => a.has(s),
            Structure::Total(t) => t.signature().contains(s),
        }
    }

    fn zero(&self) -> Option<Elem> {
        match self {
            Structure::Partial(a) => a.zero(),
            Structure::Total(t) => t.zero(),
        }
    }

    fn apply(&self, op: BinOp, a: Elem, b: Elem) -> Elem {
        match self {
            Structure::Partial(alg) => alg.op(op, a, b).expect("total operation"),
            Structure::Total(t) => t.apply(op, a, b),
        }
    }

    fn rel(&self, r: Rel, a: Elem, b: Elem, c: Elem) -> bool {
        match self {
            Structure::Partial(alg) => alg.op(r.op(), a, b) == Some(c),
            Structure::Total(_) => unreachable!("relations are rejected for total algebras"),
        }
    }

    fn name(&self, e: Elem) -> String {
        match self {
            Structure::Partial(a) => a.name(e).to_string(),
            Structure::Total(t) => t.names().get(e).cloned().unwrap_or_else(|| "∞".to_string()),
        }
    }
}

#[derive(Debug, Clone)]
enum CTerm {
    Var(usize),
    Zero,
    Infinity,
    Op(BinOp, Box<CTerm>, Box<CTerm>),
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Eq(CTerm, CTerm),
    Rel(Rel, [CTerm; 3]),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Iff(usize, usize),
    Quant { universal: bool, vars: Vec<usize>, body: usize },
}

/// A formula compiled once for repeated evaluation: variables become slots
/// and shared subformulas become shared nodes.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    free: Vec<Vec<usize>>,
    root: usize,
    slots: Vec<String>,
    ops: BTreeSet<BinOp>,
    rels: BTreeSet<Rel>,
    uses_zero: bool,
    uses_infinity: bool,
}

struct Compiler {
    nodes: Vec<Node>,
    free: Vec<Vec<usize>>,
    seen: HashMap<*const Formula, usize>,
    slot_of: HashMap<String, usize>,
    slots: Vec<String>,
    ops: BTreeSet<BinOp>,
    rels: BTreeSet<Rel>,
    uses_zero: bool,
    uses_infinity: bool,
}

impl Compiler {
    fn slot(&mut self, name: &str) -> usize {
        if let Some(&s) = self.slot_of.get(name) {
            return s;
        }
        let s = self.slots.len();
        self.slots.push(name.to_string());
        self.slot_of.insert(name.to_string(), s);
        s
    }

    fn term(&mut self, t: &Term, free: &mut BTreeSet<usize>) -> CTerm {
        match t {
            Term::Var(v) => {
                let s = self.slot(v);
                free.insert(s);
                CTerm::Var(s)
            }
            Term::Zero => {
                self.uses_zero = true;
                CTerm::Zero
            }
            Term::Infinity => {
                self.uses_infinity = true;
                CTerm::Infinity
            }
            Term::Op(op, a, b) => {
                self.ops.insert(*op);
                let a = self.term(a, free);
                let b = self.term(b, free);
                CTerm::Op(*op, Box::new(a), Box::new(b))
            }
        }
    }

    fn push(&mut self, node: Node, free: BTreeSet<usize>) -> usize {
        self.nodes.push(node);
        self.free.push(free.into_iter().collect());
        self.nodes.len() - 1
    }

    fn formula(&mut self, f: &Formula) -> usize {
        let key = f as *const Formula;
        if let Some(&id) = self.seen.get(&key) {
            return id;
        }
        let mut free = BTreeSet::new();
        let node = match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Eq(a, b) => Node::Eq(self.term(a, &mut free), self.term(b, &mut free)),
            Formula::Rel(r, [a, b, c]) => {
                self.rels.insert(*r);
                let a = self.term(a, &mut free);
                let b = self.term(b, &mut free);
                let c = self.term(c, &mut free);
                Node::Rel(*r, [a, b, c])
            }
            Formula::Not(g) => {
                let g = self.formula(g);
                free.extend(self.free[g].iter().copied());
                Node::Not(g)
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let ids: Vec<usize> = gs.iter().map(|g| self.formula(g)).collect();
                for &g in &ids {
                    free.extend(self.free[g].iter().copied());
                }
                if matches!(f, Formula::And(_)) {
                    Node::And(ids)
                } else {
                    Node::Or(ids)
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let a = self.formula(a);
                let b = self.formula(b);
                free.extend(self.free[a].iter().copied());
                free.extend(self.free[b].iter().copied());
                if matches!(f, Formula::Implies(..)) {
                    Node::Implies(a, b)
                } else {
                    Node::Iff(a, b)
                }
            }
            Formula::Forall(vs, g) | Formula::Exists(vs, g) => {
                let vars: Vec<usize> = vs.iter().map(|v| self.slot(v)).collect();
                let body = self.formula(g);
                free.extend(self.free[body].iter().copied().filter(|s| !vars.contains(s)));
                Node::Quant {
                    universal: matches!(f, Formula::Forall(..)),
                    vars,
                    body,
                }
            }
        };
        let id = self.push(node, free);
        self.seen.insert(key, id);
        id
    }
}

impl Program {
    pub fn compile(f: &Formula) -> Program {
        let mut c = Compiler {
            nodes: Vec::new(),
            free: Vec::new(),
            seen: HashMap::new(),
            slot_of: HashMap::new(),
            slots: Vec::new(),
            ops: BTreeSet::new(),
            rels: BTreeSet::new(),
            uses_zero: false,
            uses_infinity: false,
        };
        let root = c.formula(f);
        Program {
            nodes: c.nodes,
            free: c.free,
            root,
            slots: c.slots,
            ops: c.ops,
            rels: c.rels,
            uses_zero: c.uses_zero,
            uses_infinity: c.uses_infinity,
        }
    }

    /// Free variables of the whole formula.
    pub fn free_vars(&self) -> Vec<String> {
        self.free[self.root].iter().map(|&s| self.slots[s].clone()).collect()
    }

    /// Checks that the formula only uses symbols the structure interprets.
    pub fn check(&self, s: Structure<'_>) -> Result<()> {
        let bad = |m: String| Err(Error::Formula(m));
        let total = matches!(s, Structure::Total(_));
        for &op in &self.ops {
            if !s.has(op.symbol()) {
                return bad(format!("{op} is not in the signature"));
            }
            if !total && !op.is_total() {
                return bad(format!("{op} is partial and may only appear through its relation symbol"));
            }
        }
        for &r in &self.rels {
            if total {
                return bad(format!("relation {r:?} cannot be evaluated in a totalised algebra"));
            }
            if !s.has(r.op().symbol()) {
                return bad(format!("relation {r:?} needs {} in the signature", r.op()));
            }
        }
        if self.uses_zero && s.zero().is_none() {
            return bad("0 is not in the signature".into());
        }
        if self.uses_infinity && !total {
            return bad("∞ only exists in a totalised algebra".into());
        }
        Ok(())
    }

    /// Prepares repeated evaluation against one structure, sharing a cache of
    /// quantified subformula values.
    pub fn runner<'p, 's>(&'p self, s: Structure<'s>) -> Result<Runner<'p, 's>> {
        self.check(s)?;
        let domain = s.domain();
        // Cache keys pack the free-variable values into a u128.
        let cacheable = self
            .free
            .iter()
            .map(|f| (domain.max(2) as f64).log2() * f.len() as f64 <= 126.0)
            .collect();
        Ok(Runner {
            prog: self,
            s,
            domain,
            env: vec![0; self.slots.len()],
            memo: HashMap::new(),
            cacheable,
        })
    }
}

/// Evaluates one [`Program`] in one structure.
pub struct Runner<'p, 's> {
    prog: &'p Program,
    s: Structure<'s>,
    domain: usize,
    env: Vec<Elem>,
    memo: HashMap<(usize, u128), bool>,
    cacheable: Vec<bool>,
}

impl<'p, 's> Runner<'p, 's> {
    fn bind(&mut self, asg: &Assignment) -> Result<()> {
        for &s in &self.prog.free[self.prog.root] {
            let name = &self.prog.slots[s];
            let Some(&v) = asg.get(name) else {
                return Err(Error::Formula(format!("free variable `{name}` is not assigned")));
            };
            if v >= self.domain {
                return Err(Error::Formula(format!("value {v} for `{name}` is outside the structure")));
            }
            self.env[s] = v;
        }
        Ok(())
    }

    /// Truth value under the assignment, which must cover the free variables.
    pub fn eval(&mut self, asg: &Assignment) -> Result<bool> {
        self.bind(asg)?;
        Ok(self.node(self.prog.root))
    }

    /// Truth value with free variables read positionally, in the order of
    /// [`Program::free_vars`].
    pub fn eval_values(&mut self, values: &[Elem]) -> bool {
        let free = &self.prog.free[self.prog.root];
        assert_eq!(values.len(), free.len(), "one value per free variable");
        for (&s, &v) in free.iter().zip(values) {
            self.env[s] = v;
        }
        self.node(self.prog.root)
    }

    fn term(&self, t: &CTerm) -> Elem {
        match t {
            CTerm::Var(s) => self.env[*s],
            CTerm::Zero => self.s.zero().expect("checked"),
            CTerm::Infinity => self.domain - 1,
            CTerm::Op(op, a, b) => self.s.apply(*op, self.term(a), self.term(b)),
        }
    }

    fn key(&self, id: usize) -> u128 {
        let mut k = 0u128;
        for &s in &self.prog.free[id] {
            k = k * self.domain as u128 + self.env[s] as u128;
        }
        k
    }

    fn node(&mut self, id: usize) -> bool {
        let prog = self.prog;
        match &prog.nodes[id] {
            Node::Const(b) => *b,
            Node::Eq(a, b) => self.term(a) == self.term(b),
            Node::Rel(r, [a, b, c]) => {
                let (a, b, c) = (self.term(a), self.term(b), self.term(c));
                self.s.rel(*r, a, b, c)
            }
            Node::Not(g) => !self.node(*g),
            Node::And(gs) => gs.iter().all(|&g| self.node(g)),
            Node::Or(gs) => gs.iter().any(|&g| self.node(g)),
            Node::Implies(a, b) => !self.node(*a) || self.node(*b),
            Node::Iff(a, b) => self.node(*a) == self.node(*b),
            Node::Quant { universal, vars, body } => {
                let key = self.cacheable[id].then(|| (id, self.key(id)));
                if let Some(k) = key {
                    if let Some(&v) = self.memo.get(&k) {
                        return v;
                    }
                }
                let saved: Vec<Elem> = vars.iter().map(|&s| self.env[s]).collect();
                let v = self.quantify(vars, 0, *universal, *body);
                for (&s, v) in vars.iter().zip(saved) {
                    self.env[s] = v;
                }
                if let Some(k) = key {
                    self.memo.insert(k, v);
                }
                v
            }
        }
    }

    fn quantify(&mut self, vars: &[usize], i: usize, universal: bool, body: usize) -> bool {
        if i == vars.len() {
            return self.node(body);
        }
        for v in 0..self.domain {
            self.env[vars[i]] = v;
            if self.quantify(vars, i + 1, universal, body) != universal {
                return !universal;
            }
        }
        universal
    }

    /// An assignment to the free variables falsifying the formula, if any.
    ///
    /// Top-level conjunctions and universal quantifiers are split off, and the
    /// premises of an implication prune the enumeration as soon as their
    /// variables are fixed.
    pub fn counterexample(&mut self) -> Option<Assignment> {
        let mut goals = Vec::new();
        self.goals(self.prog.root, &mut goals);
        for g in goals {
            if let Some(values) = self.falsify(g) {
                return Some(values);
            }
        }
        None
    }

    pub fn holds(&mut self) -> bool {
        self.counterexample().is_none()
    }

    fn goals(&self, id: usize, out: &mut Vec<usize>) {
        match &self.prog.nodes[id] {
            Node::And(gs) => gs.iter().for_each(|&g| self.goals(g, out)),
            Node::Quant { universal: true, body, .. } => self.goals(*body, out),
            _ => out.push(id),
        }
    }

    fn falsify(&mut self, goal: usize) -> Option<Assignment> {
        let prog = self.prog;
        let (premises, conclusion) = match &prog.nodes[goal] {
            Node::Implies(p, q) => {
                let mut ps = Vec::new();
                flatten_and(&prog.nodes, *p, &mut ps);
                (ps, *q)
            }
            _ => (Vec::new(), goal),
        };
        // Variables in order of first use by the premises, then the rest.
        let mut order: Vec<usize> = Vec::new();
        for &p in &premises {
            for &s in &prog.free[p] {
                if !order.contains(&s) {
                    order.push(s);
                }
            }
        }
        for &s in &prog.free[goal] {
            if !order.contains(&s) {
                order.push(s);
            }
        }
        // A premise is checked once its last variable is fixed.
        let mut due: Vec<Vec<usize>> = vec![Vec::new(); order.len() + 1];
        for &p in &premises {
            let last = prog.free[p].iter().map(|s| order.iter().position(|o| o == s).unwrap() + 1).max().unwrap_or(0);
            due[last].push(p);
        }
        if self.search(&order, &due, conclusion, 0) {
            Some(order.iter().map(|&s| (prog.slots[s].clone(), self.env[s])).collect())
        } else {
            None
        }
    }

    /// True when a falsifying extension of the current partial assignment exists.
    fn search(&mut self, order: &[usize], due: &[Vec<usize>], conclusion: usize, depth: usize) -> bool {
        for &p in &due[depth] {
            if !self.node(p) {
                return false;
            }
        }
        if depth == order.len() {
            return !self.node(conclusion);
        }
        for v in 0..self.domain {
            self.env[order[depth]] = v;
            if self.search(order, due, conclusion, depth + 1) {
                return true;
            }
        }
        false
    }

    /// Renders an assignment with element names.
    pub fn describe(&self, asg: &Assignment) -> String {
        let parts: Vec<String> = asg.iter().map(|(k, &v)| format!("{k} ↦ {}", self.s.name(v))).collect();
        parts.join(", ")
    }
}

fn flatten_and(nodes: &[Node], id: usize, out: &mut Vec<usize>) {
    match &nodes[id] {
        Node::And(gs) => gs.iter().for_each(|&g| flatten_and(nodes, g, out)),
        _ => out.push(id),
    }
}

/// Evaluates a formula in a partial algebra read relationally.
pub fn eval_formula(alg: &PartialAlgebra, f: &Formula, asg: &Assignment) -> Result<bool> {
    Program::compile(f).runner(Structure::Partial(alg))?.eval(asg)
}

/// Truth in a partial algebra with free variables read universally.
pub fn holds(alg: &PartialAlgebra, f: &Formula) -> Result<bool> {
    Ok(Program::compile(f).runner(Structure::Partial(alg))?.holds())
}

/// A falsifying assignment in a partial algebra, if any.
pub fn counterexample(alg: &PartialAlgebra, f: &Formula) -> Result<Option<Assignment>> {
    Ok(Program::compile(f).runner(Structure::Partial(alg))?.counterexample())
}

/// Evaluates a formula in a totalised algebra, where `∞` is a value.
pub fn eval_total(t: &TotalAlgebra, f: &Formula, asg: &Assignment) -> Result<bool> {
    Program::compile(f).runner(Structure::Total(t))?.eval(asg)
}

/// Truth in a totalised algebra with free variables ranging over the carrier and `∞`.
pub fn holds_total(t: &TotalAlgebra, f: &Formula) -> Result<bool> {
    Ok(Program::compile(f).runner(Structure::Total(t))?.holds())
}
