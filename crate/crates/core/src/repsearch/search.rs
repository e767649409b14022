use fixedbitset::FixedBitSet;

use super::certificate::{requirements, RepCertificate, Requirement};
use super::point::{clauses, Lit};
use crate::algebra::{Elem, PartialAlgebra};

/// Default limit on decision nodes across one whole search.
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_cap: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Why the search gave up on representability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub requirement: Option<Requirement>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Certified(RepCertificate),
    /// Exhaustive search found no point type for some required pair.
    Refuted(Refutation),
    /// The node cap was hit before a verdict.
    Inconclusive { nodes: u64 },
}

impl SearchOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, SearchOutcome::Certified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchOutcome::Refuted(_))
    }

    pub fn certificate(&self) -> Option<&RepCertificate> {
        match self {
            SearchOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

pub(crate) enum Found {
    Point(FixedBitSet),
    Unsat,
    Capped,
}

const UNSET: i8 = -1;

/// Backtracking search for one point type with unit propagation over the
/// point-type clauses. Variables are decided in carrier order, `false` first.
pub(crate) struct PointSolver {
    n: usize,
    clauses: Vec<Vec<Lit>>,
    occurs: Vec<Vec<u32>>,
    value: Vec<i8>,
    trail: Vec<Elem>,
    pub nodes: u64,
    cap: u64,
}

impl PointSolver {
    pub fn new(alg: &PartialAlgebra, cap: u64) -> Self {
        let n = alg.len();
        let clauses: Vec<Vec<Lit>> = clauses(alg).into_iter().map(|c| c.lits).collect();
        let mut occurs = vec![Vec::new(); 2 * n];
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                occurs[l.index()].push(i as u32);
            }
        }
        PointSolver {
            n,
            clauses,
            occurs,
            value: vec![UNSET; n],
            trail: Vec::with_capacity(n),
            nodes: 0,
            cap,
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        match self.value[l.var()] {
            UNSET => UNSET,
            v => (v == 1) as i8 ^ l.is_neg() as i8,
        }
    }

    fn set(&mut self, l: Lit) {
        self.value[l.var()] = if l.is_neg() { 0 } else { 1 };
        self.trail.push(l.var());
    }

    /// Makes `l` true and propagates. Returns false on conflict.
    fn assign(&mut self, l: Lit) -> bool {
        match self.lit_value(l) {
            1 => return true,
            0 => return false,
            _ => {}
        }
        let start = self.trail.len();
        self.set(l);
        let mut head = start;
        while head < self.trail.len() {
            let v = self.trail[head];
            head += 1;
            let falsified = if self.value[v] == 1 { Lit::neg(v) } else { Lit::pos(v) };
            for k in 0..self.occurs[falsified.index()].len() {
                let ci = self.occurs[falsified.index()][k] as usize;
                let mut unit = None;
                let mut open = 0;
                let mut satisfied = false;
                for &q in &self.clauses[ci] {
                    match self.lit_value(q) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        UNSET => {
                            open += 1;
                            unit = Some(q);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unit) {
                    (0, _) => return false,
                    (1, Some(q)) => self.set(q),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.value[v] = UNSET;
        }
    }

    /// Searches for a point type making every literal of `forced` true.
    pub fn solve(&mut self, forced: &[Lit]) -> Found {
        self.undo(0);
        for &l in forced {
            if !self.assign(l) {
                self.undo(0);
                return Found::Unsat;
            }
        }
        let r = self.dfs(0);
        self.undo(0);
        r
    }

    fn dfs(&mut self, from: usize) -> Found {
        let Some(v) = (from..self.n).find(|&v| self.value[v] == UNSET) else {
            let mut u = FixedBitSet::with_capacity(self.n);
            for v in 0..self.n {
                u.set(v, self.value[v] == 1);
            }
            return Found::Point(u);
        };
        for l in [Lit::neg(v), Lit::pos(v)] {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Found::Capped;
            }
            let mark = self.trail.len();
            if self.assign(l) {
                match self.dfs(v + 1) {
                    Found::Unsat => {}
                    other => return other,
                }
            }
            self.undo(mark);
        }
        Found::Unsat
    }
}

fn attempts(req: Requirement) -> Vec<Vec<Lit>> {
    match req {
        Requirement::JoinUndefined(a, b) => vec![vec![Lit::pos(a), Lit::pos(b)]],
        Requirement::MinusUndefined(a, b) => vec![vec![Lit::pos(b), Lit::neg(a)]],
        Requirement::Separate(a, b) => vec![
            vec![Lit::pos(a), Lit::neg(b)],
            vec![Lit::neg(a), Lit::pos(b)],
        ],
    }
}

/// Decides representability by sets with the default node cap.
pub fn decide_representable(alg: &PartialAlgebra) -> SearchOutcome {
    decide_representable_with(alg, &SearchConfig::default())
}

/// Visits the required pairs in carrier order. A pair already met by an
/// earlier point reuses it (lowest index); otherwise a new point is searched
/// for. Composition imposes no condition on points.
pub fn decide_representable_with(alg: &PartialAlgebra, cfg: &SearchConfig) -> SearchOutcome {
    let mut solver = PointSolver::new(alg, cfg.node_cap);
    let mut cert = RepCertificate::default();
    for req in requirements(alg) {
        if let Some(p) = cert.point_types.iter().position(|u| req.satisfied_by(u)) {
            cert.record(req, p);
            continue;
        }
        let mut found = None;
        for forced in attempts(req) {
            match solver.solve(&forced) {
                Found::Point(u) => {
                    found = Some(u);
                    break;
                }
                Found::Unsat => {}
                Found::Capped => {
                    return SearchOutcome::Inconclusive {
                        nodes: solver.nodes,
                    }
                }
            }
        }
        match found {
            Some(u) => {
                cert.point_types.push(u);
                cert.record(req, cert.point_types.len() - 1);
            }
            None => {
                return SearchOutcome::Refuted(Refutation {
                    requirement: Some(req),
                    reason: req.describe(alg),
                })
            }
        }
    }
    SearchOutcome::Certified(cert)
}
