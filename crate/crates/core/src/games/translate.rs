use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::formula::{and, eq, ff, forall, implies, not, rel, tt, Formula, Rel, Term, F};
use crate::algebra::BinOp;
use crate::error::{Error, Result};

/// The subterms of a quantifier-free formula with their variable names.
#[derive(Debug, Clone)]
pub struct SubtermVars {
    /// Subterms, children before parents.
    pub terms: Vec<Term>,
    /// `names[i]` is the variable standing for `terms[i]`; a variable names itself.
    pub names: Vec<String>,
}

impl SubtermVars {
    fn index(&self, t: &Term) -> usize {
        self.terms.iter().position(|s| s == t).expect("collected subterm")
    }
}

/// A set of subterms closed downwards and avoiding `∞`: the terms taken to
/// be defined. Indices refer to [`SubtermVars::terms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedSet {
    pub members: BTreeSet<usize>,
}

fn collect_terms(f: &Formula, out: &mut Vec<Term>) -> Result<()> {
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Eq(a, b) => {
            a.collect_subterms(out);
            b.collect_subterms(out);
            Ok(())
        }
        Formula::Rel(..) => Err(Error::Formula("the formula to translate must not use relation symbols".into())),
        Formula::Not(g) => collect_terms(g, out),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().try_for_each(|g| collect_terms(g, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_terms(a, out)?;
            collect_terms(b, out)
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            Err(Error::Formula("the formula to translate must be quantifier-free".into()))
        }
    }
}

/// Names every subterm, choosing fresh names that avoid the formula's variables.
pub fn subterm_vars(psi: &Formula) -> Result<SubtermVars> {
    let mut terms = Vec::new();
    collect_terms(psi, &mut terms)?;
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for t in &terms {
        t.collect_vars(&mut taken);
    }
    let mut next = 0;
    let mut names = Vec::new();
    for t in &terms {
        if let Term::Var(x) = t {
            names.push(x.clone());
            continue;
        }
        let name = loop {
            let cand = format!("t{next}");
            next += 1;
            if !taken.contains(&cand) {
                break cand;
            }
        };
        names.push(name);
    }
    Ok(SubtermVars { terms, names })
}

/// Every grounded subset of the subterm variables, in a fixed order.
pub fn grounded_sets(sv: &SubtermVars) -> Vec<GroundedSet> {
    let mut out = Vec::new();
    let mut chosen = vec![false; sv.terms.len()];
    grounded_rec(sv, 0, &mut chosen, &mut out);
    out
}

fn grounded_rec(sv: &SubtermVars, i: usize, chosen: &mut Vec<bool>, out: &mut Vec<GroundedSet>) {
    if i == sv.terms.len() {
        out.push(GroundedSet {
            members: (0..chosen.len()).filter(|&k| chosen[k]).collect(),
        });
        return;
    }
    let allowed = match &sv.terms[i] {
        Term::Infinity => false,
        Term::Op(_, a, b) => chosen[sv.index(a)] && chosen[sv.index(b)],
        Term::Var(_) | Term::Zero => true,
    };
    chosen[i] = false;
    grounded_rec(sv, i + 1, chosen, out);
    if allowed {
        chosen[i] = true;
        grounded_rec(sv, i + 1, chosen, out);
        chosen[i] = false;
    }
}

fn fresh(sv: &SubtermVars, base: &str) -> String {
    let mut k = 0;
    loop {
        let cand = if k == 0 { base.to_string() } else { format!("{base}{k}") };
        if !sv.names.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// The graph atom `R(x, y, z)` of an operation.
fn graph(op: BinOp, x: Term, y: Term, z: Term) -> F {
    match op {
        BinOp::Join => rel(Rel::J, x, y, z),
        BinOp::Minus => rel(Rel::K, x, y, z),
        BinOp::Meet | BinOp::Comp => eq(Term::op(op, x, y), z),
    }
}

/// `φ(D)`: defined subterms take the value of their operation, undefined ones
/// with defined arguments have no value at all.
pub fn phi(sv: &SubtermVars, d: &GroundedSet, w: &str) -> F {
    let var = |i: usize| Term::var(sv.names[i].clone());
    let mut parts = Vec::new();
    for (i, t) in sv.terms.iter().enumerate() {
        match t {
            Term::Op(op, a, b) => {
                let (ia, ib) = (sv.index(a), sv.index(b));
                if !(d.members.contains(&ia) && d.members.contains(&ib)) {
                    continue;
                }
                if d.members.contains(&i) {
                    parts.push(graph(*op, var(ia), var(ib), var(i)));
                } else {
                    parts.push(forall(&[w], not(graph(*op, var(ia), var(ib), Term::var(w)))));
                }
            }
            Term::Zero => {
                if d.members.contains(&i) {
                    parts.push(eq(var(i), Term::Zero));
                } else {
                    parts.push(forall(&[w], not(eq(Term::var(w), Term::Zero))));
                }
            }
            Term::Var(_) | Term::Infinity => {}
        }
    }
    and(parts)
}

/// `ψ_D`: each equation replaced by `v_s = v_t`, `⊤` or `⊥`.
pub fn psi_d(sv: &SubtermVars, d: &GroundedSet, psi: &Formula) -> F {
    let mut cache = HashMap::new();
    replace(sv, d, psi, &mut cache)
}

fn replace(sv: &SubtermVars, d: &GroundedSet, f: &Formula, cache: &mut HashMap<*const Formula, F>) -> F {
    let key = f as *const Formula;
    if let Some(g) = cache.get(&key) {
        return g.clone();
    }
    let out = match f {
        Formula::True => tt(),
        Formula::False => ff(),
        Formula::Eq(s, t) => {
            let (is, it) = (sv.index(s), sv.index(t));
            match (d.members.contains(&is), d.members.contains(&it)) {
                (true, true) => eq(Term::var(sv.names[is].clone()), Term::var(sv.names[it].clone())),
                (false, false) => tt(),
                _ => ff(),
            }
        }
        Formula::Not(g) => not(replace(sv, d, g, cache)),
        Formula::And(gs) => Arc::new(Formula::And(gs.iter().map(|g| replace(sv, d, g, cache)).collect())),
        Formula::Or(gs) => Arc::new(Formula::Or(gs.iter().map(|g| replace(sv, d, g, cache)).collect())),
        Formula::Implies(a, b) => implies(replace(sv, d, a, cache), replace(sv, d, b, cache)),
        Formula::Iff(a, b) => Arc::new(Formula::Iff(replace(sv, d, a, cache), replace(sv, d, b, cache))),
        Formula::Rel(..) | Formula::Forall(..) | Formula::Exists(..) => unreachable!("rejected by subterm_vars"),
    };
    cache.insert(key, out.clone());
    out
}

/// Translates a quantifier-free formula over the totalised signature into a
/// relational formula with `A⁺ ⊨ ψ ⇔ A ⊨ ψ⁻` for every nonempty `A`:
/// the conjunction over grounded `D` of `φ(D) → ψ_D`.
pub fn translate_to_relational(psi: &Formula) -> Result<F> {
    let sv = subterm_vars(psi)?;
    let w = fresh(&sv, "w");
    let parts = grounded_sets(&sv)
        .iter()
        .map(|d| implies(phi(&sv, d, &w), psi_d(&sv, d, psi)))
        .collect();
    Ok(and(parts))
}
