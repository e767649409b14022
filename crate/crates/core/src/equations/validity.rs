use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::term::{Equation, Term};
use crate::algebra::{power_set, Elem, PartialAlgebra, Signature, Symbol};
use crate::error::{Error, Result};

/// Whether `s = t` holds in every disjoint-union algebra of sets with zero:
/// both sides must have the same variables and the same repeated variables.
/// Zero leaves are not variables. Linear in the length of the equation.
pub fn decide_validity(eq: &Equation) -> bool {
    let (l, r) = (&eq.lhs, &eq.rhs);
    if l.var_names().len() != r.var_names().len() {
        return false;
    }
    let (occ_l, occ_r) = (l.occurrences(), r.occurrences());
    let index: HashMap<&str, usize> = r.var_names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    l.var_names().iter().enumerate().all(|(i, name)| match index.get(name.as_str()) {
        Some(&j) => (occ_l[i] > 1) == (occ_r[j] > 1),
        None => false,
    })
}

/// A falsifying assignment into a power set under disjoint union.
#[derive(Debug, Clone)]
pub struct Countermodel {
    pub algebra: PartialAlgebra,
    pub assignment: BTreeMap<String, Elem>,
    pub lhs: Option<Elem>,
    pub rhs: Option<Elem>,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, &e)| format!("{v} ↦ {}", self.algebra.name(e)))
            .collect();
        let side = |s: Option<Elem>| s.map_or("undefined".to_string(), |e| self.algebra.name(e).to_string());
        write!(f, "{}; left {}, right {}", parts.join(", "), side(self.lhs), side(self.rhs))
    }
}

/// Largest base accepted by [`find_countermodel`].
pub const COUNTERMODEL_BASE_CAP: usize = 16;

fn eval_mask(t: &Term, value: &dyn Fn(&str) -> u64) -> Option<u64> {
    let vals: Vec<u64> = t.var_names().iter().map(|n| value(n)).collect();
    t.fold(|v| Some(vals[v]), Some(0), |a, b| (a & b == 0).then_some(a | b))
}

/// Searches every assignment of subsets of `{1, …, size_bound}` for one where
/// exactly one side is defined or both are defined and differ. Variables are
/// taken in name order, the first varying fastest. `None` only means there is
/// no countermodel over this base.
pub fn find_countermodel(eq: &Equation, size_bound: usize) -> Result<Option<Countermodel>> {
    if size_bound == 0 {
        return Err(Error::precondition("the base size must be at least 1"));
    }
    let vars = eq.var_names();
    let total_bits = size_bound * vars.len();
    if size_bound > COUNTERMODEL_BASE_CAP || total_bits > 32 {
        return Err(Error::TooLarge {
            what: "countermodel search space (base size × variables)",
            size: total_bits,
            cap: 32,
        });
    }
    let width = 1u64 << size_bound;
    let mut choice = vec![0u64; vars.len()];
    for code in 0..1u64 << total_bits {
        let mut c = code;
        for slot in choice.iter_mut() {
            *slot = c % width;
            c /= width;
        }
        let value = |name: &str| choice[vars.binary_search_by(|v| v.as_str().cmp(name)).unwrap()];
        let l = eval_mask(&eq.lhs, &value);
        let r = eval_mask(&eq.rhs, &value);
        if l != r {
            // Power-set elements are listed in counting order, so a mask is its own index.
            let algebra = power_set(size_bound, Signature::JOIN.with(Symbol::Zero))?;
            let assignment = vars.iter().cloned().zip(choice.iter().map(|&m| m as Elem)).collect();
            return Ok(Some(Countermodel {
                algebra,
                assignment,
                lhs: l.map(|m| m as Elem),
                rhs: r.map(|m| m as Elem),
            }));
        }
    }
    Ok(None)
}

