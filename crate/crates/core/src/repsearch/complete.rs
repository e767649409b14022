use fixedbitset::FixedBitSet;

use super::representation::SetRepresentation;
use crate::algebra::{Elem, PartialAlgebra};
use crate::error::{Error, Result};

/// Default largest subset size examined by [`verify_lesssim_complete`].
pub const DEFAULT_COMPLETE_CAP: usize = 6;

/// Which operation defines combinability and the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessMode {
    /// `s ⊔ t` defined for distinct members; `a ≲ b` iff `a = b` or `a ⊔ c = b`.
    Join,
    /// `u ⊖ s = t` for some `u`; `a ≲' b` iff `a = b` or `b ⊖ a` is defined.
    Minus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    /// Number of pairwise-combinable subsets that had a supremum.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CompletenessReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Setup {
    n: usize,
    le: Vec<bool>,
    combinable: Vec<bool>,
}

impl Setup {
    fn new(alg: &PartialAlgebra, mode: CompletenessMode) -> Self {
        let n = alg.len();
        let mut le = vec![false; n * n];
        let mut combinable = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        match mode {
            CompletenessMode::Join => {
                for (a, b, c) in alg.triples(crate::algebra::BinOp::Join) {
                    le[a * n + c] = true;
                    combinable[a * n + b] = true;
                }
            }
            CompletenessMode::Minus => {
                for (u, s, t) in alg.triples(crate::algebra::BinOp::Minus) {
                    le[s * n + u] = true;
                    combinable[s * n + t] = true;
                }
            }
        }
        // Combinability is required in both orders for distinct members.
        let sym: Vec<bool> = (0..n * n)
            .map(|i| combinable[i] && combinable[(i % n) * n + i / n])
            .collect();
        Setup { n, le, combinable: sym }
    }

    fn le(&self, a: Elem, b: Elem) -> bool {
        self.le[a * self.n + b]
    }

    fn supremum(&self, set: &[Elem]) -> Option<Elem> {
        let ub: Vec<Elem> = (0..self.n)
            .filter(|&u| set.iter().all(|&s| self.le(s, u)))
            .collect();
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.le(u, v)))
    }
}

/// Checks that the representation sends the supremum of every
/// pairwise-combinable subset of size at most `cap` to the union of the
/// members' images.
pub fn verify_lesssim_complete(
    alg: &PartialAlgebra,
    rep: &SetRepresentation,
    cap: usize,
    mode: CompletenessMode,
) -> Result<CompletenessReport> {
    if cap < 2 {
        return Err(Error::precondition("the subset-size cap must be at least 2"));
    }
    let needed = match mode {
        CompletenessMode::Join => alg.signature().has_join,
        CompletenessMode::Minus => alg.signature().has_minus,
    };
    if !needed {
        return Err(Error::precondition("the completeness mode's operation is not in the signature"));
    }
    if rep.images.len() != alg.len() {
        return Err(Error::precondition("representation does not match the algebra"));
    }
    let setup = Setup::new(alg, mode);
    let mut report = CompletenessReport::default();
    let mut chosen = Vec::with_capacity(cap);
    for a in 0..setup.n {
        chosen.push(a);
        extend(alg, rep, &setup, cap, &mut chosen, &mut report);
        chosen.pop();
    }
    Ok(report)
}

fn extend(
    alg: &PartialAlgebra,
    rep: &SetRepresentation,
    setup: &Setup,
    cap: usize,
    chosen: &mut Vec<Elem>,
    report: &mut CompletenessReport,
) {
    if chosen.len() >= 2 {
        if let Some(sup) = setup.supremum(chosen) {
            report.checked += 1;
            let mut union = FixedBitSet::with_capacity(rep.base.len());
            for &s in chosen.iter() {
                union.union_with(&rep.images[s]);
            }
            union.grow(rep.images[sup].len());
            let mut target = rep.images[sup].clone();
            target.grow(union.len());
            if union != target {
                let names: Vec<&str> = chosen.iter().map(|&s| alg.name(s)).collect();
                report.failures.push(format!(
                    "supremum {} of {{{}}} is not the union of their images",
                    alg.name(sup),
                    names.join(", ")
                ));
            }
        }
    }
    if chosen.len() == cap {
        return;
    }
    let last = *chosen.last().expect("nonempty");
    for c in last + 1..setup.n {
        if chosen.iter().all(|&s| setup.combinable[s * setup.n + c]) {
            chosen.push(c);
            extend(alg, rep, setup, cap, chosen, report);
            chosen.pop();
        }
    }
}
