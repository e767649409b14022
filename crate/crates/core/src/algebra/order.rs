use super::partial::{Elem, PartialAlgebra};
use crate::error::{Error, Result};

/// The relation `a ≲ b` iff `a = b` or `a ⊔ c = b` for some `c`, with its
/// order-theoretic properties computed by brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LessSim {
    n: usize,
    rel: Vec<bool>,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl LessSim {
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.rel[a * self.n + b]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.le(a, b))
            .collect()
    }

    pub fn is_partial_order(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }

    pub fn upper_bounds(&self, set: &[Elem]) -> Vec<Elem> {
        (0..self.n)
            .filter(|&u| set.iter().all(|&s| self.le(s, u)))
            .collect()
    }

    /// The least upper bound of `set`, if one exists. When several upper
    /// bounds are below all others (possible only without antisymmetry) the
    /// first in carrier order is returned.
    pub fn supremum(&self, set: &[Elem]) -> Option<Elem> {
        let ub = self.upper_bounds(set);
        ub.iter()
            .copied()
            .find(|&u| ub.iter().all(|&v| self.le(u, v)))
    }
}

pub fn lesssim(alg: &PartialAlgebra) -> Result<LessSim> {
    if !alg.signature().has_join {
        return Err(Error::precondition("the order ≲ needs join in the signature"));
    }
    let n = alg.len();
    let mut rel = vec![false; n * n];
    for a in 0..n {
        rel[a * n + a] = true;
    }
    for (a, _, b) in alg.triples(super::BinOp::Join) {
        rel[a * n + b] = true;
    }
    let le = |a: usize, b: usize| rel[a * n + b];
    let reflexive = (0..n).all(|a| le(a, a));
    let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))));
    let transitive = (0..n).all(|a| {
        (0..n).all(|b| !le(a, b) || (0..n).all(|c| !le(b, c) || le(a, c)))
    });
    Ok(LessSim {
        n,
        rel,
        reflexive,
        antisymmetric,
        transitive,
    })
}
