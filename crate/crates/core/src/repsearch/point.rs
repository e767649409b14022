use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{BinOp, Elem, PartialAlgebra};

/// A literal over membership variables: element `e` is (or is not) in the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Lit(u32);

impl Lit {
    pub fn pos(e: Elem) -> Lit {
        Lit((e as u32) << 1)
    }

    pub fn neg(e: Elem) -> Lit {
        Lit((e as u32) << 1 | 1)
    }

    pub fn var(self) -> Elem {
        (self.0 >> 1) as Elem
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn holds_in(self, u: &FixedBitSet) -> bool {
        u.contains(self.var()) != self.is_neg()
    }
}

/// The membership condition a clause comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// `a, b ∈ U` is forbidden when `a ⊔ b` is defined.
    PairwiseIncombinable,
    /// `a ⊔ b ∈ U` implies `a ∈ U` or `b ∈ U`.
    Prime,
    /// `a ∈ U` or `b ∈ U` implies `a ⊔ b ∈ U`.
    BiClosed,
    /// `b` and `a ⊖ b` are never both in `U`.
    MinusDisjoint,
    /// `a ∈ U` implies `b ∈ U` or `a ⊖ b ∈ U`.
    MinusCovered,
    /// `b ∈ U` or `a ⊖ b ∈ U` implies `a ∈ U`.
    MinusInside,
    /// `a · b ∈ U` iff `a ∈ U` and `b ∈ U`.
    MeetFilter,
    /// The zero is never in `U`.
    ZeroExcluded,
}

impl ClauseKind {
    pub fn describe(self) -> &'static str {
        match self {
            ClauseKind::PairwiseIncombinable => "pairwise incombinable",
            ClauseKind::Prime => "join-prime",
            ClauseKind::BiClosed => "bi-closed",
            ClauseKind::MinusDisjoint => "minus disjointness",
            ClauseKind::MinusCovered => "minus covering",
            ClauseKind::MinusInside => "minus inclusion",
            ClauseKind::MeetFilter => "meet filter condition",
            ClauseKind::ZeroExcluded => "zero excluded",
        }
    }
}

/// One clause of the point-type condition, with the operation instance it
/// was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Clause {
    pub kind: ClauseKind,
    pub instance: (Elem, Elem, Elem),
    pub lits: Vec<Lit>,
}

/// Every clause of the point-type condition for the algebra's signature, in
/// the fixed reporting order: join clauses (incombinable, prime, bi-closed),
/// then minus, meet and zero.
pub(crate) fn clauses(alg: &PartialAlgebra) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut push = |kind, instance, lits: Vec<Lit>| out.push(Clause { kind, instance, lits });
    let join: Vec<_> = alg.triples(BinOp::Join).collect();
    for &(a, b, c) in &join {
        let lits = if a == b {
            vec![Lit::neg(a)]
        } else {
            vec![Lit::neg(a), Lit::neg(b)]
        };
        push(ClauseKind::PairwiseIncombinable, (a, b, c), lits);
    }
    for &(a, b, c) in &join {
        push(ClauseKind::Prime, (a, b, c), vec![Lit::neg(c), Lit::pos(a), Lit::pos(b)]);
    }
    for &(a, b, c) in &join {
        push(ClauseKind::BiClosed, (a, b, c), vec![Lit::neg(a), Lit::pos(c)]);
        push(ClauseKind::BiClosed, (a, b, c), vec![Lit::neg(b), Lit::pos(c)]);
    }
    let minus: Vec<_> = alg.triples(BinOp::Minus).collect();
    for &(a, b, c) in &minus {
        let lits = if b == c {
            vec![Lit::neg(b)]
        } else {
            vec![Lit::neg(b), Lit::neg(c)]
        };
        push(ClauseKind::MinusDisjoint, (a, b, c), lits);
    }
    for &(a, b, c) in &minus {
        push(ClauseKind::MinusCovered, (a, b, c), vec![Lit::neg(a), Lit::pos(b), Lit::pos(c)]);
    }
    for &(a, b, c) in &minus {
        push(ClauseKind::MinusInside, (a, b, c), vec![Lit::neg(b), Lit::pos(a)]);
        push(ClauseKind::MinusInside, (a, b, c), vec![Lit::neg(c), Lit::pos(a)]);
    }
    for (a, b, c) in alg.triples(BinOp::Meet) {
        push(ClauseKind::MeetFilter, (a, b, c), vec![Lit::neg(c), Lit::pos(a)]);
        push(ClauseKind::MeetFilter, (a, b, c), vec![Lit::neg(c), Lit::pos(b)]);
        push(ClauseKind::MeetFilter, (a, b, c), vec![Lit::neg(a), Lit::neg(b), Lit::pos(c)]);
    }
    if let Some(z) = alg.zero() {
        push(ClauseKind::ZeroExcluded, (z, z, z), vec![Lit::neg(z)]);
    }
    out
}

/// The first clause a candidate point violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointViolation {
    pub kind: ClauseKind,
    pub instance: (Elem, Elem, Elem),
    pub message: String,
}

impl fmt::Display for PointViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn describe_violation(alg: &PartialAlgebra, kind: ClauseKind, (a, b, c): (Elem, Elem, Elem)) -> String {
    let n = |e| alg.name(e);
    let detail = match kind {
        ClauseKind::PairwiseIncombinable => format!("{} and {} are in U but {} ⊔ {} is defined", n(a), n(b), n(a), n(b)),
        ClauseKind::Prime => format!("{} = {} ⊔ {} is in U but neither argument is", n(c), n(a), n(b)),
        ClauseKind::BiClosed => format!("an argument of {} ⊔ {} is in U but {} is not", n(a), n(b), n(c)),
        ClauseKind::MinusDisjoint => format!("{} and {} = {} ⊖ {} are both in U", n(b), n(c), n(a), n(b)),
        ClauseKind::MinusCovered => format!("{} is in U but neither {} nor {} ⊖ {} is", n(a), n(b), n(a), n(b)),
        ClauseKind::MinusInside => format!("{} ⊖ {} = {} has a part in U but {} is not", n(a), n(b), n(c), n(a)),
        ClauseKind::MeetFilter => format!("membership of {} · {} = {} disagrees with its arguments", n(a), n(b), n(c)),
        ClauseKind::ZeroExcluded => format!("the zero {} is in U", n(a)),
    };
    format!("{} violated: {detail}", kind.describe())
}

/// Checks whether `u` is a valid point type for the algebra's signature,
/// reporting the first violated clause.
pub fn check_point_type(alg: &PartialAlgebra, u: &FixedBitSet) -> Result<(), PointViolation> {
    for clause in clauses(alg) {
        if !clause.lits.iter().any(|l| l.holds_in(u)) {
            return Err(PointViolation {
                kind: clause.kind,
                instance: clause.instance,
                message: describe_violation(alg, clause.kind, clause.instance),
            });
        }
    }
    Ok(())
}

/// A subset of the carrier as a bit set sized to the carrier.
pub fn subset(alg: &PartialAlgebra, members: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut u = FixedBitSet::with_capacity(alg.len());
    for e in members {
        u.insert(e);
    }
    u
}
