//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use partalg::algebra::{set_algebra, AlgebraBuilder, BinOp, Elem, PartialAlgebra, Signature, Symbol};
use partalg::games::formula::{and, eq, implies, not, or, Term, F};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng(seed: u64) -> StdRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// A join-only algebra from a table of `n * n` optional results.
pub fn join_table(n: usize, table: &[Option<Elem>]) -> PartialAlgebra {
    let mut b = AlgebraBuilder::new(names(n), Signature::JOIN);
    for a in 0..n {
        for c in 0..n {
            if let Some(r) = table[a * n + c] {
                b.join(a, c, r);
            }
        }
    }
    b.build().expect("join tables are always valid")
}

/// A random commutative partial join table on `n` elements.
pub fn random_commutative(rng: &mut StdRng, n: usize) -> PartialAlgebra {
    let density = rng.gen_range(0.1..0.7);
    let mut table = vec![None; n * n];
    for a in 0..n {
        for b in a..n {
            if rng.gen_bool(density) {
                let c = rng.gen_range(0..n);
                table[a * n + b] = Some(c);
                table[b * n + a] = Some(c);
            }
        }
    }
    join_table(n, &table)
}

/// A random family of distinct subsets of `{1..bits}`, as a set algebra
/// with disjoint union, and with zero when the empty set is present.
pub fn random_set_algebra(rng: &mut StdRng, bits: usize, size: usize) -> PartialAlgebra {
    let mut masks: Vec<u64> = (0..1u64 << bits).collect();
    masks.shuffle(rng);
    masks.truncate(size.min(masks.len()));
    masks.sort_unstable();
    let sig = if masks[0] == 0 && rng.gen_bool(0.5) {
        Signature::JOIN.with(Symbol::Zero)
    } else {
        Signature::JOIN
    };
    set_algebra(&masks, sig).expect("distinct masks")
}

/// A mix of set families with their disjoint unions, the same with one join
/// forgotten, and random commutative tables, of sizes `1..=max`.
pub fn random_algebra(rng: &mut StdRng, max: usize) -> PartialAlgebra {
    let n = rng.gen_range(1..=max);
    match rng.gen_range(0..3) {
        0 => random_set_algebra(rng, 3, n.min(8)),
        1 => {
            // Perturb a set algebra by forgetting one join.
            let alg = random_set_algebra(rng, 3, n.min(8));
            let triples: Vec<_> = alg.triples(BinOp::Join).collect();
            if triples.is_empty() {
                return alg;
            }
            let (a, b, _) = triples[rng.gen_range(0..triples.len())];
            let n = alg.len();
            let mut table = vec![None; n * n];
            for (x, y, z) in triples {
                if (x, y) != (a, b) && (x, y) != (b, a) {
                    table[x * n + y] = Some(z);
                }
            }
            join_table(n, &table)
        }
        _ => random_commutative(rng, n),
    }
}

/// Representability by the definition: every subset `S` of the carrier that
/// could be the set of elements containing a point is one point, and the
/// algebra is representable exactly when these points already work.
///
/// Defined joins hold pointwise, and fewer points can only merge images or
/// make the images of an undefined join disjoint, so the full set of point
/// types is the best candidate.
pub fn brute_representable(alg: &PartialAlgebra) -> bool {
    let n = alg.len();
    assert!(n <= 16, "oracle is exponential");
    let zero = alg.zero();
    let joins: Vec<(Elem, Elem, Elem)> = alg.triples(BinOp::Join).collect();
    let points: Vec<u32> = (0..1u32 << n)
        .filter(|&s| {
            let has = |e: Elem| s >> e & 1 == 1;
            zero.is_none_or(|z| !has(z))
                && joins
                    .iter()
                    .all(|&(a, b, c)| !(has(a) && has(b)) && has(c) == (has(a) || has(b)))
        })
        .collect();
    // images[e] is the set of point indices containing e.
    let images: Vec<Vec<bool>> = (0..n)
        .map(|e| points.iter().map(|&s| s >> e & 1 == 1).collect())
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            if images[a] == images[b] {
                return false;
            }
        }
    }
    // An undefined join needs a point in both images.
    for a in 0..n {
        for b in 0..n {
            if alg.join(a, b).is_none() && !(0..points.len()).any(|p| images[a][p] && images[b][p]) {
                return false;
            }
        }
    }
    true
}

/// Every join-only algebra on `n` elements, one per isomorphism class.
pub fn iso_reduced_join_algebras(n: usize) -> Vec<PartialAlgebra> {
    let cells = n * n;
    let total = (n + 1).pow(cells as u32);
    let perms = permutations(n);
    let mut out = Vec::new();
    let decode = |mut code: usize| -> Vec<Option<Elem>> {
        (0..cells)
            .map(|_| {
                let d = code % (n + 1);
                code /= n + 1;
                d.checked_sub(1)
            })
            .collect()
    };
    let encode = |t: &[Option<Elem>]| -> usize {
        t.iter().rev().fold(0, |acc, d| acc * (n + 1) + d.map_or(0, |e| e + 1))
    };
    for code in 0..total {
        let table = decode(code);
        let canonical = perms.iter().all(|p| {
            let mut img = vec![None; cells];
            for a in 0..n {
                for b in 0..n {
                    img[p[a] * n + p[b]] = table[a * n + b].map(|c| p[c]);
                }
            }
            encode(&img) >= code
        });
        if canonical {
            out.push(join_table(n, &table));
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// A random term of depth at most `depth` over `vars`, join and `∞`.
pub fn random_term(rng: &mut StdRng, vars: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.35) {
        return if rng.gen_bool(0.1) {
            Term::Infinity
        } else {
            Term::var(vars[rng.gen_range(0..vars.len())])
        };
    }
    Term::join(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1))
}

/// A random quantifier-free formula whose terms have depth at most `depth`.
pub fn random_qf_formula(rng: &mut StdRng, vars: &[&str], depth: usize, size: usize) -> F {
    if size <= 1 {
        return eq(random_term(rng, vars, depth), random_term(rng, vars, depth));
    }
    let left = rng.gen_range(1..size);
    let a = random_qf_formula(rng, vars, depth, left);
    let b = random_qf_formula(rng, vars, depth, size - left);
    match rng.gen_range(0..4) {
        0 => and(vec![a, b]),
        1 => or(vec![a, b]),
        2 => implies(a, b),
        _ => not(and(vec![a, b])),
    }
}
