use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::algebra::{close_family, power_set, set_algebra, AlgebraBuilder, Signature, Symbol};
use crate::repsearch::{decide_representable, verify_representation};

fn sig(id: SuiteId) -> Signature {
    id.signature()
}

fn p2(id: SuiteId) -> PartialAlgebra {
    power_set(2, sig(id)).unwrap()
}

/// Each image has as many points as the set named by its element has members.
fn images_are_faithful_to_sizes(alg: &PartialAlgebra, rep: &SetRepresentation) -> bool {
    alg.elements().all(|e| rep.image(e).count_ones(..) == alg.name(e).matches(|c: char| c.is_ascii_digit()).count())
}

#[test]
fn power_set_with_join_satisfies_its_suite() {
    let alg = p2(SuiteId::AxJMeetZero);
    assert!(check_axioms(&alg, SuiteId::AxJMeetZero).unwrap().is_empty());
    let rep = birkhoff_representation(&alg, SuiteId::AxJMeetZero).unwrap();
    assert_eq!(rep.base_size(), 2);
    assert!(verify_representation(&alg, &rep).is_ok());
    assert!(images_are_faithful_to_sizes(&alg, &rep));
}

#[test]
fn signature_must_match_suite() {
    let alg = p2(SuiteId::AxJMeetZero);
    assert!(check_axioms(&alg, SuiteId::AxKMeetZero).is_err());
    assert!(check_axioms(&alg, SuiteId::AxJMeet).is_err());
    assert_eq!(SuiteId::for_signature(alg.signature()), Some(SuiteId::AxJMeetZero));
    assert_eq!("axkmeet".parse::<SuiteId>().unwrap(), SuiteId::AxKMeet);
}

#[test]
fn broken_distributivity_is_reported() {
    // Diamond 0 < a, b < t with meet as in the lattice, but a ⊔ b = a.
    let mut b = AlgebraBuilder::new(["0", "a", "b", "t"], SuiteId::AxJMeetZero.signature());
    b.zero(0);
    for x in 0..4 {
        b.join(x, 0, x).join(0, x, x);
    }
    b.join(1, 2, 1).join(2, 1, 1);
    let meet = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];
    for (x, row) in meet.iter().enumerate() {
        for (y, &m) in row.iter().enumerate() {
            b.meet(x, y, m);
        }
    }
    let alg = b.build().unwrap();
    let v = check_axioms(&alg, SuiteId::AxJMeetZero).unwrap();
    let d = v.iter().find(|v| v.axiom == "· distributes over ⊔").expect("distributivity fails");
    assert_eq!(d.assignment.len(), 4);
    assert!(birkhoff_representation(&alg, SuiteId::AxJMeetZero).is_err());
}

#[test]
fn minus_domain_axiom_holds_on_power_set() {
    let alg = power_set(2, Signature::MINUS.with(Symbol::Meet)).unwrap();
    let v = check_axioms(&alg, SuiteId::AxKMeet).unwrap();
    assert!(v.iter().all(|v| v.axiom != "domain of ⊖"), "{v:?}");
    assert!(v.is_empty());
}

#[test]
fn minus_suite_with_zero_is_represented_by_minus_prime_filters() {
    let alg = p2(SuiteId::AxKMeetZero);
    let rep = birkhoff_representation(&alg, SuiteId::AxKMeetZero).unwrap();
    assert!(verify_representation(&alg, &rep).is_ok());
    assert_eq!(rep.base_size(), 2);
}

#[test]
fn prime_filters_of_power_set_are_the_point_filters() {
    let alg = p2(SuiteId::AxJMeetZero);
    let fs = enumerate_prime_filters(&alg, PrimeKind::Join).unwrap();
    let got: Vec<String> = fs.iter().map(|f| f.describe(&alg)).collect();
    assert_eq!(got, ["{{1}, {1,2}}", "{{2}, {1,2}}"]);
    // Oracle: all 16 subsets checked directly against the definitions.
    let mut oracle = Vec::new();
    for mask in 1u32..16 {
        let inn = |e: usize| mask >> e & 1 == 1;
        let filter = alg
            .elements()
            .all(|a| alg.elements().all(|b| inn(alg.meet(a, b)) == (inn(a) && inn(b))));
        let proper = mask != 15;
        let prime = alg
            .triples(crate::algebra::BinOp::Join)
            .all(|(a, b, c)| !inn(c) || inn(a) || inn(b));
        if filter && proper && prime {
            oracle.push(mask);
        }
    }
    assert_eq!(oracle.len(), fs.len());
}

#[test]
fn proper_filters_avoid_zero() {
    for id in [SuiteId::AxJMeetZero, SuiteId::AxKMeetZero] {
        let alg = power_set(3, sig(id)).unwrap();
        let z = alg.zero().unwrap();
        for f in enumerate_prime_filters(&alg, id.prime_kind()).unwrap() {
            assert!(!f.contains(z));
        }
    }
}

#[test]
fn one_element_semilattice_has_no_proper_filter() {
    let mut b = AlgebraBuilder::new(["a"], Signature::from_symbols([Symbol::Meet]));
    b.meet(0, 0, 0);
    let alg = b.build().unwrap();
    assert!(enumerate_prime_filters(&alg, PrimeKind::Join).unwrap().is_empty());
}

#[test]
fn filter_enumeration_respects_the_cap() {
    let alg = p2(SuiteId::AxJMeetZero);
    assert!(matches!(
        enumerate_prime_filters_capped(&alg, PrimeKind::Join, 3),
        Err(crate::Error::TooLarge { .. })
    ));
}

#[test]
fn chain_without_joins_gets_the_down_set_map() {
    let mut b = AlgebraBuilder::new(["a", "b", "c", "d"], SuiteId::AxJMeet.signature());
    for x in 0..4 {
        for y in 0..4 {
            b.meet(x, y, x.min(y));
        }
    }
    let alg = b.build().unwrap();
    assert!(check_axioms(&alg, SuiteId::AxJMeet).unwrap().is_empty());
    let rep = birkhoff_representation(&alg, SuiteId::AxJMeet).unwrap();
    assert_eq!(rep.base, alg.names());
    assert!(verify_representation(&alg, &rep).is_ok());
    assert_eq!(rep.image(3).count_ones(..), 4);
}

#[test]
fn empty_algebra_with_minus_gets_the_empty_map() {
    let alg = AlgebraBuilder::new(Vec::<String>::new(), SuiteId::AxKMeet.signature())
        .build()
        .unwrap();
    assert!(check_axioms(&alg, SuiteId::AxKMeet).unwrap().is_empty());
    let rep = birkhoff_representation(&alg, SuiteId::AxKMeet).unwrap();
    assert_eq!(rep, SetRepresentation::empty());
}

#[test]
fn separating_filter_of_singletons() {
    let alg = p2(SuiteId::AxJMeetZero);
    let (one, two) = (alg.element("{1}").unwrap(), alg.element("{2}").unwrap());
    let f = maximal_separating_filter(&alg, one, two, PrimeKind::Join).unwrap();
    assert_eq!(f.describe(&alg), "{{1}, {1,2}}");
    assert!(f.proper && f.join_prime);
    let top = alg.element("{1,2}").unwrap();
    assert!(maximal_separating_filter(&alg, one, top, PrimeKind::Join).is_err());

    let k = p2(SuiteId::AxKMeetZero);
    let f = maximal_separating_filter(&k, one, two, PrimeKind::Minus).unwrap();
    assert!(f.minus_prime);
}

fn random_family(rng: &mut StdRng, bits: usize) -> Vec<u64> {
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| rng.gen_range(0..1u64 << bits)).collect()
}

/// Genuine set algebras for a suite, closed under its operations, with at
/// most six elements.
fn set_corpus(id: SuiteId, seed: u64, count: usize) -> Vec<PartialAlgebra> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let fam = close_family(&random_family(&mut rng, 3), sig(id));
        if fam.len() <= 6 {
            out.push(set_algebra(&fam, sig(id)).unwrap());
        }
    }
    out
}

#[test]
fn set_algebras_satisfy_their_suites_and_are_rebuilt() {
    for id in SuiteId::ALL {
        for alg in set_corpus(id, 7, 40) {
            let v = check_axioms(&alg, id).unwrap();
            assert!(v.is_empty(), "{id} on {alg:?}: {v:?}");
            let rep = birkhoff_representation(&alg, id).unwrap();
            let report = verify_representation(&alg, &rep);
            assert!(report.is_ok(), "{id} on {alg:?}: {report:?}");
            for a in alg.elements() {
                for b in alg.elements() {
                    let mut both = rep.image(a).clone();
                    both.intersect_with(rep.image(b));
                    assert_eq!(&both, rep.image(alg.meet(a, b)));
                }
            }
        }
    }
}

/// Drops one symmetric pair of partial-operation entries, which usually
/// breaks representability while keeping the tables well formed.
fn perturb(alg: &PartialAlgebra, rng: &mut StdRng) -> Option<PartialAlgebra> {
    let op = if alg.has(Symbol::Join) {
        crate::algebra::BinOp::Join
    } else {
        crate::algebra::BinOp::Minus
    };
    let triples: Vec<_> = alg.triples(op).collect();
    if triples.is_empty() {
        return None;
    }
    let (a0, b0, _) = triples[rng.gen_range(0..triples.len())];
    let mut b = AlgebraBuilder::new(alg.names().to_vec(), alg.signature());
    for (a, c, d) in triples {
        let dropped = (a, c) == (a0, b0) || (op == crate::algebra::BinOp::Join && (c, a) == (a0, b0));
        if !dropped {
            b.set(op, a, c, d);
        }
    }
    for x in alg.elements() {
        for y in alg.elements() {
            b.meet(x, y, alg.meet(x, y));
        }
    }
    if let Some(z) = alg.zero() {
        b.zero(z);
    }
    b.build().ok()
}

#[test]
fn filter_construction_agrees_with_search() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut seen = [0usize; 2];
    for id in SuiteId::ALL {
        let mut corpus = set_corpus(id, 3, 20);
        let extra: Vec<_> = corpus.iter().filter_map(|a| perturb(a, &mut rng)).collect();
        corpus.extend(extra);
        for alg in corpus {
            let built = birkhoff_representation(&alg, id)
                .map(|rep| verify_representation(&alg, &rep).is_ok())
                .unwrap_or(false);
            let searched = decide_representable(&alg);
            assert!(!matches!(searched, crate::repsearch::SearchOutcome::Inconclusive { .. }));
            assert_eq!(built, searched.is_certified(), "{id} on {alg:?}");
            seen[built as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
