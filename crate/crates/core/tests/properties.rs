//! Invariants checked on generated inputs.

mod common;

use common::join_table;
use partalg::algebra::{detotalise, parse_algebra, serialize_algebra, totalise, PartialAlgebra};
use partalg::equations::{decide_validity, parse_equation, Equation, Term};
use partalg::games::{GameSolver, Rounds};
use partalg::repsearch::{base_bound, build_representation, decide_representable, verify_representation, SearchOutcome};
use proptest::prelude::*;

/// Commutative partial join tables on one to five elements.
fn join_algebra() -> impl Strategy<Value = PartialAlgebra> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(proptest::option::weighted(0.4, 0..n), n * (n + 1) / 2).prop_map(move |upper| {
            let mut table = vec![None; n * n];
            let mut it = upper.into_iter();
            for a in 0..n {
                for b in a..n {
                    let c = it.next().unwrap();
                    table[a * n + b] = c;
                    table[b * n + a] = c;
                }
            }
            join_table(n, &table)
        })
    })
}

fn algebra_and_permutation() -> impl Strategy<Value = (PartialAlgebra, Vec<usize>)> {
    join_algebra().prop_flat_map(|alg| {
        let perm = Just((0..alg.len()).collect::<Vec<_>>()).prop_shuffle();
        (Just(alg), perm)
    })
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::zero()),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| (inner.clone(), inner).prop_map(|(s, t)| Term::join(s, t)))
}

fn verdict(alg: &PartialAlgebra) -> bool {
    match decide_representable(alg) {
        SearchOutcome::Certified(_) => true,
        SearchOutcome::Refuted(_) => false,
        SearchOutcome::Inconclusive { .. } => panic!("inconclusive on {alg:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn documents_round_trip(alg in join_algebra()) {
        prop_assert!(parse_algebra(&serialize_algebra(&alg)).unwrap() == alg);
    }

    #[test]
    fn totalising_round_trips(alg in join_algebra()) {
        prop_assert!(detotalise(&totalise(&alg)).unwrap() == alg);
    }

    #[test]
    fn representability_is_invariant_under_renumbering((alg, perm) in algebra_and_permutation()) {
        prop_assert_eq!(verdict(&alg), verdict(&alg.permuted(&perm)));
    }

    #[test]
    fn certificates_build_small_representations(alg in join_algebra()) {
        if let SearchOutcome::Certified(cert) = decide_representable(&alg) {
            prop_assert!(cert.point_types.len() <= base_bound(&alg));
            let rep = build_representation(&alg, &cert).unwrap();
            prop_assert!(verify_representation(&alg, &rep).is_ok());
        }
    }

    #[test]
    fn omega_game_decides_representability(alg in join_algebra()) {
        let mut solver = GameSolver::new(&alg).unwrap();
        prop_assert_eq!(solver.exists_wins(Rounds::Omega).unwrap(), verdict(&alg));
    }

    #[test]
    fn longer_games_are_harder_for_exists(alg in join_algebra()) {
        let mut solver = GameSolver::new(&alg).unwrap();
        for n in 0..=alg.len() {
            let longer = solver.exists_wins(Rounds::Finite(n + 1)).unwrap();
            prop_assert!(!longer || solver.exists_wins(Rounds::Finite(n)).unwrap());
        }
    }

    #[test]
    fn equations_print_and_parse_back(s in term(), t in term()) {
        let eq = Equation::new(s, t);
        prop_assert_eq!(parse_equation(&eq.to_string()).unwrap(), eq);
    }

    #[test]
    fn validity_is_an_equivalence(s in term(), t in term(), u in term()) {
        prop_assert!(decide_validity(&Equation::new(s.clone(), s.clone())));
        let st = decide_validity(&Equation::new(s.clone(), t.clone()));
        prop_assert_eq!(st, decide_validity(&Equation::new(t.clone(), s.clone())));
        if st && decide_validity(&Equation::new(t.clone(), u.clone())) {
            prop_assert!(decide_validity(&Equation::new(s, u)));
        }
    }

    #[test]
    fn joins_commute_and_absorb_zero(s in term(), t in term()) {
        let st = Term::join(s.clone(), t.clone());
        prop_assert!(decide_validity(&Equation::new(st.clone(), Term::join(t, s.clone()))));
        prop_assert!(decide_validity(&Equation::new(Term::join(s.clone(), Term::zero()), s)));
        prop_assert!(decide_validity(&Equation::new(Term::join(Term::zero(), st.clone()), st)));
    }
}
