use std::io::Cursor;

use super::formula::{and, eq, exists, forall, implies, j, neq, not, Term};
use super::*;
use crate::algebra::{power_set, power_set_without, totalise, AlgebraBuilder, Signature};

fn seven() -> crate::algebra::PartialAlgebra {
    power_set_without(3, &[0b111], Signature::JOIN).unwrap()
}

fn asg(pairs: &[(&str, usize)]) -> Assignment {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[test]
fn mu_zero_matches_its_definition() {
    let f = gen_mu(0, &["v"], &["w"]).unwrap();
    assert_eq!(f.to_string(), "¬∃c_0 J(v,v,c_0) ∧ v ≠ w");
    assert_eq!(gen_rho(0).to_string(), "⊤");
}

#[test]
fn mu_two_tree_size_matches_hand_count() {
    // μ_0(V, W) has |V|² conjuncts ¬∃c J(v,v',c) of three nodes and |V||W|
    // conjuncts v ≠ w of two. μ_{n+1}(V, W) is ∀ over a conjunction of 3|V|
    // implications; each holds an atom and either a disjunction of two μ_n
    // or a single μ_n.
    fn mu0(k: u128, w: u128) -> u128 {
        let parts = k * k * 3 + k * w * 2;
        if k * k + k * w == 1 { parts } else { parts + 1 }
    }
    fn mu(n: u32, k: u128, w: u128) -> u128 {
        if n == 0 {
            return mu0(k, w);
        }
        let sub = mu(n - 1, k + 1, w);
        let split = 1 + 1 + (1 + 2 * sub);
        let single = 1 + 1 + sub;
        let conj = k * split + 2 * k * single;
        1 + if 3 * k == 1 { conj } else { conj + 1 }
    }
    let f = gen_mu(2, &["v"], &["w"]).unwrap();
    assert_eq!(f.tree_size(), mu(2, 1, 1));
}

#[test]
fn formula_printing_round_trips_through_the_parser() {
    for f in [gen_mu(2, &["v"], &["w"]).unwrap(), gen_rho(2)] {
        let text = f.to_string();
        let back = parse_formula(&text).unwrap();
        assert_eq!(back.to_string(), text);
    }
    let g = parse_formula("forall a, b. J(a,b,c) -> ~(a = b) | a * b = 0").unwrap();
    let h = parse_formula("∀a,b (J(a,b,c) → a ≠ b ∨ a · b = 0)").unwrap();
    assert_eq!(g.to_string(), h.to_string());
}

#[test]
fn parser_reports_positions() {
    match parse_formula("a = b ∧ ") {
        Err(crate::Error::Parse { column, .. }) => assert_eq!(column, 9),
        other => panic!("{other:?}"),
    }
    assert!(parse_formula("J(a,b)").is_err());
    assert!(parse_term("a + + b").is_err());
}

#[test]
fn join_atoms_follow_the_table() {
    let alg = power_set(2, Signature::JOIN).unwrap();
    let (e, a, b, ab) = (0, 1, 2, 3);
    let f = j("x", "y", "z");
    assert!(eval_formula(&alg, &f, &asg(&[("x", a), ("y", b), ("z", ab)])).unwrap());
    assert!(!eval_formula(&alg, &f, &asg(&[("x", a), ("y", a), ("z", a)])).unwrap());
    assert!(eval_formula(&alg, &f, &asg(&[("x", e), ("y", a), ("z", a)])).unwrap());
    // Single-valuedness holds in every algebra.
    let sv = forall(
        &["x", "y", "u", "v"],
        implies(and(vec![j("x", "y", "u"), j("x", "y", "v")]), eq(Term::var("u"), Term::var("v"))),
    );
    assert!(holds(&alg, &sv).unwrap());
    assert!(holds(&seven(), &sv).unwrap());
}

#[test]
fn missing_variables_and_symbols_are_reported() {
    let alg = power_set(1, Signature::JOIN).unwrap();
    assert!(eval_formula(&alg, &j("x", "y", "z"), &asg(&[("x", 0)])).is_err());
    assert!(eval_formula(&alg, &eq(Term::meet(Term::var("x"), Term::var("x")), Term::var("x")), &asg(&[("x", 0)])).is_err());
    assert!(eval_formula(&alg, &eq(Term::join(Term::var("x"), Term::var("x")), Term::var("x")), &asg(&[("x", 0)])).is_err());
}

#[test]
fn rho_separates_power_set_from_seven() {
    let p2 = power_set(2, Signature::JOIN).unwrap();
    for n in 0..=4 {
        assert!(holds(&p2, &gen_rho(n)).unwrap(), "ρ_{n} on the power set of {{1,2}}");
    }
    let alg = seven();
    let failing = (1..=7).find(|&n| !holds(&alg, &gen_rho(n)).unwrap());
    assert!(failing.is_some());
    assert_eq!(failing, first_forall_win(&alg).unwrap());
}

#[test]
fn forall_wins_on_two_singletons() {
    let alg = seven();
    let p = Position::new(alg.len(), &[alg.element("{1}").unwrap(), alg.element("{2}").unwrap()], &[]);
    assert!(win_for_forall(&alg, &p));
    let q = Position::new(alg.len(), &[1], &[1]);
    assert!(win_for_forall(&alg, &q));
}

#[test]
fn one_element_algebra_game() {
    let alg = AlgebraBuilder::new(["a"], Signature::JOIN).build().unwrap();
    let p = Position::new(1, &[0], &[]);
    assert!(legal_moves(&alg, Some(&p), 1).is_empty());
    let sol = decide_game(&alg, Rounds::Omega).unwrap();
    assert_eq!(sol.winner, Player::Exists);
    assert_eq!(sol.strategy.entries.len(), 1);
}

#[test]
fn omega_game_matches_long_finite_game_and_is_monotone() {
    for alg in [seven(), power_set(3, Signature::JOIN).unwrap()] {
        let mut solver = GameSolver::new(&alg).unwrap();
        let omega = solver.exists_wins(Rounds::Omega).unwrap();
        let long = solver.exists_wins(Rounds::Finite(alg.len() + 1)).unwrap();
        assert_eq!(omega, long);
        let mut lost = false;
        for n in 0..=alg.len() + 1 {
            let e = solver.exists_wins(Rounds::Finite(n)).unwrap();
            assert!(!(lost && e), "∃ cannot win a longer game after losing a shorter one");
            lost |= !e;
        }
    }
    assert_eq!(decide_game(&seven(), Rounds::Omega).unwrap().winner, Player::Forall);
    assert_eq!(
        decide_game(&power_set(3, Signature::JOIN).unwrap(), Rounds::Omega).unwrap().winner,
        Player::Exists
    );
}

#[test]
fn translation_of_trivial_equation() {
    let psi = parse_formula("a = a").unwrap();
    let sv = subterm_vars(&psi).unwrap();
    assert_eq!(grounded_sets(&sv).len(), 2);
    let t = translate_to_relational(&psi).unwrap();
    let alg = seven();
    assert!(holds(&alg, &t).unwrap());
}

#[test]
fn undefined_subterm_gives_bottom_branch() {
    let psi = parse_formula("a + b = c").unwrap();
    let sv = subterm_vars(&psi).unwrap();
    let ab = sv.terms.iter().position(|t| matches!(t, Term::Op(..))).unwrap();
    let d = grounded_sets(&sv)
        .into_iter()
        .find(|d| d.members.len() == 3 && !d.members.contains(&ab))
        .unwrap();
    assert_eq!(psi_d(&sv, &d, &psi).to_string(), "⊥");
}

#[test]
fn translation_agrees_on_seven() {
    let alg = seven();
    let t = totalise(&alg);
    for text in ["a + b = inf", "a + b = b + a", "(a + b) + c = a + (b + c)", "a + b = a -> b = inf"] {
        let psi = parse_formula(text).unwrap();
        let minus = translate_to_relational(&psi).unwrap();
        assert_eq!(holds_total(&t, &psi).unwrap(), holds(&alg, &minus).unwrap(), "{text}");
    }
}

#[test]
fn quantified_formula_is_not_translated() {
    let f = exists(&["x"], eq(Term::var("x"), Term::var("x")));
    assert!(translate_to_relational(&f).is_err());
    let g = not(neq(Term::var("x"), Term::Infinity));
    assert!(translate_to_relational(&g).is_ok());
}

#[test]
fn interactive_play_against_the_engine() {
    let alg = seven();
    let input = Cursor::new("init {1} {2}\nsplit {1} {2}\next {1} {2}\next {1} {2}\next {1} {2}\next {1} {2}\next {1} {2}\n");
    let mut out = Vec::new();
    let t = play_interactive(&alg, Player::Forall, None, input, &mut out).unwrap();
    assert!(matches!(t.status, PlayStatus::Won(_) | PlayStatus::InputClosed), "{t:?}");

    let p = power_set(2, Signature::JOIN).unwrap();
    let picks = "pick {1}\n".repeat(10);
    let t = play_interactive(&p, Player::Exists, None, Cursor::new(picks), Vec::new()).unwrap();
    assert!(!t.lines.is_empty());

    let t = play_interactive(&alg, Player::Forall, None, Cursor::new(""), Vec::new()).unwrap();
    assert_eq!(t.status, PlayStatus::InputClosed);
}
