use std::collections::BTreeMap;

use super::*;
use crate::algebra::{power_set, Signature, Symbol};

fn valid(text: &str) -> bool {
    decide_validity(&parse_equation(text).unwrap())
}

#[test]
fn parses_terms_and_equations() {
    let t = parse_term("a + 0").unwrap();
    assert_eq!(t.nodes(), [Node::Var(0), Node::Zero, Node::Join(0, 1)]);
    let e = parse_equation("(a + b) + c = a + (b + c)").unwrap();
    assert_eq!(e.to_string(), "a + b + c = a + (b + c)");
    assert_eq!(e.lhs.depth(), 2);
    assert_ne!(e.lhs, e.rhs);
    assert_eq!(parse_term("((x1))").unwrap().to_string(), "x1");
}

#[test]
fn syntax_errors_carry_positions() {
    for (text, column) in [("a + + b", 5), ("a + (b", 5), ("a)", 2), ("a = ", 5), ("a + B", 5), ("a b", 3)] {
        match parse_term(text).or_else(|_| parse_equation(text).map(|e| e.lhs)) {
            Err(crate::Error::Parse { column: c, .. }) => assert_eq!(c, column, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(parse_equation("a + b").is_err());
    assert!(parse_equation("a = b = c").is_err());
}

#[test]
fn evaluates_in_the_power_set() {
    let alg = power_set(2, Signature::JOIN.with(Symbol::Zero)).unwrap();
    let el = |n: &str| alg.element(n).unwrap();
    let asg = |pairs: &[(&str, &str)]| -> BTreeMap<String, usize> {
        pairs.iter().map(|&(v, e)| (v.to_string(), el(e))).collect()
    };
    let t = parse_term("a + b").unwrap();
    assert_eq!(eval_term(&alg, &t, &asg(&[("a", "{1}"), ("b", "{2}")])).unwrap(), Some(el("{1,2}")));
    let aa = parse_term("a + a").unwrap();
    assert_eq!(eval_term(&alg, &aa, &asg(&[("a", "{1}")])).unwrap(), None);
    let a0 = parse_term("a + 0").unwrap();
    assert_eq!(eval_term(&alg, &a0, &asg(&[("a", "{1}")])).unwrap(), Some(el("{1}")));
    assert!(eval_term(&alg, &t, &asg(&[("a", "{1}")])).is_err());
    let no_zero = power_set(1, Signature::JOIN).unwrap();
    assert!(eval_term(&no_zero, &a0, &BTreeMap::from([("a".to_string(), 0)])).is_err());
}

#[test]
fn validity_of_the_standard_laws() {
    assert!(valid("a + b = b + a"));
    assert!(valid("(a + b) + c = a + (b + c)"));
    assert!(valid("a + 0 = a"));
    assert!(valid("a + a = a + (a + 0)"));
    assert!(!valid("a + a = a"));
    assert!(!valid("a + b = a"));
    assert!(!valid("a = b"));
    assert!(valid("0 = 0 + 0"));
}

#[test]
fn countermodels_for_invalid_laws() {
    let aa = parse_equation("a + a = a").unwrap();
    let cm = find_countermodel(&aa, 1).unwrap().unwrap();
    assert_eq!(cm.algebra.name(cm.assignment["a"]), "{1}");
    assert_eq!((cm.lhs, cm.rhs), (None, Some(1)));

    let comm = parse_equation("a + b = b + a").unwrap();
    assert!(find_countermodel(&comm, 3).unwrap().is_none());

    // a ↦ ∅, b ↦ ∅ satisfies it; the next assignment a ↦ {1}, b ↦ ∅ does too;
    // the first failure is a ↦ ∅, b ↦ {1}.
    let ab = parse_equation("a + b = a").unwrap();
    let cm = find_countermodel(&ab, 1).unwrap().unwrap();
    assert_eq!(cm.algebra.name(cm.assignment["a"]), "{}");
    assert_eq!(cm.algebra.name(cm.assignment["b"]), "{1}");
    assert!(find_countermodel(&ab, 0).is_err());
}

#[test]
fn long_chains_do_not_recurse() {
    let n = 200_000;
    let text = (0..n).map(|i| format!("x{}", i % 7)).collect::<Vec<_>>().join(" + ");
    let t = parse_term(&text).unwrap();
    assert_eq!(t.depth(), n - 1);
    let nested = format!("{}a{}", "(".repeat(n), ")".repeat(n));
    assert_eq!(parse_term(&nested).unwrap().len(), 1);
    let eq = Equation::new(t.clone(), t);
    assert!(decide_validity(&eq));
    assert!(eq.to_string().len() > n);
}

#[test]
fn join_all_matches_parsing() {
    let parts = ["a", "0", "b"].map(|s| parse_term(s).unwrap());
    let t = Term::join_all(parts).unwrap();
    assert_eq!(t, parse_term("a + 0 + b").unwrap());
    let u = Term::join(Term::var("a"), Term::join(Term::zero(), Term::var("a")));
    assert_eq!(u.to_string(), "a + (0 + a)");
    assert_eq!(u.occurrences(), [2]);
}
