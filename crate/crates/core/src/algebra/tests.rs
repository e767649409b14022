use super::*;
use crate::Error;

fn sig(symbols: &[Symbol]) -> Signature {
    Signature::from_symbols(symbols.iter().copied())
}

#[test]
fn power_set_validates() {
    let alg = power_set(3, Signature::JOIN).unwrap();
    assert_eq!(alg.len(), 8);
    let doc = AlgebraDoc::from_algebra(&alg);
    assert!(validate(&doc, ValidateOptions::default()).is_empty());
}

#[test]
fn conflicting_entries_are_reported() {
    let text = r#"{"carrier":["a","b","c","d"],"signature":["join"],
        "join":[["a","b","c"],["a","b","d"]]}"#;
    let doc = parse_algebra_doc(text).unwrap();
    let report = validate(&doc, ValidateOptions::default());
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].kind, ViolationKind::NotSingleValued);
    assert!(report.violations[0].message.starts_with("join not single-valued at (a,b)"));
}

#[test]
fn dangling_elements_are_reported() {
    let text = r#"{"carrier":["a"],"signature":["join"],"join":[["a","a","b"]]}"#;
    let err = parse_algebra(text).unwrap_err();
    assert!(err.to_string().contains("dangling element"), "{err}");
}

#[test]
fn minimal_document_parses() {
    let alg = parse_algebra(r#"{"carrier":["a"],"signature":["join"],"join":[]}"#).unwrap();
    assert_eq!(alg.len(), 1);
    assert_eq!(alg.join(0, 0), None);
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_algebra("{\"carrier\":[\"a\"],\n\"signature\":[\"plus\"]}").unwrap_err();
    match err {
        Error::Parse { line, .. } => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    let err = parse_algebra("{\"carrier\":[\"a\",\n \"a\"],\"signature\":[\"join\"]}").unwrap_err();
    match err {
        Error::Parse { line, column, message } => {
            assert_eq!((line, column), (2, 2));
            assert!(message.contains("duplicate"));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse_algebra(r#"{"carrier":[],"signature":["join"],"extra":1}"#),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn degenerate_signatures_need_the_bypass() {
    let text = r#"{"carrier":["z"],"signature":["zero"],"zero":"z"}"#;
    let err = parse_algebra(text).unwrap_err();
    assert!(err.to_string().contains("degenerate"));
    let alg = parse_algebra_with(text, ValidateOptions::permissive()).unwrap();
    assert_eq!(alg.zero(), Some(0));
}

#[test]
fn comp_must_be_constant_zero() {
    let s = sig(&[Symbol::Join, Symbol::Comp, Symbol::Zero]);
    let mut b = AlgebraBuilder::new(["z", "a"], s);
    b.zero(0).join(0, 0, 0).join(0, 1, 1).join(1, 0, 1);
    for x in 0..2 {
        for y in 0..2 {
            b.comp(x, y, if (x, y) == (1, 1) { 1 } else { 0 });
        }
    }
    let err = b.build().unwrap_err();
    assert!(err.to_string().contains("constant zero"));
    let s = sig(&[Symbol::Join, Symbol::Comp]);
    let err = AlgebraBuilder::new(["a"], s).build().unwrap_err();
    assert!(err.to_string().contains("comp requires zero"));
}

#[test]
fn meet_must_be_total() {
    let mut b = AlgebraBuilder::new(["a", "b"], sig(&[Symbol::Meet]));
    b.meet(0, 0, 0).meet(1, 1, 1).meet(0, 1, 0);
    let Err(Error::Invalid(report)) = b.build() else { panic!() };
    assert!(report.has(ViolationKind::NotTotal));
}

#[test]
fn round_trip_is_stable() {
    let s = sig(&[Symbol::Join, Symbol::Minus, Symbol::Meet, Symbol::Zero]);
    let alg = power_set(2, s).unwrap();
    let text = serialize_algebra(&alg);
    let back = parse_algebra(&text).unwrap();
    assert_eq!(alg, back);
    assert_eq!(serialize_algebra(&back), text);
}

#[test]
fn empty_algebra_round_trips() {
    let alg = AlgebraBuilder::new(Vec::<String>::new(), Signature::JOIN).build().unwrap();
    assert!(alg.is_empty());
    assert_eq!(parse_algebra(&serialize_algebra(&alg)).unwrap(), alg);
}

#[test]
fn identity_quotient_is_isomorphic() {
    let alg = power_set(3, Signature::JOIN.with(Symbol::Zero)).unwrap();
    let q = quotient(&alg, &Congruence::identity(alg.len())).unwrap();
    assert_eq!(q, alg);
}

#[test]
fn merging_a_point_with_a_pair_is_not_a_congruence() {
    let alg = power_set(2, Signature::JOIN).unwrap();
    let cong = Congruence::from_names(&alg, &[vec!["{}"], vec!["{1}", "{1,2}"], vec!["{2}"]]).unwrap();
    let violations = check_congruence(&alg, &cong);
    assert!(!violations.is_empty());
    assert!(violations.iter().any(|v| v.message.contains("definedness")));
    assert!(matches!(quotient(&alg, &cong), Err(Error::NotCongruence(_))));
}

#[test]
fn partitions_must_cover_disjointly() {
    assert!(Congruence::new(3, vec![vec![0, 1]]).is_err());
    assert!(Congruence::new(2, vec![vec![0, 1], vec![1]]).is_err());
    assert!(Congruence::new(2, vec![vec![0], vec![]]).is_err());
}

#[test]
fn lesssim_on_power_set_is_inclusion() {
    let fam = power_family(2);
    let alg = set_algebra(&fam, Signature::JOIN).unwrap();
    let ord = lesssim(&alg).unwrap();
    for (i, x) in fam.iter().enumerate() {
        for (j, y) in fam.iter().enumerate() {
            assert_eq!(ord.le(i, j), x & !y == 0);
        }
    }
    assert!(ord.is_partial_order());
}

#[test]
fn lesssim_on_a_point_is_reflexive_only() {
    let alg = AlgebraBuilder::new(["a"], Signature::JOIN).build().unwrap();
    let ord = lesssim(&alg).unwrap();
    assert_eq!(ord.pairs(), vec![(0, 0)]);
}

#[test]
fn lesssim_on_power_set_minus_top() {
    let alg = power_set_without(3, &[0b111], Signature::JOIN).unwrap();
    let ord = lesssim(&alg).unwrap();
    assert!(ord.is_partial_order());
    // Brute force: x ≲ y iff x = y or y \ x is in the family and x, y\x disjoint.
    let fam: Vec<u64> = (0..7).collect();
    for (i, x) in fam.iter().enumerate() {
        for (j, y) in fam.iter().enumerate() {
            let expect = i == j || (x & !y == 0 && fam.contains(&(y & !x)));
            assert_eq!(ord.le(i, j), expect);
        }
    }
    assert_eq!(ord.supremum(&[1, 2]), Some(3));
    assert_eq!(ord.supremum(&[1, 2, 4]), None);
}

#[test]
fn totalise_small_cases() {
    let empty = AlgebraBuilder::new(Vec::<String>::new(), Signature::JOIN).build().unwrap();
    let t = totalise(&empty);
    assert_eq!(t.size(), 1);
    assert_eq!(t.apply(BinOp::Join, 0, 0), 0);

    let one = AlgebraBuilder::new(["a"], Signature::JOIN).build().unwrap();
    let t = totalise(&one);
    assert_eq!(t.size(), 2);
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(t.apply(BinOp::Join, a, b), t.infinity());
        }
    }
    assert_eq!(detotalise(&t).unwrap(), one);
}

#[test]
fn detotalise_rejects_holes_and_leaks() {
    let names = vec!["a".to_string()];
    let t = TotalAlgebra::from_tables(names.clone(), Signature::JOIN, vec![(BinOp::Join, vec![Some(1), None, Some(1), Some(1)])], None);
    assert!(matches!(detotalise(&t), Err(Error::Detotalise(_))));
    let t = TotalAlgebra::from_tables(names, Signature::JOIN, vec![(BinOp::Join, vec![Some(1), Some(0), Some(1), Some(1)])], None);
    assert!(matches!(detotalise(&t), Err(Error::Detotalise(_))));
}

#[test]
fn reduct_and_induced() {
    let s = sig(&[Symbol::Join, Symbol::Minus, Symbol::Zero]);
    let alg = power_set(2, s).unwrap();
    let r = alg.reduct(Signature::JOIN).unwrap();
    assert_eq!(r.signature(), Signature::JOIN);
    assert_eq!(r.zero(), None);
    assert!(r.minus(3, 1).is_none());
    assert!(alg.reduct(sig(&[Symbol::Meet])).is_err());

    let sub = alg.induced(&[0, 1, 3]).unwrap();
    assert_eq!(sub.names(), &["{}", "{1}", "{1,2}"]);
    assert_eq!(sub.join(1, 1), None);
    assert_eq!(sub.minus(2, 1), None);
    assert!(alg.is_closed(&[0, 1, 2, 3]));
    assert!(!alg.is_closed(&[0, 1, 2]));
}
