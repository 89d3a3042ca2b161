use flagchern::cohomology::*;
use flagchern::groebner::OrderKind;
use flagchern::polyring::{Polynomial, Rational};
use num_bigint::BigInt;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn case_ids_round_trip() {
    for s in ["a-full:4", "b-full:2", "c-full:3", "so6-groebner", "proj-tangent:2"] {
        let id: CaseId = s.parse().unwrap();
        assert_eq!(id.to_string(), s);
    }
    assert_eq!("fd-3-1-2".parse::<CaseId>().unwrap(), CaseId::So6Groebner);
    for bad in ["a-full:0", "a-full:7", "b-full:1", "proj-tangent:0", "nope"] {
        assert!(bad.parse::<CaseId>().is_err(), "{bad}");
    }
}

#[test]
fn default_cases_pass_under_both_orders() {
    for id in default_cases() {
        for order in [OrderKind::Lex, OrderKind::GrevLex] {
            let r = verify_case(id, order).unwrap();
            assert!(r.ok(), "{}", r.to_text());
            assert_eq!(r.quotient_dimension, Some(r.expected_dimension));
        }
    }
}

#[test]
fn certificates_do_not_depend_on_the_order() {
    for id in default_cases() {
        let case = PresentationCase::build(id).unwrap();
        let certs: Vec<bool> = [OrderKind::Lex, OrderKind::GrLex, OrderKind::GrevLex]
            .iter()
            .map(|&o| top_class_certificate(&case, &case.basis(o).unwrap()).is_ok())
            .collect();
        assert_eq!(certs, vec![true; 3], "{id}");
    }
}

#[test]
fn so6_top_class() {
    let r = verify_case(CaseId::So6Groebner, OrderKind::Lex).unwrap();
    assert_eq!(r.quotient_dimension, Some(24));
    assert!(r.checks.iter().any(|(name, ok)| *ok && name.contains("c5 of the canonical structure is 3 times")));
}

#[test]
fn projectivized_tangent_certificates() {
    let want = [q(1, 6), q(-1, 20), q(1, 70), q(-1, 252)];
    for (n, w) in (1..=4).zip(want) {
        let r = verify_case(CaseId::ProjTangent(n), OrderKind::GrevLex).unwrap();
        assert_eq!(r.certificate, Some(w), "n = {n}");
        assert_eq!(r.quotient_dimension, Some((n + 2) * (n + 1)));
    }
}

#[test]
fn complete_homogeneous_small() {
    let names = Polynomial::default_names(3);
    let h2 = complete_homogeneous(3, &[0, 1], 2, 1);
    assert_eq!(h2, Polynomial::parse("x1^2 + x1*x2 + x2^2", &names).unwrap());
    let h2sq = complete_homogeneous(3, &[0, 2], 2, 2);
    assert_eq!(h2sq, Polynomial::parse("x1^4 + x1^2*x3^2 + x3^4", &names).unwrap());
}

#[test]
fn a_full_relations_fail_on_a_wrong_ideal() {
    let mut case = PresentationCase::build(CaseId::AFull(3)).unwrap();
    let gb = case.basis(OrderKind::GrevLex).unwrap();
    assert!(verify_relations(&case, &gb).unwrap());
    case.relations.push(Polynomial::var(case.nvars(), 0));
    assert!(!verify_relations(&case, &gb).unwrap());
}
