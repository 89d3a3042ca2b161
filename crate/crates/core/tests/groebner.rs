use std::collections::HashSet;
use std::sync::Arc;

use flagchern::groebner::*;
use flagchern::polyring::Polynomial;
use flagchern::rootsys::{Family, RootSystem};

fn names() -> Vec<String> {
    vec!["x".into(), "y".into(), "z".into()]
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s, &names()).unwrap()
}

fn lex() -> MonomialOrder {
    MonomialOrder::new(OrderKind::Lex, 3)
}

fn as_set(v: Vec<Polynomial>) -> HashSet<String> {
    v.into_iter().map(|g| g.to_text(&names())).collect()
}

#[test]
fn so6_basis() {
    let gb = buchberger(&[p("x^2+y^2+z^2"), p("x^4+y^4+z^4"), p("x*y*z")], &lex()).unwrap();
    let expected = ["x^2+y^2+z^2", "x*y*z", "y^4+y^2*z^2+z^4", "y^3*z+y*z^3", "z^5"];
    assert_eq!(as_set(gb.generators()), as_set(expected.iter().map(|s| p(s)).collect()));
    assert_eq!(gb.quotient_dimension(), Some(24));
}

#[test]
fn trivial_bases() {
    assert_eq!(buchberger(&[p("x")], &lex()).unwrap().generators(), vec![p("x")]);
    let gb = buchberger(&[p("x-y"), p("y-z")], &lex()).unwrap();
    assert_eq!(as_set(gb.generators()), as_set(vec![p("x-z"), p("y-z")]));
}

#[test]
fn idempotent_and_order_independent() {
    let gens = vec![p("x^2+y^2+z^2"), p("x^4+y^4+z^4"), p("x*y*z")];
    for kind in [OrderKind::Lex, OrderKind::GrLex, OrderKind::GrevLex] {
        let order = MonomialOrder::new(kind, 3);
        let gb = buchberger(&gens, &order).unwrap();
        let again = buchberger(&gb.generators(), &order).unwrap();
        assert_eq!(gb.generators(), again.generators());
        let mut rev = gens.clone();
        rev.reverse();
        assert_eq!(buchberger(&rev, &order).unwrap().generators(), gb.generators());
        assert_eq!(gb.quotient_dimension(), Some(24));
    }
}

#[test]
fn normal_form_examples() {
    let two = MonomialOrder::new(OrderKind::Lex, 2);
    let n2: Vec<String> = vec!["x".into(), "y".into()];
    let gb = buchberger(&[Polynomial::parse("x^2+y^2", &n2).unwrap()], &two).unwrap();
    let nf = gb.normal_form(&Polynomial::parse("x^2", &n2).unwrap()).unwrap();
    assert_eq!(nf, Polynomial::parse("-y^2", &n2).unwrap());
    let so6 = buchberger(&[p("x^2+y^2+z^2"), p("x^4+y^4+z^4"), p("x*y*z")], &lex()).unwrap();
    assert!(so6.normal_form(&p("x^2+y^2+z^2")).unwrap().is_zero());
}

#[test]
fn quotient_ring_matches_direct_reduction() {
    let gb = buchberger(&[p("x+y+z"), p("x^2+y^2+z^2"), p("x^3+y^3+z^3")], &lex()).unwrap();
    let gb = Arc::new(gb);
    let mut q = QuotientRing::new(Arc::clone(&gb));
    let f = p("(x-y)^2*(x+2*z) - 3*y*z^2");
    assert_eq!(q.reduce(&f), gb.normal_form(&f).unwrap());
    let g = p("x*y - z^2");
    let direct = gb.normal_form(&(&f * &g)).unwrap();
    let staged = {
        let a = gb.normal_form(&f).unwrap();
        let b = gb.normal_form(&g).unwrap();
        gb.normal_form(&(&a * &b)).unwrap()
    };
    assert_eq!(direct, staged);
    assert_eq!(q.mul(&f, &g), direct);
}

#[test]
fn borel_quotient_dimensions() {
    for (fam, r, dim) in [
        (Family::A, 1, 2),
        (Family::A, 2, 6),
        (Family::A, 3, 24),
        (Family::B, 2, 8),
        (Family::C, 2, 8),
        (Family::D, 3, 24),
        (Family::G2, 2, 12),
    ] {
        let rs = RootSystem::build(fam, r).unwrap();
        let order = MonomialOrder::new(OrderKind::Lex, rs.ambient_dim());
        let gb = buchberger(&borel_ideal(&rs), &order).unwrap();
        assert_eq!(gb.quotient_dimension(), Some(dim), "{fam}{r}");
    }
}
