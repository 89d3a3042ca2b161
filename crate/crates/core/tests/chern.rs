use flagchern::chern::*;
use flagchern::flagmodel::{FlagManifold, InvariantACS, ManifoldSpec};
use flagchern::polyring::{Polynomial, Rational};
use flagchern::Error;
use num_bigint::BigInt;
use num_traits::Zero;

fn flag(name: &str) -> FlagManifold {
    ManifoldSpec::parse(name).unwrap().build().unwrap()
}

#[test]
fn monomial_text() {
    let m: ChernMonomial = "c1^2c3".parse().unwrap();
    assert_eq!(m.exponents(), &[2, 0, 1]);
    assert_eq!(m.weight(), 5);
    assert_eq!(m.to_string(), "c1^2c3");
    assert_eq!("c_1^2 * c_3".parse::<ChernMonomial>().unwrap(), m);
    assert_eq!("c2c2".parse::<ChernMonomial>().unwrap().to_string(), "c2^2");
    assert!("c0".parse::<ChernMonomial>().is_err());
    assert!("x1".parse::<ChernMonomial>().is_err());
    assert!("".parse::<ChernMonomial>().is_err());
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=14).map(|n| ChernMonomial::partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]);
    let p4: Vec<String> = ChernMonomial::partitions(4).iter().map(|m| m.to_string()).collect();
    assert_eq!(p4, vec!["c4", "c1c3", "c2^2", "c1^2c2", "c1^4"]);
}

#[test]
fn bernoulli() {
    let b = bernoulli_numbers(8);
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    assert_eq!(b[1], r(-1, 2));
    assert_eq!(b[2], r(1, 6));
    assert_eq!(b[3], r(0, 1));
    assert_eq!(b[4], r(-1, 30));
    assert_eq!(b[8], r(-1, 30));
}

#[test]
fn low_todd() {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let t1 = todd_polynomial(1).unwrap();
    assert_eq!(t1.coefficient(&ChernMonomial::class(1)), r(1, 2));
    let t2 = todd_polynomial(2).unwrap();
    assert_eq!(t2.coefficient(&"c1^2".parse().unwrap()), r(1, 12));
    assert_eq!(t2.coefficient(&"c2".parse().unwrap()), r(1, 12));
    let t3 = todd_polynomial(3).unwrap();
    assert_eq!(t3.coefficients().len(), 1);
    assert_eq!(t3.coefficient(&"c1c2".parse().unwrap()), r(1, 24));
    let t4 = todd_polynomial(4).unwrap();
    assert_eq!(t4.common_denominator(), BigInt::from(720));
    assert_eq!(t4.to_text(), "(1/720)(-c4 + c1c3 + 3c2^2 + 4c1^2c2 - c1^4)");
}

#[test]
fn projective_line_and_plane() {
    let cp1 = flag("F(2)");
    let rs = cp1.root_system();
    assert_eq!(integrate(&cp1, &rs.linear_form(0)).unwrap(), Rational::from_integer(2.into()));
    let cp2 = flag("CP(2)");
    let c = chern_classes(&cp2, &InvariantACS::all_plus(cp2.num_summands())).unwrap();
    let c1sq = &c[1] * &c[1];
    assert_eq!(integrate(&cp2, &c1sq).unwrap(), Rational::from_integer(9.into()));
    assert_eq!(integrate_nf(&cp2, &c1sq, borel_basis(&cp2).unwrap()).unwrap(), Rational::from_integer(9.into()));
}

#[test]
fn rejects_bad_integrands() {
    let f = flag("CP(2)");
    let x = Polynomial::var(3, 1);
    assert!(matches!(integrate(&f, &x), Err(Error::DegreeMismatch { .. })));
    assert!(matches!(integrate(&f, &(&x * &x)), Err(Error::NotInvariant(_))));
    assert_eq!(integrate(&f, &Polynomial::zero(3)).unwrap(), Rational::zero());
    assert_eq!(integrate_nf(&f, &Polynomial::zero(3), borel_basis(&f).unwrap()).unwrap(), Rational::zero());
}

#[test]
fn sp2_and_so5_first_class() {
    let names = vec!["x".to_string(), "y".to_string()];
    let so5 = flag("SO(5)/T");
    let c = chern_classes(&so5, &InvariantACS::all_plus(so5.num_summands())).unwrap();
    assert_eq!(c[1].to_text(&names), "3*x + y");
    let sp2 = flag("Sp(2)/T");
    let c = chern_classes(&sp2, &InvariantACS::all_plus(sp2.num_summands())).unwrap();
    assert_eq!(c[1].to_text(&names), "4*x + 2*y");
}
