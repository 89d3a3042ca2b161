use flagchern::chern::{todd_genus, todd_polynomial, ChernMonomial, Oracle};
use flagchern::flagmodel::{enumerate_acs, is_integrable, InvariantACS, ManifoldSpec};
use flagchern::polyring::Rational;
use flagchern::suite::{parse_chern_combination, todd_identity_matches, PRINTED_TODD};
use num_bigint::BigInt;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn printed_identities_regenerate() {
    for (den, text) in PRINTED_TODD {
        let diff = todd_identity_matches(den, text).unwrap();
        assert!(diff.is_empty(), "1/{den}: {diff:?}");
    }
}

#[test]
fn altered_identity_is_caught() {
    let diff = todd_identity_matches(1440, "-c1c4+c1^2c3+3c1c2^2-2c1^3c2").unwrap();
    assert_eq!(diff.len(), 1);
    let diff = todd_identity_matches(720, "-c1c4+c1^2c3+3c1c2^2-c1^3c2").unwrap();
    assert!(!diff.is_empty());
}

#[test]
fn combination_parser_merges_terms() {
    let p = parse_chern_combination("2c1c2 - c2c1 + 3 c3 - 3c3").unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[&"c1c2".parse::<ChernMonomial>().unwrap()], BigInt::from(1));
    assert!(parse_chern_combination("2x1").is_err());
}

#[test]
fn odd_degrees_are_divisible_by_c1() {
    for n in [3, 5, 7, 9, 11] {
        let td = todd_polynomial(n).unwrap();
        assert!(td.coefficients().iter().all(|(m, _)| m.exponent(1) > 0), "td_{n}");
    }
}

#[test]
fn projective_spaces_have_todd_genus_one() {
    for n in 1..=6 {
        let f = ManifoldSpec::parse(&format!("CP({n})")).unwrap().build().unwrap();
        for oracle in [Oracle::Weyl, Oracle::Groebner] {
            let td = todd_genus(&f, &InvariantACS::all_plus(1), oracle).unwrap();
            assert_eq!(td, q(1, 1), "CP^{n} {oracle}");
        }
    }
}

#[test]
fn integrable_structures_have_todd_genus_one() {
    for name in ["F(3)", "F(4)", "FD(3;1,2)", "G2-long", "G2/T", "SO(5)/T"] {
        let f = ManifoldSpec::parse(name).unwrap().build().unwrap();
        for a in enumerate_acs(&f, false).unwrap() {
            if is_integrable(&f, &a).unwrap() {
                assert_eq!(todd_genus(&f, &a, Oracle::Both).unwrap(), q(1, 1), "{name} {a}");
            }
        }
    }
}

#[test]
fn non_integrable_todd_genus_may_differ() {
    // F(5;1,2,2) under (+,-,+): the Todd sum is still an integer but need not be 1.
    let f = ManifoldSpec::parse("F(5;1,2,2)").unwrap().build().unwrap();
    let a: InvariantACS = "+,-,+".parse().unwrap();
    assert!(!is_integrable(&f, &a).unwrap());
    let td = todd_genus(&f, &a, Oracle::Both).unwrap();
    assert!(td.is_integer());
}
