use flagchern::flagmodel::*;
use flagchern::rootsys::Family;

fn flag(name: &str) -> FlagManifold {
    ManifoldSpec::parse(name).unwrap().build().unwrap()
}

fn dims(f: &FlagManifold) -> Vec<usize> {
    f.summands().iter().map(|s| s.dim_complex()).collect()
}

#[test]
fn name_grammar() {
    let s = ManifoldSpec::parse("F(7;1,2,4)").unwrap();
    assert_eq!((s.family, s.rank), (Family::A, 6));
    assert_eq!(s.theta, vec![1, 3, 4, 5]);
    assert_eq!(ManifoldSpec::parse("F(4)").unwrap().theta, Vec::<usize>::new());
    assert_eq!(ManifoldSpec::parse("FD(3;1,2)").unwrap().theta, vec![1]);
    assert_eq!(ManifoldSpec::parse("FD(4;4)").unwrap().theta, vec![0, 1, 2]);
    assert_eq!(ManifoldSpec::parse("CP(3)").unwrap().theta, vec![1, 2]);
    assert!(ManifoldSpec::parse("F(7;1,2)").is_err());
    assert!(ManifoldSpec::parse("E(8)").is_err());
    assert!(ManifoldSpec::parse("F(1)").is_err());
}

#[test]
fn decompositions() {
    let f = flag("F(7;1,2,4)");
    assert_eq!(f.complex_dim(), 14);
    assert_eq!(dims(&f), vec![2, 4, 8]);
    assert_eq!(dims(&flag("FD(3;1,2)")), vec![2, 1, 2]);
    assert_eq!(dims(&flag("F(4)")), vec![1; 6]);
    assert_eq!(dims(&flag("G2-short")), vec![4, 1]);
    assert_eq!(dims(&flag("G2-long")), vec![2, 1, 2]);
    assert_eq!(flag("G2-long").complex_dim(), 5);
}

#[test]
fn so6_t_roots() {
    let f = flag("FD(3;1,2)");
    let t: Vec<Vec<String>> =
        f.summands().iter().map(|s| s.t_root.iter().map(|x| x.to_string()).collect()).collect();
    assert_eq!(t, vec![vec!["1", "1/2", "1/2"], vec!["0", "1", "1"], vec!["1", "-1/2", "-1/2"]]);
}

#[test]
fn euler_characteristics() {
    for (name, chi) in [
        ("F(6;1,2,3)", 60),
        ("F(7;1,2,4)", 105),
        ("F(8;1,2,5)", 168),
        ("F(8;1,3,4)", 280),
        ("F(4)", 24),
        ("G2/T", 12),
        ("G2-long", 6),
        ("G2-short", 6),
        ("FB(2;1,1)", 8),
        ("FD(4;1,3)", 32),
        ("FC(3;1,1,1)", 48),
        ("FD(4;4)", 8),
    ] {
        assert_eq!(flag(name).euler_characteristic(), chi, "{name}");
    }
}

#[test]
fn integrability_three_summands() {
    let f = flag("F(7;1,2,4)");
    let verdicts: Vec<bool> = ["+,+,+", "-,+,+", "+,+,-", "-,+,-"]
        .iter()
        .map(|s| is_integrable(&f, &s.parse().unwrap()).unwrap())
        .collect();
    assert_eq!(verdicts, vec![true, true, true, false]);
}

#[test]
fn conjugation_covariance() {
    for name in ["F(4)", "G2-long", "FD(4;1,3)"] {
        let f = flag(name);
        for acs in enumerate_acs(&f, false).unwrap() {
            assert_eq!(is_integrable(&f, &acs).unwrap(), is_integrable(&f, &acs.conjugate()).unwrap());
        }
    }
}

#[test]
fn closedness_matches_order_existence() {
    for name in ["F(3)", "F(4)", "FB(2;1,1)", "FC(3;1,1,1)", "FD(3;1,2)", "G2/T", "G2-long", "G2-short", "FB(3;1,2)"] {
        let f = flag(name);
        for acs in enumerate_acs(&f, false).unwrap() {
            assert_eq!(
                is_integrable(&f, &acs).unwrap(),
                admits_positive_order(&f, &acs).unwrap(),
                "{name} {acs}"
            );
        }
    }
}

#[test]
fn class_counts() {
    let count = |n: &str| classify_acs(&flag(n)).unwrap().len();
    assert_eq!(count("F(4)"), 4);
    assert_eq!(count("F(5)"), 12);
    assert_eq!(count("F(5;1,2,2)"), 3);
    assert_eq!(count("F(3)"), 2);
    assert_eq!(count("F(6;2,2,2)"), 2);
}

#[test]
fn classes_respect_integrability() {
    for name in ["F(4)", "F(5;1,2,2)", "FD(4;1,3)", "G2-long"] {
        let f = flag(name);
        for c in classify_acs(&f).unwrap() {
            for m in &c.members {
                assert_eq!(is_integrable(&f, m).unwrap(), c.integrable);
            }
        }
    }
}

#[test]
fn acs_parsing() {
    let a: InvariantACS = "(+,-,+)".parse().unwrap();
    assert_eq!(a.signs(), &[1, -1, 1]);
    assert_eq!(a.to_string(), "(+,-,+)");
    assert_eq!(a.mask(), 2);
    assert_eq!(InvariantACS::from_mask(3, 2), a);
    assert!("+,x".parse::<InvariantACS>().is_err());
}
