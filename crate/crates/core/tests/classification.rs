use std::collections::HashSet;

use flagchern::chern::{ChernEngine, ChernMonomial, Oracle};
use flagchern::flagmodel::{classify_acs, enumerate_acs, summand_symmetries, FlagManifold, InvariantACS, ManifoldSpec};
use num_bigint::BigInt;

fn flag(name: &str) -> FlagManifold {
    ManifoldSpec::parse(name).unwrap().build().unwrap()
}

fn numbers(f: &FlagManifold, a: &InvariantACS) -> Vec<BigInt> {
    let mut e = ChernEngine::new(f, a, Oracle::Weyl, 1).unwrap();
    ChernMonomial::partitions(f.complex_dim()).iter().map(|m| e.number(m).unwrap()).collect()
}

#[test]
fn classes_partition_the_structures() {
    for name in ["F(4)", "F(5;1,2,2)", "FD(3;1,2)", "FD(4;1,3)", "G2/T", "G2-long", "FC(3;1,1,1)"] {
        let f = flag(name);
        let all: HashSet<InvariantACS> = enumerate_acs(&f, true).unwrap().into_iter().collect();
        let mut seen = HashSet::new();
        for c in classify_acs(&f).unwrap() {
            assert!(c.members.contains(&c.representative), "{name}");
            for m in &c.members {
                assert!(all.contains(m), "{name} {m}");
                assert!(seen.insert(m.clone()), "{name}: {m} in two classes");
            }
        }
        assert_eq!(seen, all, "{name}");
    }
}

/// Chern numbers up to the sign picked up when the equivalence reverses
/// the fixed orientation.
fn unsigned(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| **x != BigInt::from(0)) {
        Some(x) if *x < BigInt::from(0) => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

#[test]
fn equivalent_structures_share_chern_numbers() {
    for name in ["F(4)", "F(5;1,2,2)", "FD(3;1,2)", "G2/T"] {
        let f = flag(name);
        for c in classify_acs(&f).unwrap() {
            let want = unsigned(numbers(&f, &c.representative));
            for m in &c.members {
                assert_eq!(unsigned(numbers(&f, m)), want, "{name} {m} vs {}", c.representative);
            }
        }
    }
}

#[test]
fn chern_numbers_do_not_separate_all_classes() {
    // On F(4) the classes of (+,+,+,-,+,-) and (-,+,+,-,+,+) have the same numbers.
    let f = flag("F(4)");
    let vectors: HashSet<Vec<BigInt>> =
        classify_acs(&f).unwrap().iter().map(|c| unsigned(numbers(&f, &c.representative))).collect();
    assert_eq!(vectors.len(), 3);
    let i1: InvariantACS = "+,+,+,-,+,-".parse().unwrap();
    let i3: InvariantACS = "-,+,+,-,+,+".parse().unwrap();
    assert_eq!(numbers(&f, &i1), numbers(&f, &i3));
}

#[test]
fn symmetries_form_a_group_action() {
    for name in ["F(4)", "F(6;2,2,2)", "FD(4;1,3)"] {
        let f = flag(name);
        let syms = summand_symmetries(&f);
        assert!(!syms.is_empty());
        for s in &syms {
            let targets: HashSet<usize> = s.iter().map(|&(j, _)| j).collect();
            assert_eq!(targets.len(), f.num_summands(), "{name}: not a permutation");
        }
    }
}

#[test]
fn f5_1_2_2_classes_match_the_listed_structures() {
    // {J1, J3}, {J2}, {J4} with J1 = (+,+,+), J2 = (-,+,+), J3 = (+,+,-), J4 = (+,-,+).
    let f = flag("F(5;1,2,2)");
    let classes = classify_acs(&f).unwrap();
    let find = |s: &str| {
        let a: InvariantACS = s.parse().unwrap();
        classes.iter().position(|c| c.members.contains(&a) || c.members.contains(&a.conjugate())).unwrap()
    };
    assert_eq!(find("+,+,+"), find("+,+,-"));
    let distinct: HashSet<usize> = ["+,+,+", "-,+,+", "+,-,+"].iter().map(|s| find(s)).collect();
    assert_eq!(distinct.len(), 3);
}
