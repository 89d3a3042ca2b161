use std::collections::HashSet;

use flagchern::polyring::{Polynomial, Rational};
use flagchern::rootsys::*;

fn names(n: usize) -> Vec<String> {
    Polynomial::default_names(n)
}

#[test]
fn sizes() {
    for (f, r, n_pos, order) in [
        (Family::A, 1, 1, 2),
        (Family::A, 3, 6, 24),
        (Family::B, 2, 4, 8),
        (Family::C, 3, 9, 48),
        (Family::D, 3, 6, 24),
        (Family::D, 4, 12, 192),
        (Family::G2, 2, 6, 12),
    ] {
        let rs = RootSystem::build(f, r).unwrap();
        assert_eq!(rs.num_positive(), n_pos, "{f}{r}");
        assert_eq!(rs.weyl_order(), order);
        assert_eq!(WeylGroup::new(&rs).len() as u64, order, "{f}{r}");
    }
}

#[test]
fn rejects_unsupported() {
    assert!(RootSystem::build(Family::D, 2).is_err());
    assert!(RootSystem::build(Family::G2, 3).is_err());
    assert!(RootSystem::build(Family::A, 0).is_err());
    assert!(RootSystem::build(Family::A, 10).is_err());
}

#[test]
fn b2_positive_roots() {
    let rs = RootSystem::build(Family::B, 2).unwrap();
    let pos: Vec<Vec<i64>> = (0..4).map(|i| rs.root(i).coords.clone()).collect();
    assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![1, 1]]);
}

#[test]
fn g2_highest_root() {
    let rs = RootSystem::build(Family::G2, 2).unwrap();
    assert_eq!(rs.coefficients(5), &[2, 3]);
    let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    assert_eq!(rs.linear_form(0).to_text(&names), "x - y");
    assert_eq!(rs.linear_form(1).to_text(&names), "-1/3*x + 2/3*y - 1/3*z");
    // long and short root lengths in ratio 3
    assert_eq!(rs.inner(0, 0), 3 * rs.inner(1, 1));
}

#[test]
fn sign_is_inversion_parity() {
    for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 3), (Family::G2, 2)] {
        let rs = RootSystem::build(f, r).unwrap();
        for w in WeylGroup::new(&rs).elements() {
            assert_eq!(w.inversions(&rs) as u32, w.length(), "{f}{r}");
        }
    }
}

#[test]
fn group_closure_and_inverses() {
    for (f, r) in [(Family::A, 2), (Family::B, 2), (Family::D, 3), (Family::G2, 2)] {
        let rs = RootSystem::build(f, r).unwrap();
        let w = WeylGroup::new(&rs);
        // An element is determined by how it permutes the roots.
        let key = |e: &WeylElement| -> Vec<Option<usize>> { (0..rs.roots().len()).map(|i| e.apply_root(&rs, i)).collect() };
        let keys: HashSet<Vec<Option<usize>>> = w.elements().iter().map(key).collect();
        assert_eq!(keys.len(), w.len());
        let id = key(&w.elements()[0]);
        for a in w.elements() {
            assert!(w.elements().iter().any(|b| key(&a.compose(b)) == id));
            for b in w.elements() {
                assert!(keys.contains(&key(&a.compose(b))));
            }
            for i in 0..rs.roots().len() {
                assert!(a.apply_root(&rs, i).is_some());
            }
        }
    }
}

#[test]
fn weyl_denominator_is_alternating() {
    for (f, r) in [(Family::A, 3), (Family::B, 2), (Family::C, 2), (Family::D, 3), (Family::G2, 2)] {
        let rs = RootSystem::build(f, r).unwrap();
        let delta = rs.weyl_denominator();
        for w in WeylGroup::new(&rs).elements() {
            let img = act(w, &delta).unwrap();
            assert_eq!(img, delta.scale(&Rational::from_integer(w.sign().into())), "{f}{r}");
        }
    }
}

#[test]
fn action_examples() {
    let a1 = RootSystem::build(Family::A, 1).unwrap();
    let w = WeylGroup::new(&a1);
    let n = names(2);
    let f = Polynomial::parse("x1*x2", &n).unwrap();
    assert_eq!(act(&w.elements()[0], &f).unwrap(), f);
    let g = Polynomial::parse("x1 - x2", &n).unwrap();
    assert_eq!(act(&w.elements()[1], &g).unwrap(), -g);

    let b2 = RootSystem::build(Family::B, 2).unwrap();
    let flip = b2.reflection(1);
    let h = Polynomial::parse("x1 + x2", &names(2)).unwrap();
    assert_eq!(act(&flip, &h).unwrap(), Polynomial::parse("x1 - x2", &names(2)).unwrap());
}

#[test]
fn action_maps_root_forms_to_root_forms() {
    let rs = RootSystem::build(Family::G2, 2).unwrap();
    for w in WeylGroup::new(&rs).elements() {
        for i in 0..rs.roots().len() {
            let j = w.apply_root(&rs, i).unwrap();
            assert_eq!(act(w, &rs.linear_form(i)).unwrap(), rs.linear_form(j));
        }
    }
}

#[test]
fn canonical_order_is_deterministic() {
    let rs = RootSystem::build(Family::B, 3).unwrap();
    let a = WeylGroup::new(&rs);
    let b = WeylGroup::new(&rs);
    for (x, y) in a.elements().iter().zip(b.elements()) {
        for i in 0..rs.roots().len() {
            assert_eq!(x.apply_root(&rs, i), y.apply_root(&rs, i));
        }
    }
    for pair in a.elements().windows(2) {
        assert!(pair[0].length() <= pair[1].length());
    }
}
